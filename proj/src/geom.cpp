#include "zk/geom.hpp"

#include <algorithm>
#include <map>

#include "zk/error.hpp"

namespace zk {

IntPoly IntPoly::constant(int nvars, Int c) {
    IntPoly p(nvars);
    p.add_term(std::move(c), std::vector<unsigned>(nvars, 0));
    return p;
}

IntPoly IntPoly::variable(int nvars, int i) {
    IntPoly p(nvars);
    std::vector<unsigned> e(nvars, 0);
    e[i] = 1;
    p.add_term(Int(1), std::move(e));
    return p;
}

void IntPoly::add_term(Int c, std::vector<unsigned> exps) {
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                               [](const Term& t, const std::vector<unsigned>& e) { return t.exps < e; });
    if (it != terms_.end() && it->exps == exps) {
        it->coef += c;
        if (it->coef == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term{std::move(c), std::move(exps)});
    }
}

std::optional<Int> IntPoly::constant_value() const {
    if (terms_.empty()) return Int(0);
    if (terms_.size() == 1 &&
        std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(), [](unsigned e) { return e == 0; }))
        return terms_[0].coef;
    return std::nullopt;
}

Int IntPoly::leading_coefficient() const {
    if (terms_.empty()) return Int(0);
    return terms_.back().coef;
}

int IntPoly::max_var() const {
    int mv = -1;
    for (const auto& t : terms_)
        for (int i = 0; i < nvars_; ++i)
            if (t.exps[i] > 0) mv = std::max(mv, i);
    return mv;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& t : o.terms_) r.add_term(t.coef, t.exps);
    return r;
}

IntPoly IntPoly::operator-() const {
    IntPoly r(nvars_);
    for (const auto& t : terms_) r.add_term(-t.coef, t.exps);
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    IntPoly r(nvars_);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            std::vector<unsigned> e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = a.exps[i] + b.exps[i];
            r.add_term(a.coef * b.coef, std::move(e));
        }
    return r;
}

IntPoly IntPoly::pow(unsigned e) const {
    IntPoly r = IntPoly::constant(nvars_, Int(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

IntPoly IntPoly::embed(int new_nvars, int offset) const {
    IntPoly r(new_nvars);
    for (const auto& t : terms_) {
        std::vector<unsigned> e(new_nvars, 0);
        for (int i = 0; i < nvars_; ++i) e[i + offset] = t.exps[i];
        r.add_term(t.coef, std::move(e));
    }
    return r;
}

namespace {

// Drop trivial constraints; nullopt when the piece is empty.
std::optional<AffineSystem> normalize_system(AffineSystem sys) {
    AffineSystem out;
    out.nvars = sys.nvars;
    for (auto& eq : sys.equations) {
        auto c = eq.constant_value();
        if (c) {
            if (*c == 0) continue;  // 0 = 0, drop
            return std::nullopt;    // nonzero constant = 0: empty
        }
        out.equations.push_back(std::move(eq));
    }
    for (auto& iq : sys.inequations) {
        auto c = iq.constant_value();
        if (c) {
            if (*c == 0) return std::nullopt;  // 0 != 0: empty
            continue;                          // nonzero constant != 0, drop
        }
        out.inequations.push_back(std::move(iq));
    }
    return out;
}

}  // namespace

ConstructibleSet cs_point() {
    ConstructibleSet s;
    s.pieces.push_back(Piece{+1, AffineSystem{0, {}, {}}});
    return s;
}

ConstructibleSet cs_affine(int n) {
    ConstructibleSet s;
    s.pieces.push_back(Piece{+1, AffineSystem{n, {}, {}}});
    return s;
}

ConstructibleSet cs_torus(int n) {
    AffineSystem sys;
    sys.nvars = n;
    for (int i = 0; i < n; ++i) sys.inequations.push_back(IntPoly::variable(n, i));
    ConstructibleSet s;
    s.pieces.push_back(Piece{+1, std::move(sys)});
    return s;
}

ConstructibleSet cs_from_system(AffineSystem sys, int sign) {
    ConstructibleSet s;
    if (auto n = normalize_system(std::move(sys))) s.pieces.push_back(Piece{sign, std::move(*n)});
    return s;
}

ConstructibleSet cs_product(const ConstructibleSet& a, const ConstructibleSet& b) {
    ConstructibleSet s;
    for (const auto& pa : a.pieces)
        for (const auto& pb : b.pieces) {
            AffineSystem sys;
            sys.nvars = pa.sys.nvars + pb.sys.nvars;
            for (const auto& e : pa.sys.equations) sys.equations.push_back(e.embed(sys.nvars, 0));
            for (const auto& e : pb.sys.equations)
                sys.equations.push_back(e.embed(sys.nvars, pa.sys.nvars));
            for (const auto& e : pa.sys.inequations) sys.inequations.push_back(e.embed(sys.nvars, 0));
            for (const auto& e : pb.sys.inequations)
                sys.inequations.push_back(e.embed(sys.nvars, pa.sys.nvars));
            s.pieces.push_back(Piece{pa.sign * pb.sign, std::move(sys)});
        }
    if (a.user_chi && b.user_chi) s.user_chi = *a.user_chi * *b.user_chi;
    return s;
}

ConstructibleSet cs_disjoint_union(const ConstructibleSet& a, const ConstructibleSet& b) {
    ConstructibleSet s = a;
    s.pieces.insert(s.pieces.end(), b.pieces.begin(), b.pieces.end());
    if (a.user_chi && b.user_chi)
        s.user_chi = *a.user_chi + *b.user_chi;
    else
        s.user_chi.reset();
    return s;
}

ConstructibleSet cs_difference(const ConstructibleSet& a, const ConstructibleSet& b) {
    ConstructibleSet s = a;
    for (const auto& pb : b.pieces) s.pieces.push_back(Piece{-pb.sign, pb.sys});
    if (a.user_chi && b.user_chi)
        s.user_chi = *a.user_chi - *b.user_chi;
    else
        s.user_chi.reset();
    return s;
}

namespace {

// Horner-per-variable evaluator for one polynomial over a fixed field.
// Coefficients are reduced mod p at build time.
class CompiledPoly {
  public:
    CompiledPoly(const IntPoly& poly, const FqField& field) : field_(field) {
        std::vector<const IntPoly::Term*> ts;
        for (const auto& t : poly.terms()) ts.push_back(&t);
        root_ = build(ts, 0, poly.nvars());
        max_var_ = poly.max_var();
    }

    int max_var() const { return max_var_; }

    FqElem eval(const FqElem* point) const { return eval_node(root_, point); }

  private:
    struct Node {
        int var = -1;              // -1: leaf
        FqElem leaf{};             // valid when var == -1
        std::vector<Node> coeffs;  // by power of var
    };

    const FqField& field_;
    Node root_;
    int max_var_ = -1;

    Node build(const std::vector<const IntPoly::Term*>& ts, int var, int nvars) {
        Node n;
        if (ts.empty()) {
            n.leaf = field_.zero();
            return n;
        }
        int v = var;
        while (v < nvars) {
            bool used = false;
            for (auto* t : ts)
                if (t->exps[v] > 0) {
                    used = true;
                    break;
                }
            if (used) break;
            ++v;
        }
        if (v == nvars) {
            unsigned long r = mpz_fdiv_ui(ts[0]->coef.get_mpz_t(), field_.p());
            n.leaf = field_.elem_at(r);
            return n;
        }
        n.var = v;
        unsigned maxd = 0;
        for (auto* t : ts) maxd = std::max(maxd, t->exps[v]);
        std::vector<std::vector<const IntPoly::Term*>> buckets(maxd + 1);
        for (auto* t : ts) buckets[t->exps[v]].push_back(t);
        n.coeffs.reserve(maxd + 1);
        for (auto& b : buckets) n.coeffs.push_back(build(b, v + 1, nvars));
        return n;
    }

    FqElem eval_node(const Node& n, const FqElem* point) const {
        if (n.var < 0) return n.leaf;
        FqElem x = point[n.var];
        FqElem acc = eval_node(n.coeffs.back(), point);
        for (std::size_t i = n.coeffs.size() - 1; i-- > 0;)
            acc = field_.add(field_.mul(acc, x), eval_node(n.coeffs[i], point));
        return acc;
    }
};

// Variables referenced by a polynomial.
std::vector<int> referenced_vars(const IntPoly& poly) {
    std::vector<bool> used(static_cast<std::size_t>(poly.nvars()), false);
    for (const auto& t : poly.terms())
        for (int i = 0; i < poly.nvars(); ++i)
            if (t.exps[static_cast<std::size_t>(i)] > 0) used[static_cast<std::size_t>(i)] = true;
    std::vector<int> out;
    for (int i = 0; i < poly.nvars(); ++i)
        if (used[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

// A system is separable when every constraint touches at most one variable;
// the count then factors over variables (cost n*q instead of q^n).
bool is_separable(const AffineSystem& sys) {
    for (const auto& e : sys.equations)
        if (referenced_vars(e).size() > 1) return false;
    for (const auto& e : sys.inequations)
        if (referenced_vars(e).size() > 1) return false;
    return true;
}

// Enumerates F_q^n and counts points satisfying all constraints. The prefix
// variables run through an odometer with per-level pruning; constraints that
// involve the innermost variable are specialized at each prefix into dense
// univariate coefficient arrays, so the hot loop is a short Horner chain.
std::uint64_t count_piece(const AffineSystem& sys, const FqField& field) {
    const int n = sys.nvars;
    if (n == 0) return 1;
    if (sys.equations.empty() && sys.inequations.empty()) {
        std::uint64_t total = 1;
        for (int i = 0; i < n; ++i) total *= field.size();
        return total;
    }
    field.ensure_mul_table();
    if (is_separable(sys)) {
        std::uint64_t total = 1;
        for (int v = 0; v < n; ++v) {
            std::vector<std::pair<CompiledPoly, bool>> constrs;
            for (const auto& e : sys.equations) {
                auto refs = referenced_vars(e);
                if (refs.empty() || refs[0] == v) constrs.emplace_back(CompiledPoly(e, field), true);
            }
            for (const auto& e : sys.inequations) {
                auto refs = referenced_vars(e);
                if (refs.empty() || refs[0] == v) constrs.emplace_back(CompiledPoly(e, field), false);
            }
            std::uint64_t cv = 0;
            std::vector<FqElem> point(static_cast<std::size_t>(n));
            for (std::uint64_t k = 0; k < field.size(); ++k) {
                point[static_cast<std::size_t>(v)] = field.elem_at(k);
                bool ok = true;
                for (const auto& [poly, vanish] : constrs)
                    if (vanish != field.is_zero(poly.eval(point.data()))) {
                        ok = false;
                        break;
                    }
                if (ok) ++cv;
            }
            total *= cv;
            if (total == 0) return 0;
        }
        return total;
    }

    const int last = n - 1;

    // constraints fully determined by the prefix variables, checked during
    // the prefix odometer at the level of their deepest variable
    struct PrefixConstr {
        CompiledPoly poly;
        bool must_vanish;
        int level;
    };
    // constraints involving the innermost variable, kept as coefficient
    // polynomials by its power
    struct InnerConstr {
        std::vector<CompiledPoly> coeff;  // by power of the last variable
        bool must_vanish;
        std::vector<FqElem> dense;  // scratch: coefficients at the prefix
    };

    std::vector<PrefixConstr> prefix_constrs;
    std::vector<InnerConstr> inner_constrs;
    auto classify = [&](const IntPoly& poly, bool vanish) {
        unsigned maxdeg = 0;
        for (const auto& t : poly.terms())
            maxdeg = std::max(maxdeg, t.exps[static_cast<std::size_t>(last)]);
        if (maxdeg == 0) {
            prefix_constrs.push_back({CompiledPoly(poly, field), vanish,
                                      std::max(poly.max_var(), 0)});
            return;
        }
        InnerConstr c;
        c.must_vanish = vanish;
        for (unsigned j = 0; j <= maxdeg; ++j) {
            IntPoly cj(n);
            for (const auto& t : poly.terms())
                if (t.exps[static_cast<std::size_t>(last)] == j) {
                    std::vector<unsigned> e = t.exps;
                    e[static_cast<std::size_t>(last)] = 0;
                    cj.add_term(t.coef, std::move(e));
                }
            c.coeff.emplace_back(cj, field);
        }
        c.dense.resize(c.coeff.size());
        inner_constrs.push_back(std::move(c));
    };
    for (const auto& e : sys.equations) classify(e, true);
    for (const auto& e : sys.inequations) classify(e, false);

    std::vector<std::vector<const PrefixConstr*>> at_level(std::max(last, 1));
    for (const auto& c : prefix_constrs)
        at_level[static_cast<std::size_t>(std::min(c.level, last - 1))].push_back(&c);

    const std::uint64_t q = field.size();
    std::vector<FqElem> point(static_cast<std::size_t>(n));
    std::uint64_t total = 0;

    auto scan_inner = [&]() {
        std::uint64_t hits = 0;
        for (auto& c : inner_constrs)
            for (std::size_t j = 0; j < c.coeff.size(); ++j)
                c.dense[j] = c.coeff[j].eval(point.data());
        for (std::uint64_t k = 0; k < q; ++k) {
            FqElem y = field.elem_at(k);
            bool ok = true;
            for (const auto& c : inner_constrs) {
                FqElem acc = c.dense.back();
                for (std::size_t j = c.dense.size() - 1; j-- > 0;)
                    acc = field.add(field.mul(acc, y), c.dense[j]);
                if (c.must_vanish != field.is_zero(acc)) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++hits;
        }
        return hits;
    };

    if (last == 0) return scan_inner();

    std::vector<std::uint64_t> idx(static_cast<std::size_t>(last), 0);
    int level = 0;
    while (level >= 0) {
        if (idx[static_cast<std::size_t>(level)] == q) {
            idx[static_cast<std::size_t>(level)] = 0;
            --level;
            if (level >= 0) ++idx[static_cast<std::size_t>(level)];
            continue;
        }
        point[static_cast<std::size_t>(level)] = field.elem_at(idx[static_cast<std::size_t>(level)]);
        bool ok = true;
        for (const auto* c : at_level[static_cast<std::size_t>(level)]) {
            FqElem v = c->poly.eval(point.data());
            if (c->must_vanish != field.is_zero(v)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++idx[static_cast<std::size_t>(level)];
            continue;
        }
        if (level == last - 1) {
            total += scan_inner();
            ++idx[static_cast<std::size_t>(level)];
        } else {
            ++level;
        }
    }
    return total;
}

}  // namespace

namespace {

// Enumeration cost of one piece over F_q, matching count_piece's strategy.
Int piece_cost(const AffineSystem& sys, std::uint64_t q) {
    if (sys.nvars == 0) return 1;
    if (sys.equations.empty() && sys.inequations.empty()) return 1;
    if (is_separable(sys)) return Int(sys.nvars) * Int(static_cast<unsigned long>(q));
    return int_pow(Int(static_cast<unsigned long>(q)), static_cast<unsigned long>(sys.nvars));
}

}  // namespace

Int count_points(const ConstructibleSet& set, std::uint64_t p, unsigned f, const CountOptions& opts) {
    std::uint64_t q = pow_checked(p, f, FqField::kSizeCap);
    if (q == 0) throw Error(ErrKind::BudgetExceeded, "field size exceeds cap");
    Int cost = 0;
    for (const auto& piece : set.pieces) cost += piece_cost(piece.sys, q);
    if (cost > Int(static_cast<unsigned long>(opts.budget)))
        throw Error(ErrKind::BudgetExceeded, "enumeration cost " + cost.get_str() + " exceeds budget " +
                                                 std::to_string(opts.budget));

    const FqField& field = make_field(p, f);
    Int total = 0;
    for (const auto& piece : set.pieces) {
        std::uint64_t c = count_piece(piece.sys, field);
        if (piece.sign > 0)
            total += Int(static_cast<unsigned long>(c));
        else
            total -= Int(static_cast<unsigned long>(c));
    }
    if (opts.strict && total < 0)
        throw Error(ErrKind::NegativeCount, "signed count " + total.get_str() + " is negative");
    return total;
}

unsigned feasible_depth(const ConstructibleSet& set, std::uint64_t p, unsigned max_f,
                        std::uint64_t budget) {
    unsigned depth = 0;
    for (unsigned f = 1; f <= max_f; ++f) {
        std::uint64_t q = pow_checked(p, f, FqField::kSizeCap);
        if (q == 0) break;
        Int cost = 0;
        for (const auto& piece : set.pieces) cost += piece_cost(piece.sys, q);
        if (cost > Int(static_cast<unsigned long>(budget))) break;
        depth = f;
    }
    return depth;
}

std::vector<std::uint64_t> awkward_primes(const ConstructibleSet& set) {
    std::vector<std::uint64_t> out;
    auto note = [&out](const Int& c) {
        Int a = abs(c);
        for (std::uint64_t d = 2; Int(static_cast<unsigned long>(d)) * Int(static_cast<unsigned long>(d)) <= a;
             ++d)
            while (a % Int(static_cast<unsigned long>(d)) == 0) {
                out.push_back(d);
                a /= Int(static_cast<unsigned long>(d));
            }
        if (a > 1 && a.fits_ulong_p()) out.push_back(a.get_ui());
    };
    for (const auto& piece : set.pieces) {
        for (const auto& e : piece.sys.equations) note(e.leading_coefficient());
        for (const auto& e : piece.sys.inequations) note(e.leading_coefficient());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace zk
