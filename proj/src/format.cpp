#include "zk/format.hpp"

#include <algorithm>
#include <sstream>

namespace zk {

std::string format_rat(const Rat& r) { return r.get_str(); }

namespace {

long total_degree(const MonoKey& k) {
    long d = k.x;
    for (int e : k.y) d += e;
    return d;
}

struct RenderedTerm {
    Rat coef;
    std::string vars;  // empty for a constant
};

void append_terms(std::ostringstream& os, const std::vector<RenderedTerm>& terms) {
    if (terms.empty()) {
        os << "0";
        return;
    }
    bool first = true;
    for (const auto& t : terms) {
        Rat mag = t.coef < 0 ? Rat(-t.coef) : t.coef;
        if (first) {
            if (t.coef < 0) os << "-";
            first = false;
        } else {
            os << (t.coef < 0 ? " - " : " + ");
        }
        if (t.vars.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << t.vars;
        else
            os << mag.get_str() << "*" << t.vars;
    }
}

std::string power(const std::string& var, int e) {
    if (e == 1) return var;
    return var + "^" + std::to_string(e);
}

std::string laurent_vars(const MonoKey& k) {
    std::string out;
    auto push = [&out](const std::string& s) {
        if (!out.empty()) out += "*";
        out += s;
    };
    if (k.x != 0) push(power("X", k.x));
    for (std::size_t j = 0; j < k.y.size(); ++j)
        if (k.y[j] != 0) push(power("Y" + std::to_string(j + 1), k.y[j]));
    return out;
}

std::vector<RenderedTerm> laurent_terms(const LaurentPoly& p) {
    std::vector<std::pair<MonoKey, Rat>> ts(p.terms().begin(), p.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        long da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da < db;
        return a.first < b.first;
    });
    std::vector<RenderedTerm> out;
    for (const auto& [k, c] : ts) out.push_back({c, laurent_vars(k)});
    return out;
}

bool single_term(const LaurentPoly& p) { return p.terms().size() <= 1; }

std::string maybe_paren(const LaurentPoly& p, const std::string& s) {
    return single_term(p) ? s : "(" + s + ")";
}

bool is_one(const LaurentPoly& p) {
    if (p.terms().size() != 1) return false;
    const auto& [k, c] = *p.terms().begin();
    return c == 1 && total_degree(k) == 0 && laurent_vars(k).empty();
}

}  // namespace

std::string format_laurent(const LaurentPoly& p) {
    std::ostringstream os;
    append_terms(os, laurent_terms(p));
    return os.str();
}

std::string format_yrational(const YRational& w) {
    if (w.num.is_zero()) return "0";
    if (w.den.is_zero()) return maybe_paren(w.num, format_laurent(w.num)) + "/0";
    if (is_one(w.den)) return format_laurent(w.num);
    // clear negative exponents jointly and scale the denominator's lowest
    // term to 1; pure formatting, the value is unchanged
    const int m = w.num.m();
    std::vector<int> shift(static_cast<std::size_t>(m), 0);
    auto note_min = [&](const LaurentPoly& p) {
        for (const auto& [k, c] : p.terms())
            for (int j = 0; j < m; ++j)
                shift[static_cast<std::size_t>(j)] =
                    std::min(shift[static_cast<std::size_t>(j)], k.y[static_cast<std::size_t>(j)]);
    };
    note_min(w.num);
    note_min(w.den);
    std::vector<int> up(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) up[static_cast<std::size_t>(j)] = -shift[static_cast<std::size_t>(j)];
    LaurentPoly mono = LaurentPoly::monomial(m, Rat(1), 0, up);
    LaurentPoly num = w.num * mono, den = w.den * mono;
    Rat scale = laurent_terms(den).front().coef;
    if (scale != 0 && scale != 1) {
        LaurentPoly inv = LaurentPoly::constant(m, Rat(1) / scale);
        num = num * inv;
        den = den * inv;
    }
    if (is_one(den)) return format_laurent(num);
    return maybe_paren(num, format_laurent(num)) + "/" + maybe_paren(den, format_laurent(den));
}

std::string format_cyclo(const CycloRational& w) {
    std::string num = maybe_paren(w.num(), format_laurent(w.num()));
    if (w.den().empty()) return format_laurent(w.num());
    std::string den;
    for (const auto& [fac, mult] : w.den()) {
        if (!den.empty()) den += "*";
        MonoKey k{fac.a, fac.b};
        std::string mono = laurent_vars(k);
        den += "(1 - " + (mono.empty() ? "1" : mono) + ")";
        if (mult > 1) den += "^" + std::to_string(mult);
    }
    return num + " / (" + den + ")";
}

namespace {

std::string polys_vars(const std::vector<unsigned>& exps) {
    std::string out;
    for (std::size_t j = 0; j < exps.size(); ++j) {
        if (exps[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += power("s" + std::to_string(j + 1), static_cast<int>(exps[j]));
    }
    return out;
}

}  // namespace

std::string format_polys(const PolyS& p) {
    std::vector<std::pair<std::vector<unsigned>, Rat>> ts(p.terms().begin(), p.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        unsigned da = 0, db = 0;
        for (unsigned e : a.first) da += e;
        for (unsigned e : b.first) db += e;
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::vector<RenderedTerm> terms;
    for (const auto& [k, c] : ts) terms.push_back({c, polys_vars(k)});
    std::ostringstream os;
    append_terms(os, terms);
    return os.str();
}

std::string format_rats(const RatS& r) {
    if (r.num.is_zero()) return "0";
    bool den_is_one = r.den == PolyS::constant(r.den.m(), Rat(1));
    std::string num = format_polys(r.num);
    if (den_is_one) return num;
    if (r.num.terms().size() > 1) num = "(" + num + ")";
    return num + "/(" + format_polys(r.den) + ")";
}

std::string format_spectral(const std::vector<SpectralTerm>& spec) {
    std::string out = "[";
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (i) out += ",";
        out += "(" + spec[i].m.get_str() + "," + std::to_string(spec[i].j) + ")";
    }
    return out + "]";
}

std::string format_intpoly(const IntPoly& p) {
    std::vector<RenderedTerm> terms;
    std::vector<IntPoly::Term> ts = p.terms();
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        unsigned da = 0, db = 0;
        for (unsigned e : a.exps) da += e;
        for (unsigned e : b.exps) db += e;
        if (da != db) return da < db;
        return a.exps < b.exps;
    });
    for (const auto& t : ts) {
        std::string vars;
        for (std::size_t j = 0; j < t.exps.size(); ++j) {
            if (t.exps[j] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += power("x" + std::to_string(j + 1), static_cast<int>(t.exps[j]));
        }
        terms.push_back({Rat(t.coef), vars});
    }
    std::ostringstream os;
    append_terms(os, terms);
    return os.str();
}

namespace {

bool is_affine_piece(const Piece& p) {
    return p.sign > 0 && p.sys.equations.empty() && p.sys.inequations.empty();
}

bool is_torus_piece(const Piece& p) {
    if (p.sign < 0 || !p.sys.equations.empty()) return false;
    if (static_cast<int>(p.sys.inequations.size()) != p.sys.nvars) return false;
    for (int i = 0; i < p.sys.nvars; ++i)
        if (!(p.sys.inequations[static_cast<std::size_t>(i)] ==
              IntPoly::variable(p.sys.nvars, i)))
        return false;
    return true;
}

std::string format_piece(const AffineSystem& sys) {
    if (sys.nvars == 0) return "point";
    std::ostringstream os;
    os << "vars ";
    for (int i = 0; i < sys.nvars; ++i) {
        if (i) os << ",";
        os << "x" << (i + 1);
    }
    for (const auto& e : sys.equations) os << " ; eq " << format_intpoly(e);
    for (const auto& e : sys.inequations) os << " ; ineq " << format_intpoly(e);
    return os.str();
}

}  // namespace

std::string format_constructible(const ConstructibleSet& set) {
    if (set.pieces.empty()) return "difference(point, point)";
    auto render_one = [](const Piece& p) -> std::string {
        if (is_affine_piece(p) && p.sys.nvars == 0) return "point";
        if (is_affine_piece(p)) return "affine(" + std::to_string(p.sys.nvars) + ")";
        if (is_torus_piece(p)) return "torus(" + std::to_string(p.sys.nvars) + ")";
        return format_piece(p.sys);
    };
    std::vector<std::string> pos, neg;
    for (const auto& p : set.pieces) {
        std::string s = render_one(p);
        // inline systems cannot appear inside builtin combinators in the
        // file grammar; fall back to the inline form only for single pieces
        (p.sign > 0 ? pos : neg).push_back(s);
    }
    if (set.pieces.size() == 1 && set.pieces[0].sign > 0) return pos[0];
    auto fold = [](const std::vector<std::string>& v) -> std::string {
        std::string acc = v[0];
        for (std::size_t i = 1; i < v.size(); ++i) acc = "union(" + acc + ", " + v[i] + ")";
        return acc;
    };
    if (neg.empty()) return fold(pos);
    if (pos.empty()) return "difference(difference(point, point), " + fold(neg) + ")";
    return "difference(" + fold(pos) + ", " + fold(neg) + ")";
}

std::string format_formula_file(const LocalMapFormula& formula) {
    std::ostringstream os;
    os << "m " << formula.m() << "\n";
    if (!formula.excluded_primes().empty()) {
        os << "exclude";
        for (auto p : formula.excluded_primes()) os << " " << p;
        os << "\n";
    }
    for (const auto& term : formula.terms()) {
        os << "term\n";
        os << "  variety " << format_constructible(term.set) << "\n";
        if (term.set.user_chi) os << "  chi " << *term.set.user_chi << "\n";
        os << "  W " << format_cyclo(term.w) << "\n";
    }
    return os.str();
}

}  // namespace zk
