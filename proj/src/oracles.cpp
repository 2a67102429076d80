#include "zk/oracles.hpp"

#include <algorithm>
#include <cstdlib>

#include "zk/error.hpp"

namespace zk {

namespace {

// Basis rows of a finite-index sublattice in upper-triangular Hermite form:
// row i has pivot p^{a_i} at column i, entries above a pivot reduced modulo
// the pivot of their column.
using Basis = std::vector<std::vector<long long>>;

// Is w an integral combination of the basis rows? Forward substitution down
// the columns with divisibility checks; exact in 64-bit at desk scale.
bool member(const Basis& basis, std::vector<long long> w) {
    const int d = static_cast<int>(basis.size());
    for (int i = 0; i < d; ++i) {
        long long piv = basis[i][i];
        if (w[i] % piv != 0) return false;
        long long x = w[i] / piv;
        if (x != 0)
            for (int j = i; j < d; ++j) w[j] -= x * basis[i][j];
    }
    return true;
}

std::vector<long long> product(const AlgebraPresentation& alg, const std::vector<long long>& u,
                               const std::vector<long long>& v) {
    const int d = alg.d;
    std::vector<long long> out(d, 0);
    for (int i = 0; i < d; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (v[j] == 0) continue;
            long long uv = u[i] * v[j];
            for (int k = 0; k < d; ++k) out[k] += uv * alg.sc_at(i, j, k);
        }
    }
    return out;
}

std::vector<long long> apply_matrix(const std::vector<long long>& g, int d,
                                    const std::vector<long long>& u) {
    std::vector<long long> out(d, 0);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out[r] += g[r * d + c] * u[c];
    return out;
}

bool closed(const AlgebraPresentation& alg, const Basis& basis) {
    const int d = alg.d;
    switch (alg.mode) {
        case ClosureMode::Subalgebra:
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (!member(basis, product(alg, basis[i], basis[j]))) return false;
            return true;
        case ClosureMode::Ideal: {
            std::vector<long long> e(d, 0);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    e.assign(d, 0);
                    e[j] = 1;
                    if (!member(basis, product(alg, basis[i], e))) return false;
                    if (!member(basis, product(alg, e, basis[i]))) return false;
                }
            }
            return true;
        }
        case ClosureMode::Submodule:
            // the identity is adjoined implicitly: it fixes every lattice
            for (const auto& g : alg.generators)
                for (int i = 0; i < d; ++i)
                    if (!member(basis, apply_matrix(g, d, basis[i]))) return false;
            return true;
    }
    return false;
}

// Enumerate HNF bases with diagonal exponents summing to k; `visit` sees
// each basis exactly once.
template <typename Visit>
void enumerate_hnf(int d, std::uint64_t p, int k, std::uint64_t budget, std::uint64_t& used,
                   Visit&& visit) {
    std::vector<long long> pivot(d, 1);

    // iterate over compositions of k into d parts, starting (k, 0, ..., 0)
    std::vector<int> comp(d, 0);
    comp[0] = k;
    for (;;) {
        for (int i = 0; i < d; ++i) {
            long long pw = 1;
            for (int t = 0; t < comp[i]; ++t) {
                pw *= static_cast<long long>(p);
                if (pw > 100'000'000)
                    throw Error(ErrKind::BudgetExceeded,
                                "sublattice index too large for exact closure arithmetic");
            }
            pivot[i] = pw;
        }
        // off-diagonal digits: entry (i, j), i < j, ranges over [0, pivot[j])
        Basis basis(d, std::vector<long long>(d, 0));
        for (int i = 0; i < d; ++i) basis[i][i] = pivot[i];
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (pivot[j] > 1) slots.emplace_back(i, j);

        std::vector<long long> digit(slots.size(), 0);
        for (;;) {
            if (++used > budget)
                throw Error(ErrKind::BudgetExceeded, "sublattice enumeration exceeds budget");
            visit(const_cast<const Basis&>(basis));
            std::size_t pos = 0;
            while (pos < slots.size()) {
                auto [i, j] = slots[pos];
                if (++digit[pos] < pivot[j]) {
                    basis[i][j] = digit[pos];
                    break;
                }
                digit[pos] = 0;
                basis[i][j] = 0;
                ++pos;
            }
            if (pos == slots.size()) break;
        }

        // next composition
        if (comp[d - 1] == k) break;
        int i = 0;
        while (comp[i] == 0) ++i;
        int v = comp[i];
        comp[i] = 0;
        comp[0] = v - 1;
        comp[i + 1] += 1;
    }
}

}  // namespace

std::vector<Int> subzeta_coeffs(const AlgebraPresentation& alg, std::uint64_t p, int kmax,
                                const CountOptions& opts) {
    if (alg.mode == ClosureMode::Submodule) {
        for (const auto& g : alg.generators)
            if (static_cast<int>(g.size()) != alg.d * alg.d)
                throw Error(ErrKind::ArityError, "submodule generator is not a d*d matrix");
    }
    std::vector<Int> out;
    std::uint64_t used = 0;
    for (int k = 0; k <= kmax; ++k) {
        Int count = 0;
        enumerate_hnf(alg.d, p, k, opts.budget, used, [&](const Basis& basis) {
            if (closed(alg, basis)) ++count;
        });
        out.push_back(count);
    }
    return out;
}

Int sublattice_count(int d, std::uint64_t p, int k, const CountOptions& opts) {
    Int count = 0;
    std::uint64_t used = 0;
    enumerate_hnf(d, p, k, opts.budget, used, [&](const Basis&) { ++count; });
    return count;
}

IgusaValue igusa_truncated(const MonomialIdealSet& ideals, const Int& q,
                           const std::vector<unsigned>& s, int B) {
    const int n = ideals.n;
    if (s.size() != ideals.ideals.size())
        throw Error(ErrKind::ArityError, "one exponent s_j per ideal required");
    Rat qinv = Rat(1) / Rat(q);
    Rat cell_base(1);
    for (int i = 0; i < n; ++i) cell_base *= (Rat(1) - qinv);

    std::vector<int> v(n, 0);
    Rat total(0);
    for (;;) {
        long vsum = 0;
        for (int i = 0; i < n; ++i) vsum += v[i];
        Rat contrib = cell_base * rat_pow(qinv, vsum);
        for (std::size_t j = 0; j < ideals.ideals.size(); ++j) {
            long w = -1;
            for (const auto& gen : ideals.ideals[j]) {
                long dot = 0;
                for (int i = 0; i < n; ++i) dot += static_cast<long>(gen[i]) * v[i];
                if (w < 0 || dot < w) w = dot;
            }
            contrib *= rat_pow(qinv, static_cast<long>(s[j]) * w);
        }
        total += contrib;
        int pos = 0;
        while (pos < n && ++v[pos] > B) v[pos++] = 0;
        if (pos == n) break;
    }
    IgusaValue out;
    out.value = total;
    out.tail_bound = Rat(n) * rat_pow(qinv, B + 1);
    return out;
}

CycloRational igusa_principal_exact(const std::vector<unsigned>& exponents,
                                    bool with_measure_factors) {
    CycloRational acc = CycloRational::one(1);
    LaurentPoly measure = LaurentPoly::constant(1, Rat(1)) - LaurentPoly::monomial(1, Rat(1), -1, {});
    for (unsigned e : exponents) {
        if (e == 0) continue;  // |1|^s integrates to full measure
        FactorMultiset den;
        den[CycloFactor{-1, {static_cast<int>(e)}}] = 1;
        LaurentPoly num =
            with_measure_factors ? measure : LaurentPoly::constant(1, Rat(1));
        acc = acc * CycloRational(num, std::move(den));
    }
    return acc;
}

CycloRational igusa_principal_exact(const MonomialIdealSet& ideals, bool with_measure_factors) {
    if (ideals.ideals.size() != 1 || ideals.ideals[0].size() != 1)
        throw Error(ErrKind::MultipleGenerators,
                    "exact form requires a single principal monomial ideal");
    const auto& gen = ideals.ideals[0][0];
    return igusa_principal_exact(std::vector<unsigned>(gen.begin(), gen.end()),
                                 with_measure_factors);
}

namespace {

CycloRational heisenberg_w() {
    LaurentPoly num = LaurentPoly::constant(1, Rat(1)) - LaurentPoly::monomial(1, Rat(1), 0, {1});
    FactorMultiset den;
    den[CycloFactor{1, {1}}] = 1;
    return CycloRational(std::move(num), std::move(den));
}

CycloRational abelian_sub_w(int d, bool corrected) {
    FactorMultiset den;
    for (int i = 0; i < d; ++i) den[CycloFactor{i, {1}}] = 1;
    LaurentPoly num = LaurentPoly::constant(1, Rat(1));
    if (corrected) {
        LaurentPoly c =
            LaurentPoly::constant(1, Rat(1)) - LaurentPoly::monomial(1, Rat(1), -1, {});
        num = c.pow(static_cast<unsigned>(d));
    }
    return CycloRational(std::move(num), std::move(den));
}

// parses "name" or "name(k)"; returns -1 when no argument
int parse_arg(const std::string& name, std::string& head) {
    auto open = name.find('(');
    if (open == std::string::npos) {
        head = name;
        return -1;
    }
    if (name.back() != ')') throw Error(ErrKind::UnknownName, "malformed catalog name: " + name);
    head = name.substr(0, open);
    std::string inner = name.substr(open + 1, name.size() - open - 2);
    if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrKind::UnknownName, "malformed catalog argument: " + name);
    return std::atoi(inner.c_str());
}

}  // namespace

LocalMapFormula catalog(const std::string& name) {
    std::string head;
    int arg = parse_arg(name, head);
    if (head == "heisenberg_twist_irr" && arg < 0) {
        std::vector<FormulaTerm> terms;
        terms.push_back(FormulaTerm{cs_point(), heisenberg_w()});
        return LocalMapFormula(std::move(terms), 1);
    }
    if (head == "abelian_sub" && arg >= 1) {
        std::vector<FormulaTerm> terms;
        terms.push_back(FormulaTerm{cs_point(), abelian_sub_w(arg, false)});
        return LocalMapFormula(std::move(terms), 1);
    }
    if (head == "abelian_sub_corrected" && arg >= 1) {
        std::vector<FormulaTerm> terms;
        terms.push_back(FormulaTerm{cs_point(), abelian_sub_w(arg, true)});
        return LocalMapFormula(std::move(terms), 1);
    }
    throw Error(ErrKind::UnknownName, "unknown catalog name: " + name);
}

}  // namespace zk
