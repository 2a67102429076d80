#ifndef ZK_ORACLES_HPP
#define ZK_ORACLES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zk/localmap.hpp"
#include "zk/rational.hpp"

namespace zk {

enum class ClosureMode { Subalgebra, Ideal, Submodule };

// Z^d with a bilinear product given by structure constants
// e_i e_j = sum_k sc[(i d + j) d + k] e_k; no associativity assumed.
struct AlgebraPresentation {
    int d = 0;
    std::vector<long long> sc;  // d*d*d, zero-filled
    ClosureMode mode = ClosureMode::Subalgebra;
    // Submodule mode: generators of the acting algebra as d x d row-major
    // matrices; the identity action is implicit.
    std::vector<std::vector<long long>> generators;

    long long sc_at(int i, int j, int k) const { return sc[(i * d + j) * d + k]; }
};

// c_k = number of sublattices of Z^d of index p^k, enumerated through their
// Hermite normal form bases, that pass the closure test of `mode`.
// Errors: BudgetExceeded (charged per visited basis).
std::vector<Int> subzeta_coeffs(const AlgebraPresentation& alg, std::uint64_t p, int kmax,
                                const CountOptions& opts = {});

// Count of all HNF bases of index p^k over Z^d (vacuous closure).
Int sublattice_count(int d, std::uint64_t p, int k, const CountOptions& opts = {});

// Monomial ideals in n variables, each given by its generator exponents.
struct MonomialIdealSet {
    int n = 0;
    std::vector<std::vector<std::vector<unsigned>>> ideals;
};

struct IgusaValue {
    Rat value;
    Rat tail_bound;  // n * q^-(B+1)
};

// Truncated integral over the valuation grid {0..B}^n:
//   sum (1-q^-1)^n q^-|v| prod_j q^(-s_j w_j(v)),  w_j(v) = min_e <e, v>.
IgusaValue igusa_truncated(const MonomialIdealSet& ideals, const Int& q,
                           const std::vector<unsigned>& s, int B);

// Exact value of the principal-ideal case x1^e1 ... xn^en as a rational
// function in (X, Y1): prod_i (1 - X^-1) / (1 - X^-1 Y1^{e_i}), with the
// measure factors optionally omitted.
// Errors: MultipleGenerators.
CycloRational igusa_principal_exact(const std::vector<unsigned>& exponents,
                                    bool with_measure_factors = true);
CycloRational igusa_principal_exact(const MonomialIdealSet& ideals,
                                    bool with_measure_factors = true);

// Named example formulas:
//   heisenberg_twist_irr          [(point, (1-Y)/(1-XY))]
//   abelian_sub(d)                [(point, 1/prod_{i<d}(1-X^i Y))]
//   abelian_sub_corrected(d)      the same scaled by (1-X^-1)^d
// Errors: UnknownName.
LocalMapFormula catalog(const std::string& name);

}  // namespace zk

#endif
