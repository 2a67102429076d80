#ifndef ZK_WEIL_HPP
#define ZK_WEIL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "zk/geom.hpp"
#include "zk/rational.hpp"

namespace zk {

// One summand of a point-count decomposition N_f = sum m * q^(j f).
struct SpectralTerm {
    Int m;
    unsigned j;
    friend bool operator==(const SpectralTerm& a, const SpectralTerm& b) {
        return a.m == b.m && a.j == b.j;
    }
};

// Minimal linear recurrence behind a count sequence N_1..N_L over F_{q^f}:
// N_f = c_1 N_{f-1} + ... + c_u N_{f-u} with c_u != 0, which extends the
// counts to all integer f.
struct WeilModel {
    Int q;
    std::vector<Rat> counts;  // N_1..N_L
    std::vector<Rat> rec;     // c_1..c_u
    std::optional<std::vector<SpectralTerm>> spectral;  // sorted by j descending
};

// Minimal LFSR over Q: returns c_1..c_L with a_n = sum_i c_i a_{n-i} for all
// n >= L (0-based internally). The all-zero sequence yields an empty result.
std::vector<Rat> berlekamp_massey(const std::vector<Rat>& a);

// Fits the minimal recurrence on counts with the final `slack` terms
// withheld, then requires the fit to predict them.
// Errors: Unstable (prediction fails or no terms left), ZeroEigenvalue.
WeilModel fit_recurrence(const Int& q, const std::vector<Int>& counts, int slack = 4);
WeilModel fit_recurrence_rat(const Int& q, const std::vector<Rat>& counts, int slack = 4);

// As above but confirmation is whatever the data leaves beyond the 2u terms
// that pin the order-u recurrence down; fails (Unstable) when the data does
// not even determine the recurrence. Used by grid-level machinery where the
// count budget limits the depth.
WeilModel fit_recurrence_adaptive(const Int& q, const std::vector<Rat>& counts);

// Incremental fit of the count model of a constructible set at p: counts are
// computed for f = 1, 2, ... until the recurrence is confirmed by `confirm`
// extra terms, or depth/budget stop the enumeration. Errors: Unstable when
// the available counts cannot pin the recurrence down, BudgetExceeded when
// not even f = 1 fits.
WeilModel fit_set_model(const ConstructibleSet& set, std::uint64_t p, int depth,
                        std::uint64_t budget, int confirm = 2);

// Exact value of the extended count at any integer f (negative f runs the
// recurrence backwards; requires c_u != 0).
Rat extend_count(const WeilModel& model, long long f);

// Tries to factor the characteristic polynomial as prod (T - q^{j_i}) with
// distinct j_i >= 0 and solve the integer multiplicities m_i from the counts.
// Absence is a value, not an error.
std::optional<std::vector<SpectralTerm>> polynomial_count(const WeilModel& model);

inline long long spectral_sum(const std::vector<SpectralTerm>& s) {
    Int t = 0;
    for (const auto& e : s) t += e.m;
    return t.get_si();
}

// First `howmany` primes not dividing any leading coefficient of the set.
std::vector<std::uint64_t> default_sample_primes(const ConstructibleSet& set, int howmany = 6);

// Topological Euler characteristic: user_chi when present, otherwise sum of
// spectral multiplicities, which must agree across all sample primes.
// Errors: NonUniformCount (witness pair), NotPolynomialCount, Unstable,
// BudgetExceeded.
long long euler_characteristic(const ConstructibleSet& set,
                               std::vector<std::uint64_t> primes = {}, int depth = 8,
                               const CountOptions& opts = {});

}  // namespace zk

#endif
