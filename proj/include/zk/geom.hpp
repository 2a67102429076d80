#ifndef ZK_GEOM_HPP
#define ZK_GEOM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "zk/ffield.hpp"
#include "zk/rational.hpp"

namespace zk {

// Sparse multivariate polynomial with integer coefficients; terms are kept
// sorted by exponent vector with no zero coefficients.
class IntPoly {
  public:
    struct Term {
        Int coef;
        std::vector<unsigned> exps;  // length nvars
        friend bool operator==(const Term& a, const Term& b) {
            return a.coef == b.coef && a.exps == b.exps;
        }
    };

    explicit IntPoly(int nvars) : nvars_(nvars) {}
    static IntPoly constant(int nvars, Int c);
    static IntPoly variable(int nvars, int i);

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // nullopt unless the polynomial is constant
    std::optional<Int> constant_value() const;
    // coefficient of the lexicographically largest exponent vector
    Int leading_coefficient() const;
    int max_var() const;  // largest variable index actually used, -1 if none

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    IntPoly pow(unsigned e) const;
    // identical variable set embedding into a wider ring, offset shifts vars
    IntPoly embed(int new_nvars, int offset) const;

    void add_term(Int c, std::vector<unsigned> exps);

  private:
    int nvars_;
    std::vector<Term> terms_;
};

struct AffineSystem {
    int nvars = 0;
    std::vector<IntPoly> equations;
    std::vector<IntPoly> inequations;
};

struct Piece {
    int sign = +1;
    AffineSystem sys;
};

// Signed combination of affine systems; the counting model for the V_i.
struct ConstructibleSet {
    std::vector<Piece> pieces;
    std::optional<long long> user_chi;
};

// Builders. Systems are normalized on entry: identically zero equations are
// dropped, a nonzero constant equation empties the piece, and dually for
// inequations.
ConstructibleSet cs_point();
ConstructibleSet cs_affine(int n);
ConstructibleSet cs_torus(int n);
ConstructibleSet cs_from_system(AffineSystem sys, int sign = +1);
ConstructibleSet cs_product(const ConstructibleSet& a, const ConstructibleSet& b);
ConstructibleSet cs_disjoint_union(const ConstructibleSet& a, const ConstructibleSet& b);
ConstructibleSet cs_difference(const ConstructibleSet& a, const ConstructibleSet& b);

struct CountOptions {
    std::uint64_t budget = 100'000'000;  // total point evaluations per call
    bool strict = false;                 // reject negative signed totals
};

// Exact signed number of F_{p^f}-points. Enumerates each piece's affine
// space lexicographically; pure and deterministic.
// Errors: BudgetExceeded, NegativeCount (strict mode only).
Int count_points(const ConstructibleSet& set, std::uint64_t p, unsigned f,
                 const CountOptions& opts = {});

// Largest f with 1 <= f <= max_f whose full enumeration cost fits the
// budget; 0 if even f = 1 does not fit.
unsigned feasible_depth(const ConstructibleSet& set, std::uint64_t p, unsigned max_f,
                        std::uint64_t budget);

// Primes dividing a leading coefficient somewhere in the set; used to pick
// default sample primes.
std::vector<std::uint64_t> awkward_primes(const ConstructibleSet& set);

}  // namespace zk

#endif
