#ifndef ZK_RATFUN_HPP
#define ZK_RATFUN_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "zk/error.hpp"
#include "zk/rational.hpp"

namespace zk {

// Exponent vector of one monomial X^x * Y_1^{y_1} ... Y_m^{y_m}.
struct MonoKey {
    int x = 0;
    std::vector<int> y;
    friend auto operator<=>(const MonoKey&, const MonoKey&) = default;
};

// Laurent polynomial in X, Y_1..Y_m over Q; no zero coefficients stored.
class LaurentPoly {
  public:
    explicit LaurentPoly(int m) : m_(m) {}
    static LaurentPoly constant(int m, const Rat& c);
    static LaurentPoly monomial(int m, const Rat& c, int x, std::vector<int> y);

    int m() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MonoKey, Rat>& terms() const { return terms_; }

    void add_term(const Rat& c, MonoKey key);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly pow(unsigned e) const;
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    // substitute (X, Y) -> (X^-1, Y^-1)
    LaurentPoly invert_all() const;
    // substitute X -> xval (exact), optionally Y_j -> Y_j^-1; X-exponents
    // of the result are all zero
    LaurentPoly substitute_x(const Rat& xval, bool invert_y = false) const;

  private:
    int m_;
    std::map<MonoKey, Rat> terms_;
};

// Denominator factor 1 - X^a Y_1^{b_1} ... Y_m^{b_m}, (a, b) != 0.
struct CycloFactor {
    int a = 0;
    std::vector<int> b;
    friend auto operator<=>(const CycloFactor&, const CycloFactor&) = default;
    bool is_degenerate() const;
};

using FactorMultiset = std::map<CycloFactor, int>;

// Laurent numerator over a product of cyclotomic factors. Regular at
// (q^f, Y) for every integer q > 1 and f != 0 by construction.
class CycloRational {
  public:
    CycloRational(LaurentPoly num, FactorMultiset den);  // DegenerateFactor check
    static CycloRational from_poly(LaurentPoly num);
    static CycloRational one(int m);

    int m() const { return num_.m(); }
    const LaurentPoly& num() const { return num_; }
    const FactorMultiset& den() const { return den_; }
    int den_size() const;  // multiset cardinality, with multiplicity

    CycloRational operator*(const CycloRational& o) const;
    CycloRational operator+(const CycloRational& o) const;
    // multiply by c * X^x * Y^y
    CycloRational scale(const Rat& c, int x = 0, const std::vector<int>& y = {}) const;
    CycloRational pow(unsigned e) const;

    // W(X^-1, Y^-1) renormalized to the same factor multiset via
    // 1 - X^-a Y^-b = -X^-a Y^-b (1 - X^a Y^b)
    CycloRational invert_vars() const;

  private:
    LaurentPoly num_;
    FactorMultiset den_;
};

// denominator product expanded as a Laurent polynomial
LaurentPoly expand_factors(int m, const FactorMultiset& den);

// W1 == W2 as rational functions (cross-multiplied normal form)
bool cyclo_equal(const CycloRational& a, const CycloRational& b);

// Rational function in Y_1..Y_m with rational coefficients, the value of a
// CycloRational after X -> p^f. Compared by cross-multiplication.
struct YRational {
    LaurentPoly num, den;
};

YRational substitute_pf(const CycloRational& w, std::uint64_t p, long long f,
                        bool invert_y = false);

bool yrat_equal(const YRational& a, const YRational& b);
YRational yrat_add(const YRational& a, const YRational& b);
YRational yrat_scale(const YRational& a, const Rat& c, const std::vector<int>& y = {});
YRational yrat_from_const(int m, const Rat& c);

// power series coefficients in Y for m == 1, up to and including Y^kmax
std::vector<Rat> y_series(const YRational& w, int kmax);

// exact evaluation at Y_j = vals[j]; PoleAt when the denominator vanishes
Rat yrat_eval(const YRational& w, const std::vector<Rat>& vals);

}  // namespace zk

#endif
