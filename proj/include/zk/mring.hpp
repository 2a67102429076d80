#ifndef ZK_MRING_HPP
#define ZK_MRING_HPP

#include <map>
#include <vector>

#include "zk/ratfun.hpp"

namespace zk {

// Polynomial in s_1..s_m over Q, canonical sparse form.
class PolyS {
  public:
    explicit PolyS(int m) : m_(m) {}
    static PolyS constant(int m, const Rat& c);
    static PolyS variable(int m, int i);

    int m() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<unsigned>, Rat>& terms() const { return terms_; }

    void add_term(const Rat& c, std::vector<unsigned> exps);

    PolyS operator+(const PolyS& o) const;
    PolyS operator-(const PolyS& o) const;
    PolyS operator*(const PolyS& o) const;
    PolyS operator-() const;
    PolyS scaled(const Rat& c) const;
    friend bool operator==(const PolyS& a, const PolyS& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    Rat eval(const std::vector<Rat>& s) const;
    // leading coefficient in graded-lex order (largest total degree first)
    Rat leading_coefficient() const;

  private:
    int m_;
    std::map<std::vector<unsigned>, Rat> terms_;
};

// Exponent e = a - b_1 s_1 - ... - b_m s_m arising from X^a (Y_j -> X^-s_j)^{b_j}.
struct AffineForm {
    int a = 0;
    std::vector<int> b;
};

// binomial(e, d) = e(e-1)...(e-d+1)/d! as a polynomial in s of degree d
PolyS binom_poly(int m, const AffineForm& e, unsigned d);

// Truncated power series in (X-1) with PolyS coefficients.
struct SeriesX1 {
    int order = 0;  // truncation order T; coefficients for (X-1)^0..(X-1)^T
    std::vector<PolyS> coeff;
};

SeriesX1 series_add(const SeriesX1& a, const SeriesX1& b);
SeriesX1 series_mul(const SeriesX1& a, const SeriesX1& b);

// Image of the numerator under Y_j -> X^-s_j, expanded in (X-1) to order T.
SeriesX1 numerator_series(const LaurentPoly& g, unsigned T);

struct MembershipInfo {
    bool in_m = false;
    int valuation_gap = 0;  // w - |I|, capped at 1
    int valuation = 0;      // w (|I|+1 conventionally when all computed terms vanish)
    int den_size = 0;       // |I|
};

// Membership of W in the expandable class: the numerator series must vanish
// to order |I| (the denominator multiset size).
MembershipInfo check_membership(const CycloRational& w);

// Rational function in s_1..s_m; denominator normalized to leading
// coefficient 1, no gcd cancellation attempted.
struct RatS {
    PolyS num, den;
};

RatS rats_zero(int m);
RatS rats_normalize(PolyS num, PolyS den);
RatS rats_add(const RatS& a, const RatS& b);
RatS rats_mul(const RatS& a, const RatS& b);
RatS rats_scale(const RatS& a, const Rat& c);
bool rats_equal(const RatS& a, const RatS& b);

// red W: the series W(X, X^-s_1, ..., X^-s_m) mod (X-1).
// Errors: NotInM when check_membership fails.
RatS red(const CycloRational& w);

}  // namespace zk

#endif
