#include "zk/ratfun.hpp"

#include <algorithm>
#include <string>

namespace zk {

LaurentPoly LaurentPoly::constant(int m, const Rat& c) {
    LaurentPoly p(m);
    p.add_term(c, MonoKey{0, std::vector<int>(m, 0)});
    return p;
}

LaurentPoly LaurentPoly::monomial(int m, const Rat& c, int x, std::vector<int> y) {
    y.resize(m, 0);
    LaurentPoly p(m);
    p.add_term(c, MonoKey{x, std::move(y)});
    return p;
}

void LaurentPoly::add_term(const Rat& c, MonoKey key) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(key), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(c, k);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(m_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r(m_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            MonoKey k;
            k.x = ka.x + kb.x;
            k.y.resize(m_);
            for (int i = 0; i < m_; ++i) k.y[i] = ka.y[i] + kb.y[i];
            r.add_term(ca * cb, std::move(k));
        }
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly r = LaurentPoly::constant(m_, Rat(1));
    LaurentPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

LaurentPoly LaurentPoly::invert_all() const {
    LaurentPoly r(m_);
    for (const auto& [k, c] : terms_) {
        MonoKey nk;
        nk.x = -k.x;
        nk.y.resize(m_);
        for (int i = 0; i < m_; ++i) nk.y[i] = -k.y[i];
        r.add_term(c, std::move(nk));
    }
    return r;
}

LaurentPoly LaurentPoly::substitute_x(const Rat& xval, bool invert_y) const {
    LaurentPoly r(m_);
    for (const auto& [k, c] : terms_) {
        MonoKey nk;
        nk.x = 0;
        nk.y = k.y;
        if (invert_y)
            for (int i = 0; i < m_; ++i) nk.y[i] = -nk.y[i];
        r.add_term(c * rat_pow(xval, k.x), std::move(nk));
    }
    return r;
}

bool CycloFactor::is_degenerate() const {
    if (a != 0) return false;
    return std::all_of(b.begin(), b.end(), [](int v) { return v == 0; });
}

CycloRational::CycloRational(LaurentPoly num, FactorMultiset den)
    : num_(std::move(num)), den_(std::move(den)) {
    for (const auto& [fac, mult] : den_) {
        if (fac.is_degenerate())
            throw Error(ErrKind::DegenerateFactor, "cyclotomic factor with (a, b) = 0");
        if (static_cast<int>(fac.b.size()) != num_.m())
            throw Error(ErrKind::MixedArity, "factor arity differs from numerator arity");
        if (mult <= 0) throw Error(ErrKind::DegenerateFactor, "factor multiplicity must be positive");
    }
}

CycloRational CycloRational::from_poly(LaurentPoly num) {
    return CycloRational(std::move(num), FactorMultiset{});
}

CycloRational CycloRational::one(int m) { return from_poly(LaurentPoly::constant(m, Rat(1))); }

int CycloRational::den_size() const {
    int n = 0;
    for (const auto& [fac, mult] : den_) n += mult;
    return n;
}

CycloRational CycloRational::operator*(const CycloRational& o) const {
    FactorMultiset den = den_;
    for (const auto& [fac, mult] : o.den_) den[fac] += mult;
    return CycloRational(num_ * o.num_, std::move(den));
}

CycloRational CycloRational::operator+(const CycloRational& o) const {
    // common denominator: multiset union with max multiplicities
    FactorMultiset common = den_;
    for (const auto& [fac, mult] : o.den_) {
        auto it = common.find(fac);
        if (it == common.end())
            common.emplace(fac, mult);
        else
            it->second = std::max(it->second, mult);
    }
    auto complement = [&common](const FactorMultiset& own) {
        FactorMultiset rest;
        for (const auto& [fac, mult] : common) {
            auto it = own.find(fac);
            int have = it == own.end() ? 0 : it->second;
            if (mult > have) rest.emplace(fac, mult - have);
        }
        return rest;
    };
    LaurentPoly lhs = num_ * expand_factors(num_.m(), complement(den_));
    LaurentPoly rhs = o.num_ * expand_factors(num_.m(), complement(o.den_));
    return CycloRational(lhs + rhs, std::move(common));
}

CycloRational CycloRational::scale(const Rat& c, int x, const std::vector<int>& y) const {
    return CycloRational(num_ * LaurentPoly::monomial(num_.m(), c, x, y), den_);
}

CycloRational CycloRational::pow(unsigned e) const {
    CycloRational r = CycloRational::one(m());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

CycloRational CycloRational::invert_vars() const {
    // 1/(1 - X^-a Y^-b) = -X^a Y^b / (1 - X^a Y^b)
    LaurentPoly num = num_.invert_all();
    Rat sign(1);
    int xshift = 0;
    std::vector<int> yshift(num_.m(), 0);
    for (const auto& [fac, mult] : den_) {
        if (mult % 2) sign = -sign;
        xshift += fac.a * mult;
        for (int i = 0; i < num_.m(); ++i) yshift[i] += fac.b[i] * mult;
    }
    num = num * LaurentPoly::monomial(num_.m(), sign, xshift, yshift);
    return CycloRational(std::move(num), den_);
}

LaurentPoly expand_factors(int m, const FactorMultiset& den) {
    LaurentPoly r = LaurentPoly::constant(m, Rat(1));
    for (const auto& [fac, mult] : den) {
        LaurentPoly f = LaurentPoly::constant(m, Rat(1)) - LaurentPoly::monomial(m, Rat(1), fac.a, fac.b);
        for (int i = 0; i < mult; ++i) r = r * f;
    }
    return r;
}

bool cyclo_equal(const CycloRational& a, const CycloRational& b) {
    if (a.m() != b.m()) throw Error(ErrKind::MixedArity, "comparing rational functions of different arity");
    LaurentPoly lhs = a.num() * expand_factors(a.m(), b.den());
    LaurentPoly rhs = b.num() * expand_factors(a.m(), a.den());
    return lhs == rhs;
}

YRational substitute_pf(const CycloRational& w, std::uint64_t p, long long f, bool invert_y) {
    if (f == 0) throw Error(ErrKind::PoleAt, "substitution requires f != 0");
    Rat x = prime_power(p, static_cast<long>(f));
    YRational r{w.num().substitute_x(x, invert_y), LaurentPoly::constant(w.m(), Rat(1))};
    const int m = w.m();
    for (const auto& [fac, mult] : w.den()) {
        std::vector<int> b = fac.b;
        if (invert_y)
            for (auto& v : b) v = -v;
        LaurentPoly factor = LaurentPoly::constant(m, Rat(1)) -
                             LaurentPoly::monomial(m, rat_pow(x, fac.a), 0, b);
        for (int i = 0; i < mult; ++i) r.den = r.den * factor;
    }
    return r;
}

bool yrat_equal(const YRational& a, const YRational& b) {
    return a.num * b.den == b.num * a.den;
}

YRational yrat_add(const YRational& a, const YRational& b) {
    return YRational{a.num * b.den + b.num * a.den, a.den * b.den};
}

YRational yrat_scale(const YRational& a, const Rat& c, const std::vector<int>& y) {
    return YRational{a.num * LaurentPoly::monomial(a.num.m(), c, 0, y), a.den};
}

YRational yrat_from_const(int m, const Rat& c) {
    return YRational{LaurentPoly::constant(m, c), LaurentPoly::constant(m, Rat(1))};
}

std::vector<Rat> y_series(const YRational& w, int kmax) {
    if (w.num.m() != 1) throw Error(ErrKind::ArityError, "series expansion requires m = 1");
    // shift so the denominator has a nonzero constant term
    int mu = 0;
    if (!w.den.is_zero()) mu = w.den.terms().begin()->first.y[0];
    auto coeffs = [&](const LaurentPoly& poly, int shift, std::vector<Rat>& out) {
        for (const auto& [k, c] : poly.terms()) {
            int e = k.y[0] - shift;
            if (e < 0) throw Error(ErrKind::PoleAt, "series expansion hits a pole at Y = 0");
            if (e <= kmax) out[static_cast<std::size_t>(e)] = c;
        }
    };
    std::vector<Rat> n(kmax + 1, Rat(0)), d(kmax + 1, Rat(0));
    coeffs(w.num, mu, n);
    coeffs(w.den, mu, d);
    if (d[0] == 0) throw Error(ErrKind::PoleAt, "series expansion hits a pole at Y = 0");
    std::vector<Rat> out(kmax + 1, Rat(0));
    for (int k = 0; k <= kmax; ++k) {
        Rat acc = n[static_cast<std::size_t>(k)];
        for (int j = 1; j <= k; ++j)
            acc -= d[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
        out[static_cast<std::size_t>(k)] = acc / d[0];
    }
    return out;
}

namespace {

Rat eval_poly(const LaurentPoly& poly, const std::vector<Rat>& vals) {
    Rat acc(0);
    for (const auto& [k, c] : poly.terms()) {
        Rat t = c;
        for (int i = 0; i < poly.m(); ++i) {
            if (k.y[i] == 0) continue;
            if (vals[i] == 0 && k.y[i] < 0)
                throw Error(ErrKind::PoleAt, "negative power of zero");
            t *= rat_pow(vals[i], k.y[i]);
        }
        acc += t;
    }
    return acc;
}

}  // namespace

Rat yrat_eval(const YRational& w, const std::vector<Rat>& vals) {
    Rat den = eval_poly(w.den, vals);
    if (den == 0) throw Error(ErrKind::PoleAt, "denominator vanishes at the evaluation point");
    return eval_poly(w.num, vals) / den;
}

}  // namespace zk
