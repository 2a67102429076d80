#include "zk/mring.hpp"

#include <algorithm>
#include <string>

namespace zk {

PolyS PolyS::constant(int m, const Rat& c) {
    PolyS p(m);
    p.add_term(c, std::vector<unsigned>(m, 0));
    return p;
}

PolyS PolyS::variable(int m, int i) {
    PolyS p(m);
    std::vector<unsigned> e(m, 0);
    e[i] = 1;
    p.add_term(Rat(1), std::move(e));
    return p;
}

void PolyS::add_term(const Rat& c, std::vector<unsigned> exps) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(exps), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

PolyS PolyS::operator+(const PolyS& o) const {
    PolyS r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(c, k);
    return r;
}

PolyS PolyS::operator-() const {
    PolyS r(m_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

PolyS PolyS::operator-(const PolyS& o) const { return *this + (-o); }

PolyS PolyS::operator*(const PolyS& o) const {
    PolyS r(m_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            std::vector<unsigned> k(m_);
            for (int i = 0; i < m_; ++i) k[i] = ka[i] + kb[i];
            r.add_term(ca * cb, std::move(k));
        }
    return r;
}

PolyS PolyS::scaled(const Rat& c) const {
    PolyS r(m_);
    if (c == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

Rat PolyS::eval(const std::vector<Rat>& s) const {
    Rat acc(0);
    for (const auto& [k, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < m_; ++i)
            for (unsigned e = 0; e < k[i]; ++e) t *= s[i];
        acc += t;
    }
    return acc;
}

Rat PolyS::leading_coefficient() const {
    if (terms_.empty()) return Rat(0);
    auto best = terms_.begin();
    auto deg = [](const std::vector<unsigned>& e) {
        unsigned d = 0;
        for (unsigned v : e) d += v;
        return d;
    };
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
        unsigned da = deg(it->first), db = deg(best->first);
        if (da > db || (da == db && it->first > best->first)) best = it;
    }
    return best->second;
}

PolyS binom_poly(int m, const AffineForm& e, unsigned d) {
    // e (e-1) ... (e-d+1) / d!
    PolyS base = PolyS::constant(m, Rat(e.a));
    for (int j = 0; j < m; ++j)
        base = base - PolyS::variable(m, j).scaled(Rat(e.b[static_cast<std::size_t>(j)]));
    PolyS acc = PolyS::constant(m, Rat(1));
    Rat fact(1);
    for (unsigned t = 0; t < d; ++t) {
        acc = acc * (base - PolyS::constant(m, Rat(static_cast<long>(t))));
        fact *= Rat(static_cast<long>(t + 1));
    }
    return acc.scaled(Rat(1) / fact);
}

SeriesX1 series_add(const SeriesX1& a, const SeriesX1& b) {
    SeriesX1 r;
    r.order = std::min(a.order, b.order);
    for (int d = 0; d <= r.order; ++d)
        r.coeff.push_back(a.coeff[static_cast<std::size_t>(d)] + b.coeff[static_cast<std::size_t>(d)]);
    return r;
}

SeriesX1 series_mul(const SeriesX1& a, const SeriesX1& b) {
    SeriesX1 r;
    r.order = std::min(a.order, b.order);
    int m = a.coeff.empty() ? 0 : a.coeff[0].m();
    for (int d = 0; d <= r.order; ++d) {
        PolyS acc(m);
        for (int i = 0; i <= d; ++i)
            acc = acc + a.coeff[static_cast<std::size_t>(i)] * b.coeff[static_cast<std::size_t>(d - i)];
        r.coeff.push_back(std::move(acc));
    }
    return r;
}

SeriesX1 numerator_series(const LaurentPoly& g, unsigned T) {
    const int m = g.m();
    SeriesX1 r;
    r.order = static_cast<int>(T);
    r.coeff.assign(T + 1, PolyS(m));
    for (const auto& [key, c] : g.terms()) {
        AffineForm e{key.x, key.y};
        // incremental product e(e-1).../d! term by term
        PolyS base = PolyS::constant(m, Rat(e.a));
        for (int j = 0; j < m; ++j)
            base = base - PolyS::variable(m, j).scaled(Rat(e.b[static_cast<std::size_t>(j)]));
        PolyS term = PolyS::constant(m, Rat(1));
        r.coeff[0] = r.coeff[0] + term.scaled(c);
        for (unsigned d = 1; d <= T; ++d) {
            term = term * (base - PolyS::constant(m, Rat(static_cast<long>(d - 1))));
            term = term.scaled(Rat(1, static_cast<long>(d)));
            r.coeff[d] = r.coeff[d] + term.scaled(c);
        }
    }
    return r;
}

MembershipInfo check_membership(const CycloRational& w) {
    MembershipInfo info;
    info.den_size = w.den_size();
    const unsigned T = static_cast<unsigned>(info.den_size);
    SeriesX1 s = numerator_series(w.num(), T);
    int vw = info.den_size + 1;  // conventional when all computed terms vanish
    for (int d = 0; d <= info.den_size; ++d) {
        if (!s.coeff[static_cast<std::size_t>(d)].is_zero()) {
            vw = d;
            break;
        }
    }
    info.valuation = vw;
    info.in_m = vw >= info.den_size;
    info.valuation_gap = std::min(vw - info.den_size, 1);
    return info;
}

RatS rats_zero(int m) { return RatS{PolyS(m), PolyS::constant(m, Rat(1))}; }

RatS rats_normalize(PolyS num, PolyS den) {
    const int m = num.m();
    if (num.is_zero()) return rats_zero(m);
    Rat lc = den.leading_coefficient();
    if (lc == 0) throw Error(ErrKind::DivisionByZero, "zero denominator");
    return RatS{num.scaled(Rat(1) / lc), den.scaled(Rat(1) / lc)};
}

RatS rats_add(const RatS& a, const RatS& b) {
    return rats_normalize(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatS rats_mul(const RatS& a, const RatS& b) { return rats_normalize(a.num * b.num, a.den * b.den); }

RatS rats_scale(const RatS& a, const Rat& c) {
    if (c == 0) return rats_zero(a.num.m());
    return RatS{a.num.scaled(c), a.den};
}

bool rats_equal(const RatS& a, const RatS& b) { return a.num * b.den == b.num * a.den; }

RatS red(const CycloRational& w) {
    MembershipInfo info = check_membership(w);
    if (!info.in_m)
        throw Error(ErrKind::NotInM, "not expandable: numerator valuation " +
                                         std::to_string(info.valuation) + " < denominator size " +
                                         std::to_string(info.den_size));
    if (info.valuation_gap > 0) return rats_zero(w.m());

    const int m = w.m();
    SeriesX1 s = numerator_series(w.num(), static_cast<unsigned>(info.den_size));
    PolyS num = s.coeff[static_cast<std::size_t>(info.den_size)];
    // each factor 1 - X^{e_i} contributes -(e_i) = -a_i + sum b_ij s_j
    PolyS den = PolyS::constant(m, Rat(1));
    for (const auto& [fac, mult] : w.den()) {
        PolyS e = PolyS::constant(m, Rat(-fac.a));
        for (int j = 0; j < m; ++j)
            e = e + PolyS::variable(m, j).scaled(Rat(fac.b[static_cast<std::size_t>(j)]));
        for (int i = 0; i < mult; ++i) den = den * e;
    }
    return rats_normalize(std::move(num), std::move(den));
}

}  // namespace zk
