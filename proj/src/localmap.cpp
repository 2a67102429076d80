#include "zk/localmap.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

#include "zk/error.hpp"

namespace zk {

LocalMapFormula::LocalMapFormula(std::vector<FormulaTerm> terms, int m,
                                 std::set<std::uint64_t> excluded)
    : m_(m), terms_(std::move(terms)), excluded_(std::move(excluded)) {
    for (const auto& t : terms_)
        if (t.w.m() != m_)
            throw Error(ErrKind::MixedArity, "term arity " + std::to_string(t.w.m()) +
                                                 " differs from formula arity " + std::to_string(m_));
}

LocalMapFormula formula_sum(const LocalMapFormula& a, const LocalMapFormula& b) {
    if (a.m() != b.m()) throw Error(ErrKind::MixedArity, "summing formulas of different arity");
    std::vector<FormulaTerm> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    std::set<std::uint64_t> excl = a.excluded_;
    excl.insert(b.excluded_.begin(), b.excluded_.end());
    return LocalMapFormula(std::move(terms), a.m(), std::move(excl));
}

WeilModel LocalMapFormula::count_model(std::size_t term, std::uint64_t p, int depth,
                                       std::uint64_t budget) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find({term, p});
        if (it != cache_.end()) return *it->second;
    }
    WeilModel model = fit_set_model(terms_[term].set, p, depth, budget);
    auto shared = std::make_shared<const WeilModel>(std::move(model));
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, fresh] = cache_.try_emplace({term, p}, shared);
    return *it->second;
}

namespace {

void require_usable_prime(const LocalMapFormula& formula, std::uint64_t p) {
    if (formula.excluded_primes().count(p))
        throw Error(ErrKind::ExcludedPrime, "p = " + std::to_string(p) + " is excluded");
    if (!is_prime_u64(p)) throw Error(ErrKind::NotPrime, "p = " + std::to_string(p) + " is not prime");
}

}  // namespace

YRational evaluate(const LocalMapFormula& formula, std::uint64_t p, long long f,
                   const EvalOptions& opts) {
    require_usable_prime(formula, p);
    if (f < 1) throw Error(ErrKind::PoleAt, "evaluate requires f >= 1; use evaluate_star");
    CountOptions copts;
    copts.budget = opts.budget;
    copts.strict = opts.strict;
    YRational acc = yrat_from_const(formula.m(), Rat(0));
    for (const auto& term : formula.terms()) {
        Rat count(count_points(term.set, p, static_cast<unsigned>(f), copts));
        YRational w = substitute_pf(term.w, p, f);
        acc = yrat_add(acc, yrat_scale(w, count));
    }
    return acc;
}

YRational evaluate_star(const LocalMapFormula& formula, std::uint64_t p, long long f,
                        const EvalOptions& opts) {
    require_usable_prime(formula, p);
    if (f == 0) throw Error(ErrKind::PoleAt, "Z_* is defined for f != 0");
    if (f > 0) return evaluate(formula, p, f, opts);
    YRational acc = yrat_from_const(formula.m(), Rat(0));
    for (std::size_t i = 0; i < formula.terms().size(); ++i) {
        WeilModel model = formula.count_model(i, p, opts.depth, opts.budget);
        Rat count = extend_count(model, f);
        YRational w = substitute_pf(formula.terms()[i].w, p, f, /*invert_y=*/true);
        acc = yrat_add(acc, yrat_scale(w, count));
    }
    return acc;
}

RatS topological(const LocalMapFormula& formula, const EvalOptions& opts) {
    CountOptions copts;
    copts.budget = opts.budget;
    RatS acc = rats_zero(formula.m());
    for (std::size_t i = 0; i < formula.terms().size(); ++i) {
        const auto& term = formula.terms()[i];
        MembershipInfo info = check_membership(term.w);
        if (!info.in_m)
            throw Error(ErrKind::NotInM, "term " + std::to_string(i) +
                                             " is not expandable (valuation gap " +
                                             std::to_string(info.valuation_gap) + ")");
        long long chi = euler_characteristic(term.set, {}, opts.depth, copts);
        if (chi == 0) continue;
        acc = rats_add(acc, rats_scale(red(term.w), Rat(static_cast<long>(chi))));
    }
    return acc;
}

UniformizeResult uniformize(const LocalMapFormula& formula, std::vector<std::uint64_t> primes,
                            int depth, const EvalOptions& opts) {
    UniformizeResult result;
    const int m = formula.m();
    CycloRational rep = CycloRational::from_poly(LaurentPoly(m));
    for (std::size_t i = 0; i < formula.terms().size(); ++i) {
        const auto& term = formula.terms()[i];
        std::vector<std::uint64_t> ps = primes;
        if (ps.empty()) ps = default_sample_primes(term.set);
        std::sort(ps.begin(), ps.end());
        ps.erase(std::remove_if(ps.begin(), ps.end(),
                                [&](std::uint64_t p) { return formula.excluded_primes().count(p) > 0; }),
                 ps.end());
        if (ps.empty()) {
            result.note = "term " + std::to_string(i) + ": no usable sample primes";
            return result;
        }

        // spectral outcome per prime; budget-limited primes may stay unknown
        std::vector<std::pair<std::uint64_t, std::optional<std::vector<SpectralTerm>>>> known;
        for (std::uint64_t p : ps) {
            try {
                WeilModel model = fit_set_model(term.set, p, depth, opts.budget);
                known.emplace_back(p, polynomial_count(model));
            } catch (const Error& e) {
                if (e.kind() != ErrKind::Unstable) throw;
                // insufficient data at this prime; skip unless nothing disagrees
            }
        }
        for (std::size_t k = 1; k < known.size(); ++k) {
            if (!(known[k].second == known[0].second)) {
                result.witness = {known[0].first, known[k].first};
                result.note = "term " + std::to_string(i) + ": spectral data differs between p = " +
                              std::to_string(known[0].first) + " and p = " +
                              std::to_string(known[k].first);
                return result;
            }
        }
        if (known.empty() || !known[0].second) {
            result.note = "term " + std::to_string(i) + ": counts are not a polynomial in q";
            return result;
        }
        if (known.size() < ps.size()) {
            result.note = "term " + std::to_string(i) +
                          ": some sample primes lack enough counts within budget";
            return result;
        }

        // P_i(X) = sum m X^j
        LaurentPoly pcount(m);
        for (const auto& st : *known[0].second)
            pcount.add_term(Rat(st.m), MonoKey{static_cast<int>(st.j), std::vector<int>(m, 0)});
        rep = rep + term.w * CycloRational::from_poly(pcount);
    }
    result.rep = rep;
    return result;
}

namespace {

// Interval arithmetic helpers over mpfr with directed rounding.
struct Interval {
    mpfr_t lo, hi;
    explicit Interval(mpfr_prec_t prec) {
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
    }
    ~Interval() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    Interval(const Interval&) = delete;
    Interval& operator=(const Interval&) = delete;
};

void iv_set_rat(Interval& r, const Rat& q) {
    mpfr_set_q(r.lo, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi, q.get_mpq_t(), MPFR_RNDU);
}

void iv_add(Interval& r, const Interval& a, const Interval& b) {
    mpfr_add(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_add(r.hi, a.hi, b.hi, MPFR_RNDU);
}

void iv_mul(Interval& r, const Interval& a, const Interval& b) {
    mpfr_prec_t prec = mpfr_get_prec(r.lo);
    mpfr_t c[4], lo, hi;
    for (auto& x : c) mpfr_init2(x, prec);
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_mul(c[0], a.lo, b.lo, MPFR_RNDD);
    mpfr_mul(c[1], a.lo, b.hi, MPFR_RNDD);
    mpfr_mul(c[2], a.hi, b.lo, MPFR_RNDD);
    mpfr_mul(c[3], a.hi, b.hi, MPFR_RNDD);
    mpfr_min(lo, c[0], c[1], MPFR_RNDD);
    mpfr_min(lo, lo, c[2], MPFR_RNDD);
    mpfr_min(lo, lo, c[3], MPFR_RNDD);
    mpfr_mul(c[0], a.lo, b.lo, MPFR_RNDU);
    mpfr_mul(c[1], a.lo, b.hi, MPFR_RNDU);
    mpfr_mul(c[2], a.hi, b.lo, MPFR_RNDU);
    mpfr_mul(c[3], a.hi, b.hi, MPFR_RNDU);
    mpfr_max(hi, c[0], c[1], MPFR_RNDU);
    mpfr_max(hi, hi, c[2], MPFR_RNDU);
    mpfr_max(hi, hi, c[3], MPFR_RNDU);
    mpfr_set(r.lo, lo, MPFR_RNDD);
    mpfr_set(r.hi, hi, MPFR_RNDU);
    for (auto& x : c) mpfr_clear(x);
    mpfr_clear(lo);
    mpfr_clear(hi);
}

// y = p^e for rational e, enclosed with directed rounding
void iv_pow_rat(Interval& r, std::uint64_t p, const Rat& e, mpfr_prec_t prec) {
    mpfr_t base, expo;
    mpfr_init2(base, prec);
    mpfr_init2(expo, prec);
    mpfr_set_ui(base, p, MPFR_RNDD);
    mpfr_set_q(expo, e.get_mpq_t(), MPFR_RNDD);
    mpfr_pow(r.lo, base, expo, MPFR_RNDD);
    mpfr_set_q(expo, e.get_mpq_t(), MPFR_RNDU);
    mpfr_pow(r.hi, base, expo, MPFR_RNDU);
    if (mpfr_cmp(r.lo, r.hi) > 0) mpfr_swap(r.lo, r.hi);
    mpfr_clear(base);
    mpfr_clear(expo);
}

void iv_ipow(Interval& r, const Interval& a, int e, mpfr_prec_t prec) {
    Interval acc(prec), base(prec);
    mpfr_set_ui(acc.lo, 1, MPFR_RNDD);
    mpfr_set_ui(acc.hi, 1, MPFR_RNDU);
    mpfr_set(base.lo, a.lo, MPFR_RNDD);
    mpfr_set(base.hi, a.hi, MPFR_RNDU);
    bool invert = e < 0;
    unsigned k = static_cast<unsigned>(invert ? -static_cast<long long>(e) : e);
    for (unsigned i = 0; i < k; ++i) iv_mul(acc, acc, base);
    if (invert) {
        // [1/hi, 1/lo]; intervals here are positive (powers of p > 0)
        Interval inv(prec);
        mpfr_ui_div(inv.lo, 1, acc.hi, MPFR_RNDD);
        mpfr_ui_div(inv.hi, 1, acc.lo, MPFR_RNDU);
        mpfr_set(acc.lo, inv.lo, MPFR_RNDD);
        mpfr_set(acc.hi, inv.hi, MPFR_RNDU);
    }
    mpfr_set(r.lo, acc.lo, MPFR_RNDD);
    mpfr_set(r.hi, acc.hi, MPFR_RNDU);
}

void eval_poly_interval(Interval& out, const LaurentPoly& poly,
                        const std::vector<std::unique_ptr<Interval>>& yvals, mpfr_prec_t prec) {
    mpfr_set_zero(out.lo, 1);
    mpfr_set_zero(out.hi, 1);
    for (const auto& [k, c] : poly.terms()) {
        Interval term(prec);
        iv_set_rat(term, c);
        for (int i = 0; i < poly.m(); ++i) {
            if (k.y[static_cast<std::size_t>(i)] == 0) continue;
            Interval pw(prec);
            iv_ipow(pw, *yvals[static_cast<std::size_t>(i)], k.y[static_cast<std::size_t>(i)], prec);
            iv_mul(term, term, pw);
        }
        iv_add(out, out, term);
    }
}

}  // namespace

HatValue numeric_hat_eval(const LocalMapFormula& formula, std::uint64_t p, long long f,
                          const std::vector<Rat>& s, int precision, const EvalOptions& opts) {
    if (static_cast<int>(s.size()) != formula.m())
        throw Error(ErrKind::ArityError, "expected " + std::to_string(formula.m()) + " s-values");
    YRational z = f >= 1 ? evaluate(formula, p, f, opts) : evaluate_star(formula, p, f, opts);

    bool all_int = std::all_of(s.begin(), s.end(), [](const Rat& v) { return is_integer(v); });
    HatValue out;
    if (all_int) {
        std::vector<Rat> yvals;
        for (const Rat& sv : s) {
            long e = -static_cast<long>(f) * static_cast<long>(sv.get_num().get_si());
            yvals.push_back(prime_power(p, e));
        }
        out.exact = true;
        out.exact_value = yrat_eval(z, yvals);  // PoleAt on a vanishing denominator
        out.approx = out.exact_value.get_d();
        out.error_bound = 0.0;
        out.printed = out.exact_value.get_str();
        return out;
    }

    mpfr_prec_t prec = std::max(precision, 64);
    std::vector<std::unique_ptr<Interval>> yvals;
    for (const Rat& sv : s) {
        auto iv = std::make_unique<Interval>(prec);
        Rat e = Rat(-static_cast<long>(f)) * sv;
        iv_pow_rat(*iv, p, e, prec);
        yvals.push_back(std::move(iv));
    }
    Interval num(prec), den(prec);
    eval_poly_interval(num, z.num, yvals, prec);
    eval_poly_interval(den, z.den, yvals, prec);
    // PoleAt when the denominator interval straddles zero
    if (mpfr_sgn(den.lo) <= 0 && mpfr_sgn(den.hi) >= 0)
        throw Error(ErrKind::PoleAt, "denominator not bounded away from zero at this precision");
    Interval quot(prec);
    {
        mpfr_t c[4];
        for (auto& x : c) mpfr_init2(x, prec);
        mpfr_div(c[0], num.lo, den.lo, MPFR_RNDD);
        mpfr_div(c[1], num.lo, den.hi, MPFR_RNDD);
        mpfr_div(c[2], num.hi, den.lo, MPFR_RNDD);
        mpfr_div(c[3], num.hi, den.hi, MPFR_RNDD);
        mpfr_min(quot.lo, c[0], c[1], MPFR_RNDD);
        mpfr_min(quot.lo, quot.lo, c[2], MPFR_RNDD);
        mpfr_min(quot.lo, quot.lo, c[3], MPFR_RNDD);
        mpfr_div(c[0], num.lo, den.lo, MPFR_RNDU);
        mpfr_div(c[1], num.lo, den.hi, MPFR_RNDU);
        mpfr_div(c[2], num.hi, den.lo, MPFR_RNDU);
        mpfr_div(c[3], num.hi, den.hi, MPFR_RNDU);
        mpfr_max(quot.hi, c[0], c[1], MPFR_RNDU);
        mpfr_max(quot.hi, quot.hi, c[2], MPFR_RNDU);
        mpfr_max(quot.hi, quot.hi, c[3], MPFR_RNDU);
        for (auto& x : c) mpfr_clear(x);
    }
    mpfr_t mid, rad;
    mpfr_init2(mid, prec);
    mpfr_init2(rad, prec);
    mpfr_add(mid, quot.lo, quot.hi, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    mpfr_sub(rad, quot.hi, quot.lo, MPFR_RNDU);
    mpfr_div_ui(rad, rad, 2, MPFR_RNDU);
    out.exact = false;
    out.approx = mpfr_get_d(mid, MPFR_RNDN);
    out.error_bound = mpfr_get_d(rad, MPFR_RNDU);
    {
        std::ostringstream os;
        char buf[64];
        mpfr_snprintf(buf, sizeof buf, "%.20Rg", mid);
        os << buf << " +- ";
        mpfr_snprintf(buf, sizeof buf, "%.3Rg", rad);
        os << buf;
        out.printed = os.str();
    }
    mpfr_clear(mid);
    mpfr_clear(rad);
    return out;
}

}  // namespace zk
