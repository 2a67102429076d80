#include "zk/weil.hpp"

#include <algorithm>
#include <string>

#include "zk/error.hpp"

namespace zk {

std::vector<Rat> berlekamp_massey(const std::vector<Rat>& a) {
    const std::size_t n = a.size();
    std::vector<Rat> C{Rat(1)}, B{Rat(1)};
    std::size_t L = 0, m = 1;
    Rat b(1);
    for (std::size_t i = 0; i < n; ++i) {
        Rat d(0);
        for (std::size_t j = 0; j <= L && j < C.size(); ++j) d += C[j] * a[i - j];
        if (d == 0) {
            ++m;
        } else if (2 * L <= i) {
            std::vector<Rat> T = C;
            Rat coef = d / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
            for (std::size_t j = 0; j < B.size(); ++j) C[j + m] -= coef * B[j];
            L = i + 1 - L;
            B = T;
            b = d;
            m = 1;
        } else {
            Rat coef = d / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
            for (std::size_t j = 0; j < B.size(); ++j) C[j + m] -= coef * B[j];
            ++m;
        }
    }
    // C(x) = 1 - c_1 x - ... - c_L x^L
    std::vector<Rat> rec(L, Rat(0));
    for (std::size_t j = 1; j <= L && j < C.size(); ++j) rec[j - 1] = -C[j];
    return rec;
}

namespace {

bool reproduces(const std::vector<Rat>& counts, const std::vector<Rat>& rec, std::size_t from) {
    std::size_t u = rec.size();
    for (std::size_t i = std::max(from, u); i < counts.size(); ++i) {
        Rat pred(0);
        for (std::size_t j = 0; j < u; ++j) pred += rec[j] * counts[i - 1 - j];
        if (pred != counts[i]) return false;
    }
    return true;
}

WeilModel finish_model(const Int& q, const std::vector<Rat>& counts, std::vector<Rat> rec) {
    if (!rec.empty() && rec.back() == 0)
        throw Error(ErrKind::ZeroEigenvalue, "minimal recurrence has c_u = 0");
    if (!reproduces(counts, rec, 0))
        throw Error(ErrKind::Unstable, "recurrence does not reproduce the supplied counts");
    WeilModel model;
    model.q = q;
    model.counts = counts;
    model.rec = std::move(rec);
    return model;
}

}  // namespace

WeilModel fit_recurrence_rat(const Int& q, const std::vector<Rat>& counts, int slack) {
    if (slack < 0) slack = 0;
    if (counts.size() <= static_cast<std::size_t>(slack))
        throw Error(ErrKind::Unstable, "no terms left after withholding slack");
    std::vector<Rat> prefix(counts.begin(), counts.end() - slack);
    std::vector<Rat> rec = berlekamp_massey(prefix);
    if (!rec.empty() && rec.back() == 0)
        throw Error(ErrKind::ZeroEigenvalue, "minimal recurrence has c_u = 0");
    if (!reproduces(counts, rec, prefix.size()))
        throw Error(ErrKind::Unstable,
                    "recurrence fitted on the prefix fails to predict withheld terms");
    return finish_model(q, counts, std::move(rec));
}

WeilModel fit_recurrence(const Int& q, const std::vector<Int>& counts, int slack) {
    std::vector<Rat> rc;
    rc.reserve(counts.size());
    for (const auto& c : counts) rc.emplace_back(c);
    return fit_recurrence_rat(q, rc, slack);
}

WeilModel fit_recurrence_adaptive(const Int& q, const std::vector<Rat>& counts) {
    std::vector<Rat> rec = berlekamp_massey(counts);
    if (2 * rec.size() > counts.size())
        throw Error(ErrKind::Unstable, "counts do not determine the minimal recurrence (order " +
                                           std::to_string(rec.size()) + " from " +
                                           std::to_string(counts.size()) + " terms)");
    return finish_model(q, counts, std::move(rec));
}

WeilModel fit_set_model(const ConstructibleSet& set, std::uint64_t p, int depth,
                        std::uint64_t budget, int confirm) {
    unsigned dmax = feasible_depth(set, p, static_cast<unsigned>(depth), budget);
    if (dmax < 1)
        throw Error(ErrKind::BudgetExceeded,
                    "cannot count even f = 1 at p = " + std::to_string(p) + " within budget");
    CountOptions copts;
    copts.budget = budget;
    std::vector<Rat> counts;
    for (unsigned f = 1; f <= dmax; ++f) {
        counts.emplace_back(count_points(set, p, f, copts));
        if (counts.size() >= 2) {
            std::vector<Rat> rec = berlekamp_massey(counts);
            if (counts.size() >= 2 * rec.size() + static_cast<std::size_t>(confirm)) break;
        }
    }
    return fit_recurrence_adaptive(Int(static_cast<unsigned long>(p)), counts);
}

Rat extend_count(const WeilModel& model, long long f) {
    const std::size_t u = model.rec.size();
    if (u == 0) return Rat(0);  // the zero sequence
    if (f >= 1 && static_cast<std::size_t>(f) <= model.counts.size())
        return model.counts[static_cast<std::size_t>(f) - 1];
    if (model.counts.size() < u) throw Error(ErrKind::Unstable, "model shorter than its order");

    if (f > 0) {
        std::vector<Rat> win(model.counts.end() - u, model.counts.end());
        long long t = static_cast<long long>(model.counts.size());
        while (t < f) {
            Rat next(0);
            for (std::size_t j = 0; j < u; ++j) next += model.rec[j] * win[u - 1 - j];
            win.erase(win.begin());
            win.push_back(next);
            ++t;
        }
        return win.back();
    }

    if (model.rec.back() == 0)
        throw Error(ErrKind::ZeroEigenvalue, "backward extension requires c_u != 0");
    // window N_t .. N_{t+u-1}, stepping t down to f
    std::vector<Rat> win(model.counts.begin(), model.counts.begin() + u);
    long long t = 1;
    while (t > f) {
        // N_{t-1} = (N_{t+u-1} - sum_{j<u} c_j N_{t+u-1-j}) / c_u
        Rat acc = win[u - 1];
        for (std::size_t j = 0; j + 1 < u; ++j) acc -= model.rec[j] * win[u - 2 - j];
        Rat prev = acc / model.rec[u - 1];
        win.pop_back();
        win.insert(win.begin(), prev);
        --t;
    }
    return win[0];
}

namespace {

// Divides P (leading coefficient first) by (T - r); returns the remainder
// and replaces P by the quotient.
Rat synthetic_divide(std::vector<Rat>& P, const Rat& r) {
    std::vector<Rat> Q(P.size() - 1);
    Rat acc(0);
    for (std::size_t i = 0; i < P.size(); ++i) {
        acc = (i == 0) ? P[0] : acc * r + P[i];
        if (i < Q.size()) Q[i] = acc;
    }
    Rat rem = acc;
    P = std::move(Q);
    return rem;
}

// Solves sum_i x_i v_i^{f+1} = rhs_f, f = 0..u-1, exactly.
std::optional<std::vector<Rat>> solve_power_system(const std::vector<Rat>& roots,
                                                   const std::vector<Rat>& rhs) {
    const std::size_t u = roots.size();
    std::vector<std::vector<Rat>> M(u, std::vector<Rat>(u + 1, Rat(0)));
    for (std::size_t f = 0; f < u; ++f) {
        for (std::size_t i = 0; i < u; ++i) M[f][i] = rat_pow(roots[i], static_cast<long>(f + 1));
        M[f][u] = rhs[f];
    }
    for (std::size_t col = 0; col < u; ++col) {
        std::size_t piv = col;
        while (piv < u && M[piv][col] == 0) ++piv;
        if (piv == u) return std::nullopt;
        std::swap(M[piv], M[col]);
        for (std::size_t r = 0; r < u; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rat factor = M[r][col] / M[col][col];
            for (std::size_t c = col; c <= u; ++c) M[r][c] -= factor * M[col][c];
        }
    }
    std::vector<Rat> x(u);
    for (std::size_t i = 0; i < u; ++i) x[i] = M[i][u] / M[i][i];
    return x;
}

}  // namespace

std::optional<std::vector<SpectralTerm>> polynomial_count(const WeilModel& model) {
    const std::size_t u = model.rec.size();
    if (u == 0) return std::vector<SpectralTerm>{};  // zero sequence

    // characteristic polynomial T^u - c_1 T^{u-1} - ... - c_u
    std::vector<Rat> P(u + 1);
    P[0] = Rat(1);
    for (std::size_t i = 0; i < u; ++i) P[i + 1] = -model.rec[i];

    // Cauchy bound on root magnitude: 1 + max |c_i|
    Rat bound(1);
    for (const auto& c : model.rec) {
        Rat a = abs(c);
        if (a > bound) bound = a;
    }
    bound += 1;

    Rat qr(model.q);
    std::vector<unsigned> js;
    for (unsigned j = 0; P.size() > 1; ++j) {
        Rat root = rat_pow(qr, static_cast<long>(j));
        if (root > bound) break;
        for (;;) {
            std::vector<Rat> trial = P;
            if (synthetic_divide(trial, root) != 0) break;
            js.push_back(j);
            P = trial;
            if (P.size() == 1) break;
        }
        if (model.q <= 1) break;  // q^j does not grow
    }
    if (P.size() != 1) return std::nullopt;  // leftover roots are not powers of q
    std::sort(js.begin(), js.end());
    if (std::adjacent_find(js.begin(), js.end()) != js.end()) return std::nullopt;

    std::vector<Rat> roots;
    for (unsigned j : js) roots.push_back(rat_pow(qr, static_cast<long>(j)));
    std::vector<Rat> rhs(model.counts.begin(), model.counts.begin() + u);
    auto sol = solve_power_system(roots, rhs);
    if (!sol) return std::nullopt;

    std::vector<SpectralTerm> spec;
    for (std::size_t i = 0; i < js.size(); ++i) {
        const Rat& m = (*sol)[i];
        if (!is_integer(m) || m == 0) return std::nullopt;
        spec.push_back(SpectralTerm{m.get_num(), js[i]});
    }
    for (std::size_t f = 1; f <= model.counts.size(); ++f) {
        Rat v(0);
        for (const auto& t : spec)
            v += Rat(t.m) * rat_pow(qr, static_cast<long>(t.j) * static_cast<long>(f));
        if (v != model.counts[f - 1]) return std::nullopt;
    }
    std::sort(spec.begin(), spec.end(),
              [](const SpectralTerm& a, const SpectralTerm& b) { return a.j > b.j; });
    return spec;
}

std::vector<std::uint64_t> default_sample_primes(const ConstructibleSet& set, int howmany) {
    std::vector<std::uint64_t> bad = awkward_primes(set);
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 2; static_cast<int>(out.size()) < howmany; ++c) {
        if (!is_prime_u64(c)) continue;
        if (std::find(bad.begin(), bad.end(), c) != bad.end()) continue;
        out.push_back(c);
    }
    return out;
}

long long euler_characteristic(const ConstructibleSet& set, std::vector<std::uint64_t> primes,
                               int depth, const CountOptions& opts) {
    if (set.user_chi) return *set.user_chi;
    if (primes.empty()) primes = default_sample_primes(set);
    std::sort(primes.begin(), primes.end());

    // Budget-limited primes whose counts cannot pin the recurrence down are
    // left unknown; they only matter if no disagreement surfaces first.
    std::vector<std::pair<std::uint64_t, std::optional<std::vector<SpectralTerm>>>> known;
    std::vector<std::uint64_t> unknown;
    for (std::uint64_t p : primes) {
        try {
            WeilModel model = fit_set_model(set, p, depth, opts.budget);
            known.emplace_back(p, polynomial_count(model));
        } catch (const Error& e) {
            if (e.kind() != ErrKind::Unstable) throw;
            unknown.push_back(p);
        }
    }
    for (std::size_t i = 1; i < known.size(); ++i) {
        if (!(known[i].second == known[0].second))
            throw NonUniformCountError(known[0].first, known[i].first,
                                       "spectral count data differs between p = " +
                                           std::to_string(known[0].first) + " and p = " +
                                           std::to_string(known[i].first));
    }
    if (!unknown.empty())
        throw Error(ErrKind::Unstable, "insufficient counts at p = " + std::to_string(unknown[0]) +
                                           " within budget to confirm the recurrence");
    if (known.empty()) throw Error(ErrKind::Unstable, "no sample primes");
    if (!known[0].second)
        throw Error(ErrKind::NotPolynomialCount,
                    "counts are not a polynomial in q at the sampled primes");
    return spectral_sum(*known[0].second);
}

}  // namespace zk
