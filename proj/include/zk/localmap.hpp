#ifndef ZK_LOCALMAP_HPP
#define ZK_LOCALMAP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zk/geom.hpp"
#include "zk/mring.hpp"
#include "zk/ratfun.hpp"
#include "zk/weil.hpp"

namespace zk {

struct FormulaTerm {
    ConstructibleSet set;
    CycloRational w;
};

// Finite sum of |V_i(F_{p^f})| * W_i(p^f, Y) terms with an excluded prime
// set; the value object all evaluation and verification routines consume.
class LocalMapFormula {
  public:
    LocalMapFormula(std::vector<FormulaTerm> terms, int m, std::set<std::uint64_t> excluded = {});

    int m() const { return m_; }
    const std::vector<FormulaTerm>& terms() const { return terms_; }
    const std::set<std::uint64_t>& excluded_primes() const { return excluded_; }

    // Pointwise sum: concatenated terms, union of excluded primes.
    friend LocalMapFormula formula_sum(const LocalMapFormula& a, const LocalMapFormula& b);

    // Cached count model for (term, p); thread-safe memo table.
    WeilModel count_model(std::size_t term, std::uint64_t p, int depth, std::uint64_t budget) const;

  private:
    int m_;
    std::vector<FormulaTerm> terms_;
    std::set<std::uint64_t> excluded_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<std::size_t, std::uint64_t>, std::shared_ptr<const WeilModel>> cache_;
};

struct EvalOptions {
    std::uint64_t budget = 100'000'000;
    int depth = 8;  // counts per recurrence fit, clamped by the budget
    bool strict = false;
};

// Z(p, f) for f >= 1: sum of count * W(p^f, Y), exact.
YRational evaluate(const LocalMapFormula& formula, std::uint64_t p, long long f,
                   const EvalOptions& opts = {});

// Z_*(p, f) for f != 0: counts extended through the fitted recurrences and
// Y replaced by Y^sign(f). Agrees with evaluate for f >= 1.
YRational evaluate_star(const LocalMapFormula& formula, std::uint64_t p, long long f,
                        const EvalOptions& opts = {});

// sum chi(V_i) * red(W_i). Errors: NotInM (naming the term), plus whatever
// the Euler characteristic inference raises.
RatS topological(const LocalMapFormula& formula, const EvalOptions& opts = {});

struct UniformizeResult {
    std::optional<CycloRational> rep;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;  // disagreeing primes
    std::string note;
};

// Replaces each count with its count polynomial P_i(X) when the spectral
// data agrees at every sample prime, returning sum P_i(X) W_i(X, Y).
UniformizeResult uniformize(const LocalMapFormula& formula, std::vector<std::uint64_t> primes = {},
                            int depth = 8, const EvalOptions& opts = {});

struct HatValue {
    bool exact = false;
    Rat exact_value;       // set when exact
    double approx = 0.0;   // midpoint
    double error_bound = 0.0;
    std::string printed;   // deterministic rendering
};

// hat Z(p, f)(s) = Z(p, f) at Y_j = p^(-f s_j). Integer s evaluates exactly;
// otherwise interval arithmetic at `precision` bits gives a rigorous bound.
HatValue numeric_hat_eval(const LocalMapFormula& formula, std::uint64_t p, long long f,
                          const std::vector<Rat>& s, int precision = 128,
                          const EvalOptions& opts = {});

}  // namespace zk

#endif
