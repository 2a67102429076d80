#ifndef ZK_VERIFY_HPP
#define ZK_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zk/localmap.hpp"

namespace zk {

// Finite stand-in for a density-1 set of places: primes x extension degrees.
struct Grid {
    std::vector<std::uint64_t> primes;
    std::vector<int> f_range;
    std::uint64_t budget = 100'000'000;
};

// primes below 50, f in {1, 2, 3}
Grid default_grid();

struct Witness {
    std::uint64_t p = 0;
    long long f = 0;
    std::string lhs, rhs;
};

// A grid pass is a test-level pass, not a proof; a symbolic certificate is an
// identity of uniform representatives and upgrades the epistemic status.
struct Report {
    enum class Verdict { Pass, Fail, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    bool symbolic = false;
    std::vector<Witness> witnesses;  // sorted by (p, f); first is least
    std::string notes;

    bool passed() const { return verdict == Verdict::Pass; }
};

// evaluate(F1) == evaluate(F2) at every grid point; symbolic certificate via
// uniformize + representative equality when both sides uniformize.
Report equiv_check(const LocalMapFormula& f1, const LocalMapFormula& f2, const Grid& grid);

// evaluate(F) == W(p^f, Y) at every grid point; symbolic certificate via
// uniformize(F) == W.
Report uniform_check(const LocalMapFormula& formula, const CycloRational& w, const Grid& grid);

// evaluate_star(F, p, -f) == eps * p^(xexp f) * Y^yexp * evaluate(F, p, f)
// over the grid; symbolically, invert_vars(W) == eps X^xexp Y^yexp W for a
// uniform representative W.
Report funeq_check(const LocalMapFormula& formula, int eps, long long xexp,
                   std::vector<long long> yexp, const Grid& grid);

}  // namespace zk

#endif
