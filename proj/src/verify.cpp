#include "zk/verify.hpp"

#include <algorithm>

#include "zk/format.hpp"

namespace zk {

Grid default_grid() {
    Grid g;
    for (std::uint64_t p = 2; p < 50; ++p)
        if (is_prime_u64(p)) g.primes.push_back(p);
    g.f_range = {1, 2, 3};
    return g;
}

namespace {

std::vector<std::uint64_t> usable_primes(const Grid& grid, const LocalMapFormula& f1,
                                         const LocalMapFormula* f2 = nullptr) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p : grid.primes) {
        if (f1.excluded_primes().count(p)) continue;
        if (f2 && f2->excluded_primes().count(p)) continue;
        ps.push_back(p);
    }
    std::sort(ps.begin(), ps.end());
    return ps;
}

Report finish(Report report, bool grid_nonempty) {
    if (!report.witnesses.empty())
        report.verdict = Report::Verdict::Fail;
    else if (grid_nonempty)
        report.verdict = Report::Verdict::Pass;
    else
        report.verdict = Report::Verdict::Inconclusive;
    return report;
}

void append_note(Report& report, const std::string& note) {
    if (!report.notes.empty()) report.notes += "; ";
    report.notes += note;
}

}  // namespace

Report equiv_check(const LocalMapFormula& f1, const LocalMapFormula& f2, const Grid& grid) {
    Report report;
    EvalOptions opts;
    opts.budget = grid.budget;
    auto ps = usable_primes(grid, f1, &f2);
    std::vector<int> fs = grid.f_range;
    std::sort(fs.begin(), fs.end());
    bool any = false;
    for (std::uint64_t p : ps) {
        for (int f : fs) {
            any = true;
            YRational a = evaluate(f1, p, f, opts);
            YRational b = evaluate(f2, p, f, opts);
            if (!yrat_equal(a, b))
                report.witnesses.push_back(Witness{p, f, format_yrational(a), format_yrational(b)});
        }
    }
    UniformizeResult u1 = uniformize(f1, ps, 8, opts);
    UniformizeResult u2 = uniformize(f2, ps, 8, opts);
    if (u1.rep && u2.rep) {
        report.symbolic = cyclo_equal(*u1.rep, *u2.rep);
        append_note(report, report.symbolic ? "symbolic certificate: representatives agree"
                                            : "uniform representatives differ");
    } else {
        append_note(report, "no symbolic certificate: " + (u1.rep ? u2.note : u1.note));
    }
    return finish(std::move(report), any);
}

Report uniform_check(const LocalMapFormula& formula, const CycloRational& w, const Grid& grid) {
    Report report;
    EvalOptions opts;
    opts.budget = grid.budget;
    auto ps = usable_primes(grid, formula);
    std::vector<int> fs = grid.f_range;
    std::sort(fs.begin(), fs.end());
    bool any = false;
    for (std::uint64_t p : ps) {
        for (int f : fs) {
            any = true;
            YRational a = evaluate(formula, p, f, opts);
            YRational b = substitute_pf(w, p, f);
            if (!yrat_equal(a, b))
                report.witnesses.push_back(Witness{p, f, format_yrational(a), format_yrational(b)});
        }
    }
    UniformizeResult u = uniformize(formula, ps, 8, opts);
    if (u.rep) {
        report.symbolic = cyclo_equal(*u.rep, w);
        append_note(report, report.symbolic ? "symbolic certificate: representative equals W"
                                            : "uniform representative differs from W");
    } else {
        append_note(report, "no symbolic certificate: " + u.note);
    }
    return finish(std::move(report), any);
}

Report funeq_check(const LocalMapFormula& formula, int eps, long long xexp,
                   std::vector<long long> yexp, const Grid& grid) {
    Report report;
    EvalOptions opts;
    opts.budget = grid.budget;
    if (static_cast<int>(yexp.size()) < formula.m()) yexp.resize(formula.m(), 0);
    std::vector<int> yexp_i(yexp.begin(), yexp.end());

    auto ps = usable_primes(grid, formula);
    std::vector<int> fs = grid.f_range;
    std::sort(fs.begin(), fs.end());
    bool any = false;
    for (std::uint64_t p : ps) {
        for (int f : fs) {
            any = true;
            YRational lhs = evaluate_star(formula, p, -f, opts);
            Rat scale = Rat(eps) * prime_power(p, static_cast<long>(xexp) * f);
            YRational rhs = yrat_scale(evaluate(formula, p, f, opts), scale, yexp_i);
            if (!yrat_equal(lhs, rhs))
                report.witnesses.push_back(
                    Witness{p, f, format_yrational(lhs), format_yrational(rhs)});
        }
    }
    UniformizeResult u = uniformize(formula, ps, 8, opts);
    if (u.rep) {
        CycloRational lhs = u.rep->invert_vars();
        CycloRational rhs = u.rep->scale(Rat(eps), static_cast<int>(xexp), yexp_i);
        report.symbolic = cyclo_equal(lhs, rhs);
        append_note(report, report.symbolic
                                ? "symbolic certificate: invert_vars identity holds"
                                : "invert_vars identity fails for the representative");
    } else {
        append_note(report, "no symbolic certificate: " + u.note);
    }
    return finish(std::move(report), any);
}

}  // namespace zk
