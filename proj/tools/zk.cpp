// zk: exact evaluation, verification, and oracle checks for local maps of
// Denef type. See README.md for the file formats and examples.
#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "zk/error.hpp"
#include "zk/format.hpp"
#include "zk/localmap.hpp"
#include "zk/oracles.hpp"
#include "zk/parse.hpp"
#include "zk/verify.hpp"

namespace {

using namespace zk;

struct GridFlags {
    std::string primes;
    long primes_below = 50;
    std::string frange = "1..3";
    std::uint64_t budget = 100'000'000;
};

std::vector<std::uint64_t> parse_prime_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto comma = csv.find(',', pos);
        std::string item = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(std::stoull(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<long long> parse_int_list(const std::string& csv) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto comma = csv.find(',', pos);
        std::string item = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(std::stoll(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

Grid make_grid(const GridFlags& flags) {
    Grid g;
    if (!flags.primes.empty()) {
        g.primes = parse_prime_list(flags.primes);
    } else {
        for (std::uint64_t p = 2; p < static_cast<std::uint64_t>(flags.primes_below); ++p)
            if (is_prime_u64(p)) g.primes.push_back(p);
    }
    auto dots = flags.frange.find("..");
    if (dots == std::string::npos) {
        for (long long f : parse_int_list(flags.frange)) g.f_range.push_back(static_cast<int>(f));
    } else {
        int lo = std::stoi(flags.frange.substr(0, dots));
        int hi = std::stoi(flags.frange.substr(dots + 2));
        for (int f = lo; f <= hi; ++f) g.f_range.push_back(f);
    }
    g.budget = flags.budget;
    return g;
}

LocalMapFormula load_formula(const std::string& file, const std::string& name) {
    if (!file.empty() && !name.empty())
        throw Error(ErrKind::ParseError, "give either --formula or --catalog, not both");
    if (!file.empty()) return parse_formula_file(file);
    if (!name.empty()) return catalog(name);
    throw Error(ErrKind::ParseError, "a formula is required (--formula FILE or --catalog NAME)");
}

int report_exit(const Report& report) {
    if (report.verdict == Report::Verdict::Fail) {
        const Witness& w = report.witnesses.front();
        std::cout << "FAIL at (p=" << w.p << ", f=" << w.f << ")\n";
        std::cout << "  lhs = " << w.lhs << "\n";
        std::cout << "  rhs = " << w.rhs << "\n";
        if (report.witnesses.size() > 1)
            std::cout << "  (" << report.witnesses.size() << " failing grid points)\n";
        return 1;
    }
    if (report.verdict == Report::Verdict::Inconclusive) {
        std::cout << "INCONCLUSIVE (empty grid)\n";
        return 1;
    }
    if (report.symbolic)
        std::cout << "PASS (symbolic certificate)\n";
    else
        std::cout << "PASS (grid only: " << report.notes << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for local maps of Denef type"};
    app.require_subcommand(1);

    // shared option storage
    std::string variety, formula_file, catalog_name, formula_file2, catalog_name2, w_expr;
    std::string algebra_file, exponents_csv, s_csv, yexp_csv, eps_str = "+1";
    std::vector<std::string> ideal_specs;
    std::uint64_t p = 0;
    long long f = 1, xexp = 0;
    int depth = 8, slack = 4, m = 1, kmax = 4, bigB = 20, precision = 128, nvars = 1;
    long long seed = 0;
    std::uint64_t q = 3;
    GridFlags grid;
    std::vector<long long> extends;
    bool strict = false, scaled = false;

    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--primes", grid.primes, "comma-separated grid primes");
        cmd->add_option("--primes-below", grid.primes_below, "use all primes below N (default 50)");
        cmd->add_option("--frange", grid.frange, "extension degrees, e.g. 1..3 or 1,2");
        cmd->add_option("--budget", grid.budget, "point-evaluation budget per counting call");
    };

    auto* c_count = app.add_subcommand("count", "count F_{p^f}-points of a variety");
    c_count->add_option("--variety", variety)->required();
    c_count->add_option("--p", p)->required();
    c_count->add_option("--f", f)->required();
    c_count->add_option("--budget", grid.budget);
    c_count->add_flag("--strict", strict, "reject negative signed totals");

    auto* c_weil = app.add_subcommand("weil", "fit the count recurrence of a variety at p");
    c_weil->add_option("--variety", variety)->required();
    c_weil->add_option("--p", p)->required();
    c_weil->add_option("--depth", depth, "number of counts to fit on");
    c_weil->add_option("--slack", slack, "withheld confirmation terms");
    c_weil->add_option("--budget", grid.budget);
    c_weil->add_option("--extend", extends, "also print the extended count at these f");

    auto* c_chi = app.add_subcommand("chi", "Euler characteristic via spectral count data");
    c_chi->add_option("--variety", variety)->required();
    c_chi->add_option("--primes", grid.primes);
    c_chi->add_option("--primes-below", grid.primes_below);
    c_chi->add_option("--depth", depth);
    c_chi->add_option("--budget", grid.budget);

    auto* c_eval = app.add_subcommand("eval", "evaluate a formula at (p, f), f >= 1");
    c_eval->add_option("--formula", formula_file);
    c_eval->add_option("--catalog", catalog_name);
    c_eval->add_option("--p", p)->required();
    c_eval->add_option("--f", f)->required();
    c_eval->add_option("--budget", grid.budget);

    auto* c_star = app.add_subcommand("evalstar", "evaluate the extension Z_* at (p, f), f != 0");
    c_star->add_option("--formula", formula_file);
    c_star->add_option("--catalog", catalog_name);
    c_star->add_option("--p", p)->required();
    c_star->add_option("--f", f)->required();
    c_star->add_option("--depth", depth);
    c_star->add_option("--budget", grid.budget);

    auto* c_hat = app.add_subcommand("hat", "evaluate hat Z(p, f) at s values");
    c_hat->add_option("--formula", formula_file);
    c_hat->add_option("--catalog", catalog_name);
    c_hat->add_option("--p", p)->required();
    c_hat->add_option("--f", f)->required();
    c_hat->add_option("--s", s_csv, "comma-separated rational s values, e.g. 2 or 1/2")->required();
    c_hat->add_option("--precision", precision, "working precision in bits");
    c_hat->add_option("--budget", grid.budget);

    auto* c_red = app.add_subcommand("red", "reduction of W modulo (X - 1)");
    c_red->add_option("--w", w_expr, "a W expression in the file grammar")->required();
    c_red->add_option("--m", m, "number of Y variables (default 1)");

    auto* c_topo = app.add_subcommand("topo", "topological zeta function of a formula");
    c_topo->add_option("--formula", formula_file);
    c_topo->add_option("--catalog", catalog_name);
    c_topo->add_option("--depth", depth);
    c_topo->add_option("--budget", grid.budget);

    auto* c_unif = app.add_subcommand("uniformize", "single-W representative when counts are uniform");
    c_unif->add_option("--formula", formula_file);
    c_unif->add_option("--catalog", catalog_name);
    c_unif->add_option("--primes", grid.primes);
    c_unif->add_option("--depth", depth);
    c_unif->add_option("--budget", grid.budget);

    auto* c_equiv = app.add_subcommand("equiv", "grid equivalence of two formulas");
    c_equiv->add_option("--formula", formula_file)->required();
    c_equiv->add_option("--formula2", formula_file2);
    c_equiv->add_option("--catalog2", catalog_name2);
    add_grid(c_equiv);

    auto* c_funeq = app.add_subcommand("funeq", "functional equation check");
    c_funeq->add_option("--formula", formula_file);
    c_funeq->add_option("--catalog", catalog_name);
    c_funeq->add_option("--eps", eps_str, "+1 or -1")->required();
    c_funeq->add_option("--xexp", xexp)->required();
    c_funeq->add_option("--yexp", yexp_csv, "comma-separated Y exponents")->required();
    add_grid(c_funeq);

    auto* c_sub = app.add_subcommand("oracle-subzeta", "subobject coefficients by HNF enumeration");
    c_sub->add_option("--algebra", algebra_file)->required();
    c_sub->add_option("--p", p)->required();
    c_sub->add_option("--kmax", kmax);
    c_sub->add_option("--budget", grid.budget);

    auto* c_igusa = app.add_subcommand("oracle-igusa", "monomial-ideal integral, truncated or exact");
    c_igusa->add_option("--exponents", exponents_csv, "principal case: exact rational function");
    c_igusa->add_flag("--scaled", scaled, "omit the (1 - X^-1) measure factors");
    c_igusa->add_option("--n", nvars, "number of variables (truncated mode)");
    c_igusa->add_option("--ideal", ideal_specs, "generators, e.g. 'x1^2*x2, x2^3' (repeatable)");
    c_igusa->add_option("--q", q, "residue field size");
    c_igusa->add_option("--s", s_csv, "comma-separated nonnegative integer exponents");
    c_igusa->add_option("--B", bigB, "truncation depth");

    auto* c_cat = app.add_subcommand("catalog", "print a named formula in file format");
    c_cat->add_option("--name", catalog_name)->required();

    for (auto* cmd : app.get_subcommands({}))
        cmd->add_option("--seed", seed, "seed for randomized tooling (reserved, default 0)");

    CLI11_PARSE(app, argc, argv);

    try {
        EvalOptions opts;
        opts.budget = grid.budget;
        opts.depth = depth;
        opts.strict = strict;

        if (app.got_subcommand(c_count)) {
            CountOptions copts{grid.budget, strict};
            std::cout << count_points(parse_constructible(variety), p,
                                      static_cast<unsigned>(f), copts)
                             .get_str()
                      << "\n";
        } else if (app.got_subcommand(c_weil)) {
            ConstructibleSet set = parse_constructible(variety);
            CountOptions copts{grid.budget, false};
            std::vector<Int> counts;
            unsigned dmax = feasible_depth(set, p, static_cast<unsigned>(depth), grid.budget);
            if (dmax < 1) throw Error(ErrKind::BudgetExceeded, "budget excludes even f = 1");
            for (unsigned ff = 1; ff <= dmax; ++ff)
                counts.push_back(count_points(set, p, ff, copts));
            WeilModel model = fit_recurrence(Int(static_cast<unsigned long>(p)), counts, slack);
            std::cout << "order " << model.rec.size() << "\n";
            std::cout << "rec";
            for (const auto& c : model.rec) std::cout << " " << format_rat(c);
            std::cout << "\n";
            auto spec = polynomial_count(model);
            std::cout << "spectral " << (spec ? format_spectral(*spec) : std::string("none")) << "\n";
            for (long long e : extends)
                std::cout << "N(" << e << ") = " << format_rat(extend_count(model, e)) << "\n";
        } else if (app.got_subcommand(c_chi)) {
            ConstructibleSet set = parse_constructible(variety);
            std::vector<std::uint64_t> primes;
            if (!grid.primes.empty()) primes = parse_prime_list(grid.primes);
            CountOptions copts{grid.budget, false};
            long long chi = euler_characteristic(set, primes, depth, copts);
            std::cout << "chi = " << chi << "\n";
        } else if (app.got_subcommand(c_eval)) {
            LocalMapFormula formula = load_formula(formula_file, catalog_name);
            std::cout << format_yrational(evaluate(formula, p, f, opts)) << "\n";
        } else if (app.got_subcommand(c_star)) {
            LocalMapFormula formula = load_formula(formula_file, catalog_name);
            std::cout << format_yrational(evaluate_star(formula, p, f, opts)) << "\n";
        } else if (app.got_subcommand(c_hat)) {
            LocalMapFormula formula = load_formula(formula_file, catalog_name);
            std::vector<Rat> svals;
            for (const auto& item : parse_int_list(s_csv)) svals.emplace_back(static_cast<long>(item));
            if (s_csv.find('/') != std::string::npos) {
                svals.clear();
                std::size_t pos = 0;
                while (pos < s_csv.size()) {
                    auto comma = s_csv.find(',', pos);
                    std::string item = s_csv.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos);
                    Rat v(item);
                    v.canonicalize();
                    svals.push_back(v);
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
            }
            HatValue v = numeric_hat_eval(formula, p, f, svals, precision, opts);
            std::cout << v.printed << "\n";
        } else if (app.got_subcommand(c_red)) {
            CycloRational w = parse_cyclo(w_expr, m);
            std::cout << format_rats(red(w)) << "\n";
        } else if (app.got_subcommand(c_topo)) {
            LocalMapFormula formula = load_formula(formula_file, catalog_name);
            std::cout << format_rats(topological(formula, opts)) << "\n";
        } else if (app.got_subcommand(c_unif)) {
            LocalMapFormula formula = load_formula(formula_file, catalog_name);
            std::vector<std::uint64_t> primes;
            if (!grid.primes.empty()) primes = parse_prime_list(grid.primes);
            UniformizeResult r = uniformize(formula, primes, depth, opts);
            if (r.rep) {
                std::cout << "W = " << format_cyclo(*r.rep) << "\n";
            } else {
                std::cout << "ABSENT (" << r.note << ")\n";
                if (r.witness)
                    std::cout << "witness primes (" << r.witness->first << ", " << r.witness->second
                              << ")\n";
            }
        } else if (app.got_subcommand(c_equiv)) {
            LocalMapFormula f1 = parse_formula_file(formula_file);
            LocalMapFormula f2 = load_formula(formula_file2, catalog_name2);
            return report_exit(equiv_check(f1, f2, make_grid(grid)));
        } else if (app.got_subcommand(c_funeq)) {
            LocalMapFormula formula = load_formula(formula_file, catalog_name);
            int eps = eps_str == "-1" ? -1 : +1;
            if (eps_str != "-1" && eps_str != "+1" && eps_str != "1")
                throw Error(ErrKind::ParseError, "--eps must be +1 or -1");
            return report_exit(
                funeq_check(formula, eps, xexp, parse_int_list(yexp_csv), make_grid(grid)));
        } else if (app.got_subcommand(c_sub)) {
            AlgebraPresentation alg = parse_algebra_file(algebra_file);
            CountOptions copts{grid.budget, false};
            auto coeffs = subzeta_coeffs(alg, p, kmax, copts);
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                std::cout << (i ? " " : "") << coeffs[i].get_str();
            std::cout << "\n";
        } else if (app.got_subcommand(c_igusa)) {
            if (!exponents_csv.empty()) {
                std::vector<unsigned> exps;
                for (long long e : parse_int_list(exponents_csv))
                    exps.push_back(static_cast<unsigned>(e));
                std::cout << format_cyclo(igusa_principal_exact(exps, !scaled)) << "\n";
            } else {
                MonomialIdealSet ms;
                ms.n = nvars;
                for (const auto& spec : ideal_specs) {
                    std::vector<std::vector<unsigned>> gens;
                    std::size_t pos = 0;
                    while (pos <= spec.size()) {
                        auto comma = spec.find(',', pos);
                        std::string gen = spec.substr(
                            pos, comma == std::string::npos ? std::string::npos : comma - pos);
                        // monomial grammar x1^2*x3
                        std::vector<unsigned> e(static_cast<std::size_t>(nvars), 0);
                        std::size_t i = 0;
                        while (i < gen.size()) {
                            while (i < gen.size() &&
                                   (std::isspace(static_cast<unsigned char>(gen[i])) || gen[i] == '*'))
                                ++i;
                            if (i >= gen.size()) break;
                            if (gen[i] != 'x')
                                throw Error(ErrKind::ParseError, "bad monomial: " + gen);
                            ++i;
                            std::size_t j = i;
                            while (j < gen.size() && std::isdigit(static_cast<unsigned char>(gen[j])))
                                ++j;
                            int var = std::stoi(gen.substr(i, j - i));
                            if (var < 1 || var > nvars)
                                throw Error(ErrKind::ParseError, "variable out of range: " + gen);
                            i = j;
                            unsigned pw = 1;
                            if (i < gen.size() && gen[i] == '^') {
                                ++i;
                                j = i;
                                while (j < gen.size() &&
                                       std::isdigit(static_cast<unsigned char>(gen[j])))
                                    ++j;
                                pw = static_cast<unsigned>(std::stoul(gen.substr(i, j - i)));
                                i = j;
                            }
                            e[static_cast<std::size_t>(var - 1)] += pw;
                        }
                        gens.push_back(std::move(e));
                        if (comma == std::string::npos) break;
                        pos = comma + 1;
                    }
                    ms.ideals.push_back(std::move(gens));
                }
                if (ms.ideals.empty())
                    throw Error(ErrKind::ParseError, "give --exponents or at least one --ideal");
                std::vector<unsigned> svals;
                for (long long v : parse_int_list(s_csv)) svals.push_back(static_cast<unsigned>(v));
                IgusaValue v = igusa_truncated(ms, Int(static_cast<unsigned long>(q)), svals, bigB);
                std::cout << "value = " << format_rat(v.value) << "\n";
                std::cout << "tail_bound = " << format_rat(v.tail_bound) << "\n";
            }
        } else if (app.got_subcommand(c_cat)) {
            std::cout << format_formula_file(catalog(catalog_name));
        }
        return 0;
    } catch (const NonUniformCountError& e) {
        std::cout << "NON-UNIFORM: witness primes (" << e.p1() << ", " << e.p2() << ")\n";
        return 1;
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrKind::NotPolynomialCount:
                std::cout << "NOT POLYNOMIAL-COUNT: " << e.what() << "\n";
                return 1;
            case ErrKind::NotInM:
                std::cout << "NOT IN M: " << e.what() << "\n";
                return 1;
            default:
                std::cerr << "error: " << e.what() << "\n";
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
