// lincsp: command-line front end for the lincsp library.
//
// Exit codes: 0 success / satisfiable, 10 unsatisfiable, 20 budget exhausted,
// 2 usage error (including out-of-range parameters), 1 any other error (unreadable input, failed precondition).

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lincsp/bounds.hpp"
#include "lincsp/csp.hpp"
#include "lincsp/error.hpp"
#include "lincsp/experiment.hpp"
#include "lincsp/generator.hpp"
#include "lincsp/io.hpp"
#include "lincsp/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsat = 10;
constexpr int kExitBudget = 20;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw lincsp::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw lincsp::Error("cannot write " + path);
    out << text;
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t value)
{
    if (flag->count() > 0)
        return value;
    if (const char* env = std::getenv("LINCSP_SEED")) {
        try {
            return std::stoull(env);
        }
        catch (const std::exception&) {
            throw CLI::ValidationError("LINCSP_SEED", std::string("not an unsigned integer: ") + env);
        }
    }
    return 0;
}

std::string format_assignment(const lincsp::Assignment& alpha)
{
    std::ostringstream out;
    out << 'v';
    for (std::size_t i = 0; i < alpha.num_vars(); ++i)
        out << ' ' << (i + 1) << ':' << alpha.values()[i];
    return out.str();
}

int report_outcome(const lincsp::SolveOutcome& outcome, const std::string& method)
{
    std::cout << "c method " << method << '\n';
    if (outcome.resamples > 0)
        std::cout << "c resamples " << outcome.resamples << '\n';
    if (outcome.nodes > 0)
        std::cout << "c nodes " << outcome.nodes << '\n';
    switch (outcome.status) {
    case lincsp::SolveStatus::Satisfied:
        std::cout << "s SATISFIABLE\n" << format_assignment(*outcome.assignment) << '\n';
        return kExitOk;
    case lincsp::SolveStatus::Unsatisfiable:
        std::cout << "s UNSATISFIABLE\n";
        return kExitUnsat;
    case lincsp::SolveStatus::BudgetExceeded:
        std::cout << "s UNKNOWN\n";
        return kExitBudget;
    }
    return kExitError;
}

void print_table(const std::vector<std::pair<std::string, std::string>>& rows)
{
    std::size_t width = 0;
    for (const auto& [key, _] : rows)
        width = std::max(width, key.size());
    for (const auto& [key, value] : rows)
        std::cout << std::left << std::setw(static_cast<int>(width + 2)) << key << value << '\n';
    std::cout << '\n';
    for (const auto& [key, value] : rows) {
        auto v = value;
        if (auto sp = v.find(' '); sp != std::string::npos)
            v.resize(sp);
        std::cout << key << '=' << v << '\n';
    }
}

std::string num(double x)
{
    std::ostringstream out;
    out << std::setprecision(10) << x;
    return out.str();
}

std::string num(const lincsp::BigInt& x)
{
    return x.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Solve, generate and bound l-disjoint (k,d)-CSPs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a verified unsatisfiable l-disjoint instance");
    std::size_t gk = 2, gl = 2, gtrials = 200;
    std::uint32_t gd = 2;
    std::size_t gn = 0, gm = 0;
    std::uint64_t gseed = 0;
    std::string gverify, gout;
    double govershoot = 1.0;
    gen->add_option("-k", gk, "Constraint arity")->check(CLI::PositiveNumber);
    gen->add_option("-d", gd, "Domain size")->check(CLI::Range(2u, 1u << 30));
    gen->add_option("-l", gl, "Disjointness parameter ell")->check(CLI::Range(2, 1 << 20));
    auto* gn_opt = gen->add_option("--n", gn, "Vertex count (default: chosen from k, d, ell)");
    auto* gm_opt = gen->add_option("--m", gm, "Constraint count (default: ceil(overshoot * ln(d) n d^k))");
    auto* gseed_opt = gen->add_option("--seed", gseed, "Master seed (default: $LINCSP_SEED or 0)");
    gen->add_option("--trials", gtrials, "Retry budget")->check(CLI::PositiveNumber);
    gen->add_option("--verify", gverify, "Verification mode")->check(CLI::IsMember({"oracle", "two-sat", "none"}));
    gen->add_option("--overshoot", govershoot, "Multiplier on the required constraint count")
        ->check(CLI::PositiveNumber);
    gen->add_option("--out", gout, "Output file (default: stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "Decide or solve an instance");
    std::string smethod = "auto", sfile;
    std::uint64_t sseed = 0;
    std::uint64_t sbudget = 0;
    std::size_t sl = 2;
    solve->add_option("--method", smethod, "Solver")
        ->check(CLI::IsMember({"resample", "oracle", "sparse-frequent", "auto"}));
    auto* sseed_opt = solve->add_option("--seed", sseed, "Seed for randomized methods");
    auto* sbudget_opt = solve->add_option("--budget", sbudget, "Resample budget, or node budget for the oracle");
    solve->add_option("-l", sl, "ell for sparse-frequent")->check(CLI::Range(2, 1 << 20));
    solve->add_option("FILE", sfile, "Instance (.csp or DIMACS)")->required();

    // check
    auto* check = app.add_subcommand("check", "Check l-disjointness");
    std::size_t cl = 2;
    std::string cfile;
    check->add_option("-l", cl, "ell")->required()->check(CLI::Range(2, 1 << 20));
    check->add_option("FILE", cfile, "Instance")->required();

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Evaluate the bound formulas");
    std::size_t bk = 2, bl = 2;
    std::uint32_t bd = 2;
    bool blinear = false, bpsz = false;
    bounds->add_option("-k", bk, "Arity")->required()->check(CLI::PositiveNumber);
    bounds->add_option("-d", bd, "Domain size")->check(CLI::Range(2u, 1u << 30));
    bounds->add_option("-l", bl, "ell")->check(CLI::Range(2, 1 << 20));
    bounds->add_flag("--linear", blinear, "Also print the linear k-CNF bounds");
    bounds->add_flag("--psz", bpsz, "Also print the size of the recursive linear construction");

    // convert
    auto* convert = app.add_subcommand("convert", "Convert between the csp and DIMACS formats");
    std::string cto, cin_file, cout_file;
    convert->add_option("--to", cto, "Target format")->required()->check(CLI::IsMember({"dimacs", "csp"}));
    convert->add_option("--out", cout_file, "Output file (default: stdout)");
    convert->add_option("FILE", cin_file, "Input instance")->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Packaged experiments");
    experiment->require_subcommand(1);
    auto* min2cnf = experiment->add_subcommand("min2cnf", "Decide all small linear 2-CNF formulas");
    std::size_t max_clauses = 5;
    min2cnf->add_option("--max-clauses", max_clauses, "Largest clause count")->check(CLI::Range(0, 6));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            lincsp::GenParams p;
            p.k = gk;
            p.d = gd;
            p.ell = gl;
            if (gn_opt->count() > 0)
                p.n = gn;
            if (gm_opt->count() > 0)
                p.m = gm;
            p.seed = resolve_seed(gseed_opt, gseed);
            p.trials = gtrials;
            p.overshoot = govershoot;
            if (gverify.empty())
                gverify = (gd == 2 && gk <= 2) ? "two-sat" : "oracle";
            p.verify = gverify == "none"     ? lincsp::VerifyMode::None
                       : gverify == "oracle" ? lincsp::VerifyMode::Oracle
                                             : lincsp::VerifyMode::TwoSat;
            try {
                auto r = lincsp::search_unsat(p);
                std::vector<std::string> comments = {
                    "k=" + std::to_string(gk) + " d=" + std::to_string(gd) + " ell=" + std::to_string(gl) +
                        " n=" + std::to_string(r.n) + " m=" + std::to_string(r.m),
                    "seed=" + std::to_string(p.seed) + " trials_used=" + std::to_string(r.trials_used) +
                        " verify=" + gverify,
                    "expected_sat_count=" + num(r.expected.exact) + " ln=" + num(r.expected.log_exact),
                    std::string("verified_unsat=") + (r.verified_unsat ? "yes" : "no"),
                };
                write_output(gout, lincsp::serialize(r.instance, comments));
                std::cerr << "c generated n=" << r.n << " m=" << r.m << " in " << r.trials_used << " trial(s)"
                          << (r.verified_unsat ? ", verified unsatisfiable" : ", unverified") << '\n';
                return kExitOk;
            }
            catch (const lincsp::SearchExhaustedError& e) {
                std::cerr << "error: " << e.what() << '\n';
                for (const auto& t : e.trials())
                    std::cerr << "c trial " << t.trial << " seed " << t.seed << ' '
                              << (t.verdict ? lincsp::to_string(*t.verdict) : "UNVERIFIED") << '\n';
                return kExitBudget;
            }
        }

        if (solve->parsed()) {
            const auto csp = lincsp::parse_any(read_file(sfile));
            const auto seed = resolve_seed(sseed_opt, sseed);
            auto method = smethod;
            if (method == "auto") {
                if (csp.d() == 2 && csp.k() <= 2)
                    method = "oracle";
                else if (lincsp::lll_condition(csp).holds)
                    method = "resample";
                else if (static_cast<double>(csp.num_vars()) * std::log2(static_cast<double>(csp.d())) <= 30)
                    method = "oracle";
                else
                    method = "resample";
            }
            const bool has_budget = sbudget_opt->count() > 0;
            if (method == "oracle") {
                lincsp::OracleOptions opts;
                if (has_budget)
                    opts.node_budget = sbudget;
                return report_outcome(lincsp::oracle_solve(csp, opts), method);
            }
            const auto budget = has_budget ? sbudget : lincsp::kDefaultResampleBudget;
            if (method == "resample")
                return report_outcome(lincsp::resample_solve(csp, seed, budget), method);
            return report_outcome(lincsp::solve_sparse_frequent(csp, sl, seed, budget), method);
        }

        if (check->parsed()) {
            const auto csp = lincsp::parse_any(read_file(cfile));
            const auto r = lincsp::check_l_disjoint(csp, cl);
            const auto frequent = lincsp::frequent_variables(csp, cl);
            std::cout << "c vars " << csp.num_vars() << " constraints " << csp.size() << " k " << csp.k() << " d "
                      << csp.d() << '\n';
            std::cout << "c frequent " << frequent.size() << " (threshold "
                      << num(lincsp::frequent_threshold(csp.k(), csp.d(), cl)) << ", admissible "
                      << num(lincsp::max_frequent(csp.k(), csp.d(), cl)) << ")\n";
            if (r.ok) {
                std::cout << "disjoint " << cl << " yes\n";
                return kExitOk;
            }
            std::cout << "disjoint " << cl << " no\n"
                      << "witness " << r.witness->first << ' ' << r.witness->second << '\n';
            return kExitError;
        }

        if (bounds->parsed()) {
            const auto b = lincsp::bound_ml(bk, bd, bl);
            std::vector<std::pair<std::string, std::string>> rows = {
                {"k", std::to_string(bk)},
                {"d", std::to_string(bd)},
                {"ell", std::to_string(bl)},
                {"lower", num(b.lower)},
                {"ln_lower", num(b.log_lower)},
                {"upper", num(b.upper) + " (times an unspecified constant c)"},
                {"ln_upper", num(b.log_upper)},
                {"frequent_threshold", num(b.frequent_threshold)},
                {"max_frequent", num(b.max_frequent)},
                {"complete_formula_size", num(lincsp::complete_formula_size(bk, bd))},
            };
            if (blinear || (bd == 2 && bl == 2)) {
                if (bk < 2)
                    throw lincsp::ParameterError("linear bounds need k >= 2");
                const auto lb = lincsp::linear_bounds(bk);
                rows.emplace_back("linear_lower", num(lb.lower));
                rows.emplace_back("linear_upper", num(lb.upper));
                rows.emplace_back("linear_upper_ln2", num(lb.upper_ln2));
            }
            if (bpsz) {
                const auto psz = lincsp::psz_size(bk);
                if (psz.exact)
                    rows.emplace_back("psz_size", num(*psz.exact));
                rows.emplace_back("psz_log2", num(psz.log2));
                rows.emplace_back("psz_log2_log2", num(psz.log2_log2));
            }
            print_table(rows);
            return kExitOk;
        }

        if (convert->parsed()) {
            const auto csp = lincsp::parse_any(read_file(cin_file));
            write_output(cout_file, cto == "dimacs" ? lincsp::to_dimacs(csp) : lincsp::serialize(csp));
            return kExitOk;
        }

        if (min2cnf->parsed()) {
            const auto r = lincsp::experiment_min_linear_2cnf(max_clauses);
            std::cout << "c connected graphs " << r.graphs << '\n';
            for (std::size_t e = 1; e < r.formulas_by_clauses.size(); ++e)
                std::cout << "c clauses " << e << " classes " << r.formulas_by_clauses[e] << '\n';
            std::cout << "formulas " << r.formulas << '\n'
                      << "unsatisfiable " << r.unsatisfiable << '\n'
                      << "all_satisfiable " << (r.all_satisfiable() ? "yes" : "no") << '\n';
            if (r.first_unsat)
                std::cout << lincsp::to_dimacs(*r.first_unsat);
            return kExitOk;
        }
    }
    catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const lincsp::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const lincsp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitUsage;
}
