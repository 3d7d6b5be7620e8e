#include "lincsp/solver.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "lincsp/bounds.hpp"
#include "lincsp/error.hpp"
#include "lincsp/random.hpp"

namespace lincsp {

const char* to_string(SolveStatus status) noexcept
{
    switch (status) {
    case SolveStatus::Satisfied: return "SATISFIABLE";
    case SolveStatus::Unsatisfiable: return "UNSATISFIABLE";
    case SolveStatus::BudgetExceeded: return "BUDGET_EXCEEDED";
    }
    return "?";
}

namespace {

SolveOutcome satisfied(const Csp& csp, Assignment alpha, const char* path)
{
    if (!evaluate(csp, alpha))
        throw InvariantError(std::string(path) + " returned an assignment that does not satisfy its input");
    SolveOutcome out;
    out.status = SolveStatus::Satisfied;
    out.assignment = std::move(alpha);
    return out;
}

void require_disjoint(const Csp& csp, std::size_t ell)
{
    auto check = check_l_disjoint(csp, ell);
    if (!check.ok)
        throw PreconditionError("constraints " + std::to_string(check.witness->first) + " and " +
                                    std::to_string(check.witness->second) + " share at least " +
                                    std::to_string(ell) + " variables",
                                check.witness);
}

} // namespace

LllReport lll_condition(const Csp& csp)
{
    LllReport r;
    r.threshold = lll_degree_threshold(csp.k(), csp.d());
    for (Var v = 1; v <= csp.num_vars(); ++v)
        r.max_degree = std::max(r.max_degree, degree(csp, v));
    r.holds = static_cast<double>(r.max_degree) <= r.threshold;
    return r;
}

SolveOutcome resample_solve(const Csp& csp, std::uint64_t seed, std::uint64_t max_resamples)
{
    CounterRng rng(seed, 1);
    std::vector<Value> values(csp.num_vars());
    for (auto& v : values)
        v = static_cast<Value>(rng.below(csp.d()));
    Assignment alpha(std::move(values));

    std::set<std::uint32_t> violated;
    for (std::size_t i = 0; i < csp.size(); ++i)
        if (csp[i].violated_by(alpha))
            violated.insert(static_cast<std::uint32_t>(i));

    std::uint64_t resamples = 0;
    while (!violated.empty()) {
        if (resamples == max_resamples) {
            SolveOutcome out;
            out.status = SolveStatus::BudgetExceeded;
            out.resamples = resamples;
            return out;
        }
        const auto& c = csp[*violated.begin()];
        for (const auto& lit : c.literals())
            alpha.set(lit.var, static_cast<Value>(rng.below(csp.d())));
        ++resamples;
        for (const auto& lit : c.literals()) {
            for (auto j : csp.occurrences(lit.var)) {
                if (csp[j].violated_by(alpha))
                    violated.insert(j);
                else
                    violated.erase(j);
            }
        }
    }
    auto out = satisfied(csp, std::move(alpha), "resample_solve");
    out.resamples = resamples;
    return out;
}

ReductionReport reduce_frequent(const Csp& csp, std::size_t ell)
{
    require_disjoint(csp, ell);
    auto frequent = frequent_variables(csp, ell);
    std::vector<char> is_frequent(csp.num_vars() + 1, 0);
    for (auto v : frequent)
        is_frequent[v] = 1;

    std::vector<ReductionRecord> records(csp.size());
    std::vector<Constraint> intermediate;
    intermediate.reserve(csp.size());

    // Phase 1: constraints with fewer than ell frequent variables lose all of them.
    for (std::size_t i = 0; i < csp.size(); ++i) {
        std::vector<Var> hits;
        for (const auto& lit : csp[i].literals())
            if (is_frequent[lit.var])
                hits.push_back(lit.var);
        if (hits.size() < ell) {
            intermediate.push_back(csp[i].without(hits));
            records[i].phase1_removed = std::move(hits);
        }
        else {
            intermediate.push_back(csp[i]);
        }
    }

    // Phase 2: truncate to exactly k - ell + 1 literals, highest current degree first.
    const std::size_t target = csp.k() - ell + 1;
    std::vector<std::size_t> deg(csp.num_vars() + 1, 0);
    for (const auto& c : intermediate)
        for (const auto& lit : c.literals())
            ++deg[lit.var];

    for (std::size_t i = 0; i < intermediate.size(); ++i) {
        auto c = intermediate[i];
        while (c.size() > target) {
            Var victim = c[0].var;
            for (const auto& lit : c.literals())
                if (deg[lit.var] > deg[victim])
                    victim = lit.var;
            --deg[victim];
            records[i].phase2_removed.push_back(victim);
            const Var drop[] = {victim};
            c = c.without(drop);
        }
        if (c.size() != target)
            throw InvariantError("phase 1 left constraint " + std::to_string(i) + " with " +
                                 std::to_string(c.size()) + " literals");
        intermediate[i] = std::move(c);
    }

    return ReductionReport{Csp(target, csp.d(), std::move(intermediate), csp.num_vars(), Duplicates::Keep),
                           std::move(records), std::move(frequent)};
}

SolveOutcome solve_sparse_frequent(const Csp& csp, std::size_t ell, std::uint64_t seed,
                                   std::uint64_t max_resamples)
{
    require_disjoint(csp, ell);
    const auto frequent = frequent_variables(csp, ell);
    const double allowed = max_frequent(csp.k(), csp.d(), ell);
    if (static_cast<double>(frequent.size()) > allowed)
        throw PreconditionError(std::to_string(frequent.size()) + " frequent variables exceed the admissible " +
                                    std::to_string(allowed),
                                std::nullopt, frequent.size());

    auto report = reduce_frequent(csp, ell);
    const double threshold = frequent_threshold(csp.k(), csp.d(), ell);
    for (Var v = 1; v <= report.reduced.num_vars(); ++v)
        if (static_cast<double>(degree(report.reduced, v)) > threshold)
            throw InvariantError("variable " + std::to_string(v) + " has degree " +
                                 std::to_string(degree(report.reduced, v)) + " after reduction, above " +
                                 std::to_string(threshold));

    auto out = resample_solve(report.reduced, seed, max_resamples);
    if (out.satisfied() && !evaluate(csp, *out.assignment))
        throw InvariantError("assignment of the reduction does not satisfy the input");
    return out;
}

SolveOutcome exhaustive_solve(const Csp& csp, OracleOptions options)
{
    const auto order = csp.mentioned_variables();

    // Each constraint is checked once its largest variable has been assigned.
    std::vector<std::vector<std::uint32_t>> closing(order.size());
    {
        std::vector<std::size_t> position(csp.num_vars() + 1, 0);
        for (std::size_t i = 0; i < order.size(); ++i)
            position[order[i]] = i;
        for (std::size_t i = 0; i < csp.size(); ++i)
            closing[position[csp[i].literals().back().var]].push_back(static_cast<std::uint32_t>(i));
    }

    Assignment alpha(csp.num_vars(), 0);
    std::uint64_t nodes = 0;
    std::vector<Value> next(order.size() + 1, 0);
    std::size_t depth = 0;

    // Iterative DFS: next[depth] is the next value to try for order[depth].
    while (true) {
        if (depth == order.size()) {
            auto out = satisfied(csp, alpha, "exhaustive_solve");
            out.nodes = nodes;
            return out;
        }
        if (next[depth] == csp.d()) {
            if (depth == 0) {
                SolveOutcome out;
                out.status = SolveStatus::Unsatisfiable;
                out.nodes = nodes;
                return out;
            }
            next[depth] = 0;
            --depth;
            continue;
        }
        if (++nodes > options.node_budget) {
            SolveOutcome out;
            out.status = SolveStatus::BudgetExceeded;
            out.nodes = nodes - 1;
            return out;
        }
        alpha.set(order[depth], next[depth]++);
        bool ok = true;
        for (auto ci : closing[depth])
            if (csp[ci].violated_by(alpha)) {
                ok = false;
                break;
            }
        if (ok)
            ++depth;
    }
}

SolveOutcome two_sat_solve(const Csp& csp)
{
    if (csp.d() != 2 || csp.k() > 2)
        throw UnsupportedDomainError("implication-graph path needs d = 2 and k <= 2, got k = " +
                                     std::to_string(csp.k()) + ", d = " + std::to_string(csp.d()));

    // Node 2(v-1)+b stands for "variable v takes value b". A literal v != b holds
    // exactly when v takes 1 - b.
    const std::size_t nodes = 2 * csp.num_vars();
    auto node = [](Var v, Value b) { return 2 * static_cast<std::size_t>(v - 1) + b; };
    auto holds = [&](const Literal& l) { return node(l.var, 1 - l.value); };
    auto fails = [&](const Literal& l) { return node(l.var, l.value); };

    std::vector<std::vector<std::uint32_t>> graph(nodes);
    for (const auto& c : csp.constraints()) {
        const auto lits = c.literals();
        if (lits.size() == 1) {
            graph[fails(lits[0])].push_back(static_cast<std::uint32_t>(holds(lits[0])));
        }
        else {
            graph[fails(lits[0])].push_back(static_cast<std::uint32_t>(holds(lits[1])));
            graph[fails(lits[1])].push_back(static_cast<std::uint32_t>(holds(lits[0])));
        }
    }

    // Iterative Tarjan; components are numbered in reverse topological order.
    constexpr std::uint32_t kNone = ~std::uint32_t{0};
    std::vector<std::uint32_t> index(nodes, kNone), low(nodes, 0), comp(nodes, kNone);
    std::vector<std::uint32_t> stack, call, edge_pos;
    std::vector<char> on_stack(nodes, 0);
    std::uint32_t next_index = 0, next_comp = 0;

    for (std::uint32_t root = 0; root < nodes; ++root) {
        if (index[root] != kNone)
            continue;
        call.push_back(root);
        edge_pos.push_back(0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            const auto u = call.back();
            auto& pos = edge_pos.back();
            if (pos < graph[u].size()) {
                const auto w = graph[u][pos++];
                if (index[w] == kNone) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back(w);
                    edge_pos.push_back(0);
                }
                else if (on_stack[w]) {
                    low[u] = std::min(low[u], index[w]);
                }
                continue;
            }
            if (low[u] == index[u]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = next_comp;
                } while (w != u);
                ++next_comp;
            }
            call.pop_back();
            edge_pos.pop_back();
            if (!call.empty())
                low[call.back()] = std::min(low[call.back()], low[u]);
        }
    }

    std::vector<Value> values(csp.num_vars());
    for (Var v = 1; v <= csp.num_vars(); ++v) {
        const auto zero = comp[node(v, 0)], one = comp[node(v, 1)];
        if (zero == one) {
            SolveOutcome out;
            out.status = SolveStatus::Unsatisfiable;
            return out;
        }
        values[v - 1] = one < zero ? 1 : 0;
    }
    return satisfied(csp, Assignment(std::move(values)), "two_sat_solve");
}

SolveOutcome oracle_solve(const Csp& csp, OracleOptions options)
{
    if (csp.d() == 2 && csp.k() <= 2)
        return two_sat_solve(csp);
    return exhaustive_solve(csp, options);
}

} // namespace lincsp
