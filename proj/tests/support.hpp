#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls the solver paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "lincsp/csp.hpp"
#include "lincsp/random.hpp"

namespace lincsp::test {

// {-u v} {-v w} {-w x} {-x u} {u w} {-v -x} with u=1 v=2 w=3 x=4; a positive
// literal y is y != 0, a negative one y != 1.
inline Csp six_clause_formula()
{
    return from_clauses({{-1, 2}, {-2, 3}, {-3, 4}, {-4, 1}, {1, 3}, {-2, -4}}, 2);
}

/// All d^k forbidden points over variables 1..k.
inline Csp complete_formula(std::size_t k, Value d = 2)
{
    std::vector<Constraint> cs;
    std::vector<Value> digits(k, 0);
    while (true) {
        std::vector<Literal> lits;
        for (std::size_t i = 0; i < k; ++i)
            lits.push_back({static_cast<Var>(i + 1), digits[i]});
        cs.emplace_back(std::move(lits));
        std::size_t i = 0;
        while (i < k && ++digits[i] == d)
            digits[i++] = 0;
        if (i == k)
            break;
    }
    return Csp(k, d, std::move(cs));
}

/// Counts satisfying assignments over variables 1..num_vars by enumeration,
/// comparing literals directly.
inline std::uint64_t brute_force_count(const Csp& csp)
{
    const std::size_t n = csp.num_vars();
    std::vector<Value> a(n, 0);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (const auto& c : csp.constraints()) {
            bool sat = false;
            for (const auto& lit : c.literals())
                sat = sat || a[lit.var - 1] != lit.value;
            if (!sat) {
                ok = false;
                break;
            }
        }
        count += ok;
        std::size_t i = 0;
        while (i < n && ++a[i] == csp.d())
            a[i++] = 0;
        if (i == n)
            break;
    }
    return count;
}

/// Random duplicate-free (k,d)-CSP over 1..n_vars with about `m` constraints,
/// never pushing a variable above `max_degree` occurrences.
inline Csp random_csp(CounterRng& rng, std::size_t k, Value d, std::size_t n_vars, std::size_t m,
                      std::size_t max_degree = ~std::size_t{0})
{
    std::vector<std::size_t> deg(n_vars + 1, 0);
    std::set<Constraint> seen;
    std::vector<Constraint> cs;
    for (std::size_t attempt = 0; attempt < 50 * m + 50 && cs.size() < m; ++attempt) {
        std::vector<Var> vars;
        for (Var v = 1; v <= n_vars; ++v)
            if (deg[v] < max_degree)
                vars.push_back(v);
        if (vars.size() < k)
            break;
        shuffle(std::span<Var>(vars), rng);
        std::vector<Literal> lits;
        for (std::size_t i = 0; i < k; ++i)
            lits.push_back({vars[i], static_cast<Value>(rng.below(d))});
        Constraint c(std::move(lits));
        if (!seen.insert(c).second)
            continue;
        for (const auto& lit : c.literals())
            ++deg[lit.var];
        cs.push_back(std::move(c));
    }
    return Csp(k, d, std::move(cs), n_vars);
}

/// 2-disjoint (10,2)-CSP with `hubs` high-degree variables (each in 19..26
/// constraints, hence frequent) and a pool of other variables capped at degree
/// 18. Some constraints hold two hubs.
inline Csp sparse_frequent_instance(CounterRng& rng, std::size_t hubs, std::size_t pool = 400)
{
    constexpr std::size_t k = 10;
    const std::size_t n = hubs + pool;
    std::vector<std::size_t> deg(n + 1, 0);
    std::set<std::pair<Var, Var>> pairs;
    std::vector<Constraint> cs;

    auto try_build = [&](std::vector<Var> seed_vars) {
        std::vector<Var> vars = std::move(seed_vars);
        for (int tries = 0; tries < 400 && vars.size() < k; ++tries) {
            const Var v = static_cast<Var>(hubs + 1 + rng.below(pool));
            if (deg[v] >= 18 || std::find(vars.begin(), vars.end(), v) != vars.end())
                continue;
            bool clash = false;
            for (auto u : vars)
                clash = clash || pairs.contains({std::min(u, v), std::max(u, v)});
            if (!clash)
                vars.push_back(v);
        }
        if (vars.size() < k)
            return;
        for (std::size_t i = 0; i < k; ++i) {
            ++deg[vars[i]];
            for (std::size_t j = i + 1; j < k; ++j)
                pairs.insert({std::min(vars[i], vars[j]), std::max(vars[i], vars[j])});
        }
        std::vector<Literal> lits;
        for (auto v : vars)
            lits.push_back({v, static_cast<Value>(rng.below(2))});
        cs.emplace_back(std::move(lits));
    };

    for (Var h = 1; h <= hubs; ++h) {
        const auto target = 19 + rng.below(8);
        for (int guard = 0; deg[h] < target && guard < 200; ++guard) {
            std::vector<Var> seed{h};
            const Var other = static_cast<Var>(1 + rng.below(hubs));
            if (other != h && !pairs.contains({std::min(h, other), std::max(h, other)}) && rng.below(3) == 0)
                seed.push_back(other);
            try_build(std::move(seed));
        }
    }
    // Filler constraints among pool variables only.
    for (int i = 0; i < 30; ++i)
        try_build({});
    return Csp(k, 2, std::move(cs), n);
}

} // namespace lincsp::test
