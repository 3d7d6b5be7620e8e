#include <doctest.h>

#include <cmath>
#include <set>

#include "lincsp/generator.hpp"
#include "support.hpp"

using namespace lincsp;

namespace {

std::vector<std::vector<Var>> edges(const Hypergraph& h)
{
    std::vector<std::vector<Var>> out;
    for (std::size_t i = 0; i < h.size(); ++i)
        out.emplace_back(h.edge(i).begin(), h.edge(i).end());
    return out;
}

std::size_t shared(const std::vector<Var>& a, const std::vector<Var>& b)
{
    std::size_t i = 0, j = 0, s = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++s, ++i, ++j;
        }
        else if (a[i] < b[j]) {
            ++i;
        }
        else {
            ++j;
        }
    }
    return s;
}

bool pairwise_disjoint(const Hypergraph& h, std::size_t ell)
{
    const auto es = edges(h);
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
            if (shared(es[i], es[j]) >= ell)
                return false;
    return true;
}

bool well_formed(const Hypergraph& h)
{
    std::set<std::vector<Var>> seen;
    for (const auto& e : edges(h)) {
        if (e.size() != h.k || !std::is_sorted(e.begin(), e.end()) || e.front() < 1 || e.back() > h.n)
            return false;
        if (std::adjacent_find(e.begin(), e.end()) != e.end() || !seen.insert(e).second)
            return false;
    }
    return true;
}

/// True if no k-subset of {1..n} could be added to h. Exhaustive.
bool maximal(const Hypergraph& h, std::size_t ell)
{
    const auto es = edges(h);
    std::vector<Var> s(h.k);
    for (std::size_t i = 0; i < h.k; ++i)
        s[i] = static_cast<Var>(i + 1);
    while (true) {
        bool fits = true;
        for (const auto& e : es)
            fits = fits && shared(s, e) < ell;
        if (fits)
            return false;
        std::size_t i = h.k;
        while (i > 0 && s[i - 1] == h.n - h.k + i)
            --i;
        if (i == 0)
            return true;
        ++s[i - 1];
        for (std::size_t j = i; j < h.k; ++j)
            s[j] = s[j - 1] + 1;
    }
}

} // namespace

TEST_CASE("greedy packing examples")
{
    // Pairs: every 2-subset is 2-disjoint from every other.
    CHECK(greedy_maximal_hypergraph(4, 2, 2, 1).size() == 6);

    const auto h = greedy_maximal_hypergraph(9, 3, 2, 5);
    CHECK(h.size() >= 4);
    CHECK(pairwise_disjoint(h, 2));
    CHECK(maximal(h, 2));

    const auto one = greedy_maximal_hypergraph(5, 5, 2, 0);
    REQUIRE(one.size() == 1);
    CHECK(edges(one)[0] == std::vector<Var>{1, 2, 3, 4, 5});

    // ell = 1 asks for a matching.
    const auto match = greedy_maximal_hypergraph(7, 2, 1, 3);
    CHECK(match.size() == 3);
    CHECK(pairwise_disjoint(match, 1));

    CHECK_THROWS_AS(greedy_maximal_hypergraph(3, 4, 2, 0), ParameterError);
    CHECK_THROWS_AS(greedy_maximal_hypergraph(5, 3, 4, 0), ParameterError);
    CHECK_THROWS_AS(greedy_maximal_hypergraph(5, 3, 0, 0), ParameterError);
    CHECK_THROWS_AS(greedy_maximal_hypergraph(200, 10, 2, 0), ParameterError);
}

TEST_CASE("greedy packing is ell-disjoint, maximal and above the counting bound")
{
    for (std::size_t k = 2; k <= 5; ++k) {
        for (std::size_t ell = 2; ell <= k; ++ell) {
            for (std::size_t n = k; n <= 14; ++n) {
                for (std::uint64_t seed = 0; seed < 3; ++seed) {
                    CAPTURE(k);
                    CAPTURE(ell);
                    CAPTURE(n);
                    CAPTURE(seed);
                    const auto h = greedy_maximal_hypergraph(n, k, ell, seed);
                    CHECK(h.n == n);
                    CHECK(h.k == k);
                    CHECK(well_formed(h));
                    CHECK(pairwise_disjoint(h, ell));
                    CHECK(maximal(h, ell));
                    CHECK(BigInt(h.size()) >= hypergraph_size_lower_bound(n, k, ell));
                }
            }
        }
    }
}

TEST_CASE("maximality holds against random probes on larger n")
{
    CounterRng rng(8);
    const auto h = greedy_maximal_hypergraph(40, 4, 2, 17);
    REQUIRE(pairwise_disjoint(h, 2));
    const auto es = edges(h);
    for (int probe = 0; probe < 1000; ++probe) {
        std::vector<Var> all(40);
        for (Var v = 0; v < 40; ++v)
            all[v] = v + 1;
        shuffle(std::span<Var>(all), rng);
        std::vector<Var> s(all.begin(), all.begin() + 4);
        std::sort(s.begin(), s.end());
        bool blocked = false;
        for (const auto& e : es)
            blocked = blocked || shared(s, e) >= 2;
        CHECK(blocked);
    }
}

TEST_CASE("bitmask and general enumeration paths agree")
{
    for (std::size_t k = 2; k <= 4; ++k) {
        for (std::size_t ell = 1; ell <= k; ++ell) {
            for (std::size_t n : {k, k + 3, std::size_t{20}, std::size_t{64}}) {
                if (n > 30 && k > 3)
                    continue;
                CAPTURE(k);
                CAPTURE(ell);
                CAPTURE(n);
                const auto a = detail::greedy_enumerated(n, k, ell, 99, ~std::size_t{0}, true);
                const auto b = detail::greedy_enumerated(n, k, ell, 99, ~std::size_t{0}, false);
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("prefix and sampling regimes")
{
    const auto full = greedy_maximal_hypergraph(30, 3, 2, 4);
    const auto prefix = greedy_hypergraph(30, 3, 2, 4, 50);
    REQUIRE(prefix.size() == 50);
    CHECK(std::equal(prefix.vertices.begin(), prefix.vertices.end(), full.vertices.begin()));
    CHECK(edges(greedy_hypergraph(30, 3, 2, 4, 100000)) == edges(full));

    // C(830, 3) is above the enumeration cap, so this samples.
    const auto big = greedy_hypergraph(830, 3, 2, 1, 3000);
    CHECK(big.size() == 3000);
    CHECK(well_formed(big));
    CHECK(pairwise_disjoint(big, 2));
    CHECK(edges(greedy_hypergraph(830, 3, 2, 1, 3000)) == edges(big));
}

TEST_CASE("hypergraph_size_lower_bound")
{
    CHECK(hypergraph_size_lower_bound(4, 2, 2) == 6);   // C(4,2) / C(2,2)^2
    CHECK(hypergraph_size_lower_bound(9, 3, 2) == 4);   // ceil(36 / 9)
    CHECK(hypergraph_size_lower_bound(10, 3, 2) == 5);  // ceil(45 / 9)
    CHECK(hypergraph_size_lower_bound(5, 5, 5) == 1);
}

TEST_CASE("choose_n and required_m")
{
    CHECK(choose_n(2, 2, 2) == 82);
    CHECK(choose_n(3, 2, 2) == 830);
    CHECK_THROWS_AS(choose_n(2, 2, 1), ParameterError);
    CHECK_THROWS_AS(choose_n(2, 2, 3), ParameterError);
    CHECK(required_m(82, 2, 2) == 228);
    CHECK(required_m(1, 1, 2) == 2);
    CHECK(required_m(0, 2, 2) == 0);

    // The counting bound leaves room for the m edges the search needs.
    for (std::size_t k = 2; k <= 4; ++k) {
        for (std::uint32_t d = 2; d <= 3; ++d) {
            const auto n = choose_n(k, d, 2);
            CAPTURE(k);
            CAPTURE(d);
            CHECK(hypergraph_size_lower_bound(n, k, 2) >= BigInt(required_m(n, k, d)));
        }
    }
}

TEST_CASE("instantiate_random")
{
    Hypergraph empty{5, 2, {}};
    CHECK(instantiate_random(empty, 2, 0).empty());
    CHECK(instantiate_random(empty, 2, 0).num_vars() == 5);
    CHECK_THROWS_AS(instantiate_random(empty, 1, 0), ParameterError);

    const auto h = greedy_maximal_hypergraph(12, 3, 2, 2);
    const auto a = instantiate_random(h, 3, 10);
    CHECK(a.k() == 3);
    CHECK(a.d() == 3);
    REQUIRE(a.size() == h.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(a[i][j].var == h.edge(i)[j]);
    CHECK(a == instantiate_random(h, 3, 10));
    CHECK(check_l_disjoint(a, 2).ok);
}

TEST_CASE("expected_sat_count")
{
    const auto e = expected_sat_count(3, 2, 2, 2);
    CHECK(e.exact == doctest::Approx(4.5));
    CHECK(e.upper >= e.exact);
    CHECK(expected_sat_count(5, 0, 2, 3).exact == doctest::Approx(243));

    const auto big = expected_sat_count(82, 228, 2, 2);
    CHECK(big.log_exact == doctest::Approx(-8.7534).epsilon(1e-4));
    CHECK(big.exact < 1);
    CHECK(big.log_upper < 0);

    const auto huge = expected_sat_count(100000, 10, 2, 2);
    CHECK(std::isfinite(huge.log_exact));
}

TEST_CASE("expected count equals the average over all instantiations")
{
    // Sum #sat over every choice of forbidden values on a fixed hypergraph; the
    // total must be d^n (d^k - 1)^m exactly.
    struct Case {
        std::size_t n, k, ell;
        std::uint32_t d;
        std::size_t m;
    };
    for (const auto& c : {Case{4, 2, 2, 2, 3}, Case{5, 2, 2, 3, 3}, Case{6, 3, 2, 2, 2}}) {
        auto h = greedy_hypergraph(c.n, c.k, c.ell, 0, c.m);
        REQUIRE(h.size() == c.m);
        const std::uint64_t per = static_cast<std::uint64_t>(std::pow(c.d, c.k));
        std::vector<std::uint64_t> code(c.m, 0);
        std::uint64_t total = 0, instances = 0;
        while (true) {
            std::vector<Constraint> cs;
            for (std::size_t i = 0; i < c.m; ++i) {
                std::vector<Literal> lits;
                auto x = code[i];
                for (auto v : h.edge(i)) {
                    lits.push_back({v, static_cast<Value>(x % c.d)});
                    x /= c.d;
                }
                cs.emplace_back(std::move(lits));
            }
            total += test::brute_force_count(Csp(c.k, c.d, std::move(cs), c.n));
            ++instances;
            std::size_t i = 0;
            while (i < c.m && ++code[i] == per)
                code[i++] = 0;
            if (i == c.m)
                break;
        }
        const double want = std::pow(c.d, c.n) * std::pow(per - 1, c.m);
        CHECK(static_cast<double>(total) == want);
        CHECK(static_cast<double>(total) / static_cast<double>(instances) ==
              doctest::Approx(expected_sat_count(c.n, c.m, c.k, c.d).exact).epsilon(1e-12));
    }
}

TEST_CASE("search_unsat")
{
    SUBCASE("k = 2 with the implication-graph verifier")
    {
        GenParams p;
        p.seed = 1;
        const auto r = search_unsat(p);
        CHECK(r.n == 82);
        CHECK(r.m == 228);
        CHECK(r.verified_unsat);
        CHECK(r.trials_used >= 1);
        CHECK(r.instance.size() == 228);
        CHECK(check_l_disjoint(r.instance, 2).ok);
        CHECK(exhaustive_solve(r.instance, {50'000'000}).status != SolveStatus::Satisfied);
        CHECK(two_sat_solve(r.instance).status == SolveStatus::Unsatisfiable);
        CHECK(static_cast<double>(r.m) > bound_ml(2, 2, 2).lower);

        const auto again = search_unsat(p);
        CHECK(again.instance == r.instance);
        CHECK(again.trials_used == r.trials_used);
    }
    SUBCASE("verification off returns the first instance")
    {
        GenParams p;
        p.verify = VerifyMode::None;
        p.seed = 4;
        const auto r = search_unsat(p);
        CHECK_FALSE(r.verified_unsat);
        CHECK(r.trials_used == 1);
        REQUIRE(r.trials.size() == 1);
        CHECK_FALSE(r.trials[0].verdict);
    }
    SUBCASE("oracle mode on a small instance")
    {
        GenParams p;
        p.k = 3;
        p.ell = 3;
        p.n = 12;
        p.m = 60;
        p.verify = VerifyMode::Oracle;
        p.trials = 50;
        p.seed = 2;
        const auto r = search_unsat(p);
        CHECK(r.verified_unsat);
        CHECK(test::brute_force_count(r.instance) == 0);
        CHECK(check_l_disjoint(r.instance, 3).ok);
    }
    SUBCASE("preconditions")
    {
        GenParams p;
        p.k = 3;
        p.verify = VerifyMode::Oracle;
        CHECK_THROWS_AS(search_unsat(p), PreconditionError);
        p.verify = VerifyMode::TwoSat;
        CHECK_THROWS_AS(search_unsat(p), PreconditionError);

        GenParams q;
        q.n = 5;
        q.m = 11;
        CHECK_THROWS_AS(search_unsat(q), ParameterError);
    }
    SUBCASE("exhausted trials carry the log")
    {
        GenParams p;
        p.n = 20;
        p.m = 5;
        p.trials = 3;
        try {
            search_unsat(p);
            FAIL("expected SearchExhaustedError");
        }
        catch (const SearchExhaustedError& e) {
            CHECK(e.trials().size() == 3);
            for (const auto& t : e.trials())
                CHECK(t.verdict == SolveStatus::Satisfied);
        }
    }
}
