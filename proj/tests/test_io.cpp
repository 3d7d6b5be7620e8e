#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "lincsp/error.hpp"
#include "lincsp/io.hpp"
#include "lincsp/solver.hpp"
#include "support.hpp"

using namespace lincsp;

namespace {

std::size_t parse_error_line(const std::string& text)
{
    try {
        parse_any(text);
    }
    catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("serialize")
{
    CHECK(serialize(Csp(2, 2, {})) == "p csp 0 2 2 0\n");

    const std::string comments[] = {"hello"};
    CHECK(serialize(Csp(1, 3, {Constraint{{2, 1}}}, 4), comments) == "c hello\np csp 4 3 1 1\n2:1\n");

    // Canonical order, regardless of the input order.
    Csp a(2, 2, {Constraint{{3, 0}, {4, 1}}, Constraint{{1, 0}, {2, 0}}});
    Csp b(2, 2, {Constraint{{1, 0}, {2, 0}}, Constraint{{3, 0}, {4, 1}}});
    CHECK(serialize(a) == serialize(b));
    CHECK(serialize(a) == "p csp 4 2 2 2\n1:0 2:0\n3:0 4:1\n");
    CHECK(std::hash<std::string>{}(serialize(a)) == std::hash<std::string>{}(serialize(parse(serialize(a)))));
}

TEST_CASE("parse")
{
    const auto f = parse("c x\n\np csp 5 3 2 1\nc y\n1:2 5:0\n");
    CHECK(f.k() == 2);
    CHECK(f.d() == 3);
    CHECK(f.num_vars() == 5);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == Constraint{{1, 2}, {5, 0}});

    CHECK_THROWS_AS(parse("p csp 5 3 2 1\n1:0 5:7\n"), ParseError);
    CHECK(parse_error_line("p csp 5 3 2 1\n1:0 5:7\n") == 2);
    CHECK(parse_error_line("c a\nc b\np csp 5 3 2 2\n1:0 2:0\n1:0 6:0\n") == 5);
    CHECK(parse_error_line("p csp 5 2 2 1\n2:0 1:0\n") == 2);
    CHECK(parse_error_line("p csp 5 2 2 1\n1:0 1:1\n") == 2);
    CHECK(parse_error_line("p csp 5 2 2 1\n1:0\n") == 2);
    CHECK(parse_error_line("p csp 5 2 2 1\n1:0 x\n") == 2);
    CHECK(parse_error_line("p csp 5 2 2 2\n1:0 2:0\n1:0 2:0\n") == 3);
    CHECK(parse_error_line("p csp 5 2 2 2\n1:0 2:0\n") != 0);
    CHECK(parse_error_line("p csp 5 2 2 0\n1:0 2:0\n") == 2);
    CHECK(parse_error_line("p csp 5 1 2 0\n") == 1);
    CHECK(parse_error_line("1:0 2:0\n") == 1);
    CHECK_THROWS_AS(parse_any(""), ParseError);
}

TEST_CASE("dimacs")
{
    Csp f(2, 2, {Constraint{{1, 0}, {2, 1}}});
    CHECK(to_dimacs(f) == "p cnf 2 1\n1 -2 0\n");
    CHECK(from_dimacs("c hi\np cnf 2 1\n1 -2 0\n") == f);
    CHECK(from_dimacs("p cnf 3 2\n1 -2 0 -3\n2 0\n%\n0\n") ==
          Csp(2, 2, {Constraint{{1, 0}, {2, 1}}, Constraint{{2, 0}, {3, 1}}}, 3));
    CHECK_THROWS_AS(to_dimacs(Csp(2, 3, {})), UnsupportedDomainError);
    CHECK_THROWS_AS(from_dimacs("p cnf 3 2\n1 2 0\n3 0\n"), ParseError);
    CHECK_THROWS_AS(from_dimacs("p cnf 3 1\n1 4 0\n"), ParseError);
    CHECK(from_dimacs("p cnf 3 0\n", 4).k() == 4);

    CHECK(parse_any(to_dimacs(test::six_clause_formula())) == test::six_clause_formula());
    CHECK(parse_any(serialize(test::six_clause_formula())) == test::six_clause_formula());
}

TEST_CASE("random round trips")
{
    CounterRng rng(4242);
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t k = 1 + rng.below(5);
        const Value d = static_cast<Value>(2 + rng.below(4));
        const std::size_t n = k + rng.below(20);
        const auto f = test::random_csp(rng, k, d, n, rng.below(30));
        CAPTURE(iter);
        const auto text = serialize(f);
        const auto back = parse(text);
        REQUIRE(back == f);
        CHECK(serialize(back) == text);
        if (d == 2) {
            const auto cnf = to_dimacs(f);
            CHECK(from_dimacs(cnf, k) == f);
            CHECK(to_dimacs(from_dimacs(cnf, k)) == cnf);
        }
    }
}

TEST_CASE("shipped fixture")
{
    std::ifstream in(LINCSP_FIXTURE_SIX);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto f = parse(buf.str());
    CHECK(f == test::six_clause_formula());
    CHECK(check_l_disjoint(f, 2).ok);
    CHECK(oracle_solve(f).status == SolveStatus::Unsatisfiable);

    // The file is already in canonical form.
    std::string body;
    std::istringstream lines(buf.str());
    for (std::string line; std::getline(lines, line);)
        if (!line.starts_with("c "))
            body += line + "\n";
    CHECK(serialize(f) == body);
}
