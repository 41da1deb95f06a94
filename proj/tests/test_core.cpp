#include <doctest.h>

#include <cmath>

#include "ldpput/errors.hpp"
#include "ldpput/linalg.hpp"
#include "ldpput/rational.hpp"
#include "ldpput/simplex.hpp"
#include "test_support.hpp"

using namespace ldpput;
using testsupport::frac;

TEST_CASE("parse_rational forms")
{
    CHECK(parse_rational("3/6") == frac(1, 2));
    CHECK(parse_rational("-4") == -4);
    CHECK(parse_rational("0.25") == frac(1, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(to_string(frac(6, 3)) == "2");
    CHECK(to_string(frac(-1, 3)) == "-1/3");
}

TEST_CASE("from_double is exact and rational_approximation respects the bound")
{
    CHECK(from_double(0.375) == frac(3, 8));
    const double e = std::exp(1.0);
    const auto t = rational_approximation(e, 1000);
    CHECK(t.get_den() <= 1000);
    CHECK(t == frac(1457, 536)); // last convergent of e below 1000
    CHECK(rational_approximation(2.0, 10) == 2);
    CHECK(rational_approximation(1.5, 10) == frac(3, 2));
    // 355/113 is the classic best approximation of π below denominator 1000.
    CHECK(rational_approximation(3.14159265358979, 1000) == frac(355, 113));
}

TEST_CASE("rank, nullspace and unique solves")
{
    RationalMatrix a(2, 3);
    a(0, 0) = 1, a(0, 1) = 2, a(0, 2) = 3;
    a(1, 0) = 2, a(1, 1) = 4, a(1, 2) = 6;
    CHECK(rank(a) == 1);
    auto ns = nullspace(a);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns)
        CHECK(is_zero(multiply(a, v)));

    RationalMatrix b(2, 2);
    b(0, 0) = 2, b(0, 1) = 1, b(1, 0) = 1, b(1, 1) = 3;
    auto x = solve_unique(b, {3, 4});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    CHECK_FALSE(solve_unique(a, {1, 1}));
}

TEST_CASE("exact simplex: optimum, infeasibility, unboundedness")
{
    // min −x − y  s.t. x + y + s = 4, x + 3y + u = 6.
    LinearProgram lp;
    lp.constraints = RationalMatrix(2, 4);
    lp.constraints(0, 0) = 1, lp.constraints(0, 1) = 1, lp.constraints(0, 2) = 1;
    lp.constraints(1, 0) = 1, lp.constraints(1, 1) = 3, lp.constraints(1, 3) = 1;
    lp.rhs = {4, 6};
    lp.objective = {-1, -2, 0, 0};
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == -5); // x = 3, y = 1
    CHECK(sol.x[0] == 3);
    CHECK(sol.x[1] == 1);

    LinearProgram bad;
    bad.constraints = RationalMatrix(1, 1);
    bad.constraints(0, 0) = 1;
    bad.rhs = {-1};
    bad.objective = {0};
    CHECK(solve_lp(bad).status == LpStatus::Infeasible);

    LinearProgram open;
    open.constraints = RationalMatrix(1, 2);
    open.constraints(0, 0) = 1, open.constraints(0, 1) = -1;
    open.rhs = {0};
    open.objective = {-1, 0};
    CHECK(solve_lp(open).status == LpStatus::Unbounded);
}

TEST_CASE("simplex agrees with brute-force vertex minimum on random LPs")
{
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto rng = testsupport::rng_for(11, i);
        const std::size_t rows = testsupport::pick(rng, 1, 3), cols = testsupport::pick(rng, rows, 5);
        LinearProgram lp;
        lp.constraints = RationalMatrix(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                lp.constraints(r, c) = static_cast<long>(testsupport::pick(rng, 0, 4));
        RationalVector x0(cols);
        for (auto& v : x0)
            v = static_cast<long>(testsupport::pick(rng, 0, 3));
        lp.rhs = multiply(lp.constraints, x0);
        lp.objective.resize(cols);
        for (auto& v : lp.objective)
            v = static_cast<long>(testsupport::pick(rng, 0, 6));

        auto sol = solve_lp(lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(multiply(lp.constraints, sol.x) == lp.rhs);
        // Nonnegative costs: the optimum is attained at a basic solution.
        std::optional<Rational> best;
        auto basics = enumerate_basic_solutions(lp.constraints, lp.rhs);
        for (const auto& b : basics) {
            Rational v;
            for (std::size_t c = 0; c < cols; ++c)
                v += b.values[c] * lp.objective[c];
            if (!best || v < *best)
                best = v;
        }
        if (is_zero(lp.rhs))
            best = Rational(0);
        REQUIRE(best);
        CHECK(sol.value == *best);
    }
}
