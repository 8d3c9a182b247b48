#include <lhom/interpolation.hh>

#include "support/oracles.hh"
#include "support/random.hh"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace lhom;
using namespace lhom::testing;

TEST_CASE("interpolation recovers planted class sizes", "[interpolation]")
{
    Rng rng(12);
    for (int round = 0; round < 50; ++round) {
        int k = rng.between(1, 9);
        std::set<Count> points;
        while (static_cast<int>(points.size()) < k)
            points.insert(Count(rng.between(1, 60)) * (rng.chance(20) ? -1 : 1));
        std::vector<Count> a(points.begin(), points.end());
        std::vector<Count> x;
        for (int i = 0; i < k; ++i)
            x.push_back(rng.between(0, 1000));
        std::vector<Count> b(k, 0);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < k; ++i)
                b[j] += pow(a[i], static_cast<unsigned>(j + 1)) * x[i];
        auto solved = interpolate(a, b);
        CHECK(solved == solve_by_elimination(a, b));
        for (int i = 0; i < k; ++i)
            CHECK(solved[i] == Rational(x[i]));
    }
}

TEST_CASE("interpolation preconditions", "[interpolation]")
{
    CHECK_THROWS_AS(interpolate({1, 1}, {2, 2}), PreconditionError);
    CHECK_THROWS_AS(interpolate({0, 1}, {2, 2}), PreconditionError);
    CHECK_THROWS_AS(interpolate({1, 2}, {2}), PreconditionError);
    auto x = interpolate({2}, {3});
    CHECK(x[0] == Rational(3, 2));
}

TEST_CASE("prime factors by trial division", "[interpolation]")
{
    CHECK(prime_factors(360) == std::vector<Count>{2, 3, 5});
    CHECK(prime_factors(1).empty());
    CHECK(prime_factors(97) == std::vector<Count>{97});
    CHECK(smooth_over(Count(2) * 2 * 3, {2, 3}));
    CHECK_FALSE(smooth_over(10, {2, 3}));
}
