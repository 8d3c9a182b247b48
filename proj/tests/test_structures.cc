#include <lhom/structure.hh>

#include "support/oracles.hh"
#include "support/random.hh"

#include <catch2/catch_amalgamated.hpp>

using namespace lhom;
using namespace lhom::testing;

TEST_CASE("relations in explicit and complement form", "[structures]")
{
    auto r = Relation::from_tuples(2, {{1, 0}, {0, 1}, {0, 1}});
    CHECK(r.size() == 2);
    CHECK(r.contains({0, 1}));
    CHECK_FALSE(r.contains({1, 1}));
    CHECK(r.image(0) == std::vector<int>{1});

    auto box = Relation::box_minus({{0, 2}, {0, 2}}, {{2, 2}, {1, 1}});
    CHECK(box.size() == 3);
    CHECK(box.contains({0, 2}));
    CHECK_FALSE(box.contains({2, 2}));
    CHECK_FALSE(box.contains({1, 0}));
    CHECK(box == Relation::from_tuples(2, {{0, 0}, {0, 2}, {2, 0}}));

    int values[2] = {2, 0};
    char assigned[2] = {1, 0};
    CHECK(box.supports(values, assigned));
    auto single = Relation::box_minus({{0, 2}}, {{2}});
    values[0] = 2;
    CHECK_FALSE(single.supports(values, assigned));

    auto both = intersect_all({&box, &box});
    CHECK(both == box);
    CHECK(compose(r, r) == Relation::from_tuples(2, {{0, 0}, {1, 1}}));
}

TEST_CASE("extension counts agree with enumeration", "[structures]")
{
    Rng rng(9);
    for (int round = 0; round < 100; ++round) {
        auto h = random_graph(rng, rng.between(1, 4), 50, 20);
        auto t = graph_as_structure(h);
        auto j = random_instance(rng, t, rng.between(1, 5), 4, 30);
        Interface x;
        for (int e = 0; e < j.universe; ++e)
            if (rng.chance(50))
                x.push_back(e);
        CHECK(extension_counts(j, x, t) == enumerate_extensions(j, x, t));
    }
}

TEST_CASE("CSP as a structure", "[structures]")
{
    CspInstance c;
    c.variables = 3;
    c.domain = 2;
    c.constraints.push_back({{0, 1}, {{0, 1}, {1, 0}}});
    c.constraints.push_back({{1, 2}, {{0, 1}, {1, 0}}});
    c.constraints.push_back({{0, 2}, {{0, 0}}});
    auto [inst, target] = csp_to_lhom_structure(c);
    CHECK(target.symbols.size() == 2);
    CHECK(count_csp_brute(c) == 1);
    CHECK(enumerate_csp(c) == 1);
    CHECK(target.encoding_size() == 2 + 2 * 2 + 1 * 2);

    c.constraints.push_back({{0, 5}, {}});
    CHECK_THROWS_AS(validate(c), PreconditionError);
}
