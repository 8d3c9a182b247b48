#include <lhom/homcount.hh>

#include "support/oracles.hh"
#include "support/random.hh"

#include <catch2/catch_amalgamated.hpp>

using namespace lhom;
using namespace lhom::testing;

TEST_CASE("brute force agrees with enumeration", "[homcount]")
{
    Rng rng(1);
    for (int round = 0; round < 100; ++round) {
        auto h = random_graph(rng, rng.between(1, 4), 50, 30);
        auto g = random_graph(rng, rng.between(0, 5), 40, 10);
        auto l = random_lists(rng, g.size(), h.size(), 70);
        CHECK(count_brute(g, l, h) == enumerate_list_homs(g, l, h));
    }
}

TEST_CASE("brute-force guard", "[homcount]")
{
    Graph g(30);
    auto h = complete_graph(3);
    CHECK_THROWS_AS(count_brute(g, full_lists(30, h), h), SizeError);
}

TEST_CASE("orientations partition the homomorphisms", "[homcount]")
{
    Rng rng(2);
    for (int round = 0; round < 100; ++round) {
        auto h = random_irredundant_bipartite(rng, rng.between(4, 7));
        auto comp = irr(h).components.at(0);
        auto g = random_connected_graph(rng, rng.between(1, 6), 0);
        auto l = random_lists(rng, g.size(), h.size(), 70);
        auto [first, second] = split_orientations(g, l, comp);
        CHECK(count_brute(g, first, h) + count_brute(g, second, h) == count_brute(g, l, h));
    }
}

TEST_CASE("compression keeps one representative per class", "[homcount]")
{
    auto h = complete_bipartite_graph(2, 3);
    ListAssignment l{{0, 1, 2}, {2, 3, 4}, {}};
    auto c = compress(l, h);
    CHECK(c.lists[0] == std::vector<int>{0, 2});
    CHECK(c.weights[0] == std::vector<int>{2, 1});
    CHECK(c.lists[1] == std::vector<int>{2});
    CHECK(c.weights[1] == std::vector<int>{3});
    CHECK(c.lists[2].empty());
}

TEST_CASE("count_dp agrees with brute force and respects the table bound", "[homcount]")
{
    Rng rng(3);
    for (int round = 0; round < 300; ++round) {
        auto h = random_graph(rng, rng.between(1, 6), 45, 25);
        auto g = random_graph(rng, rng.between(0, 7), 35, 10);
        auto l = random_lists(rng, g.size(), h.size(), 75);
        auto td = round % 2 ? min_degree_decomposition(g) : single_bag_decomposition(g);
        auto r = count_dp(g, l, td, h);
        CHECK(r.count == enumerate_list_homs(g, l, h));
        Count bound = boost::multiprecision::pow(Count(irr(h).value), static_cast<unsigned>(r.stats.max_bag_size));
        CHECK(Count(r.stats.max_table_size) <= bound);
        CHECK(count_dp(g, l, td, h, {3}).count == r.count);
    }
}

TEST_CASE("count_dp rejects a bad decomposition", "[homcount]")
{
    auto g = path_graph(3);
    auto h = path_graph(2);
    TreeDecomposition td;
    td.add_bag({0, 1});
    CHECK_THROWS_AS(count_dp(g, full_lists(3, h), td, h), PreconditionError);
}

TEST_CASE("structure dynamic programme agrees with enumeration", "[homcount]")
{
    Rng rng(4);
    for (int round = 0; round < 150; ++round) {
        TargetStructure t;
        t.universe = rng.between(1, 4);
        for (int s = 0; s < 2; ++s) {
            int arity = rng.between(1, 3);
            std::vector<Tuple> tuples;
            int count = rng.between(0, 8);
            for (int i = 0; i < count; ++i) {
                Tuple tup;
                for (int a = 0; a < arity; ++a)
                    tup.push_back(static_cast<int>(rng.below(t.universe)));
                tuples.push_back(tup);
            }
            t.add_symbol("R" + std::to_string(s), Relation::from_tuples(arity, tuples));
        }
        auto inst = random_instance(rng, t, rng.between(1, 6), 3, 30);
        auto expected = enumerate_structure_homs(inst, t);
        CHECK(count_structure_dp(inst, t, min_degree_decomposition(gaifman(inst))) == expected);
        CHECK(count_structure_brute(inst, t) == expected);
    }
}
