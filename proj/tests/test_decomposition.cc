#include <lhom/decomposition.hh>

#include "support/random.hh"

#include <catch2/catch_amalgamated.hpp>

using namespace lhom;
using namespace lhom::testing;

TEST_CASE("validation reports each defect", "[decomposition]")
{
    auto g = path_graph(4);
    TreeDecomposition good;
    good.add_bag({0, 1});
    good.add_bag({1, 2});
    good.add_bag({2, 3});
    good.edges = {{0, 1}, {1, 2}};
    CHECK(validate(g, good).ok());
    CHECK(good.width() == 1);
    CHECK(is_path_shaped(good));

    auto uncovered = good;
    uncovered.bags[2] = {2};
    auto r = validate(g, uncovered);
    REQUIRE(r.violations.size() == 2);
    CHECK(r.violations[0].kind == ViolationKind::uncovered_vertex);
    CHECK(r.violations[1].kind == ViolationKind::uncovered_edge);

    auto split = good;
    split.bags[2] = {0, 2, 3};
    auto rs = validate(g, split);
    REQUIRE(rs.violations.size() == 1);
    CHECK(rs.violations[0].kind == ViolationKind::disconnected_occurrence);
    CHECK(rs.violations[0].first == 0);

    auto cyclic = good;
    cyclic.edges.push_back({0, 2});
    CHECK(validate(g, cyclic).violations.front().kind == ViolationKind::not_a_tree);

    auto out_of_range = good;
    out_of_range.bags[0] = {0, 7};
    CHECK_THROWS_AS(validate(g, out_of_range), InputError);
}

TEST_CASE("nice decompositions are well formed", "[decomposition]")
{
    Rng rng(11);
    for (int round = 0; round < 60; ++round) {
        auto g = random_graph(rng, rng.between(1, 9), 35);
        auto td = min_degree_decomposition(g);
        REQUIRE(validate(g, td).ok());
        auto nice = make_nice(td);
        CHECK(nice.nodes.back().bag.empty());
        std::vector<int> forgotten(g.size(), 0);
        for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
            auto & n = nice.nodes[i];
            for (int c : n.children)
                CHECK(c < static_cast<int>(i));
            switch (n.kind) {
            case NiceKind::leaf:
                CHECK(n.bag.empty());
                break;
            case NiceKind::introduce: {
                auto child = nice.nodes[n.children[0]].bag;
                child.push_back(n.vertex);
                std::sort(child.begin(), child.end());
                CHECK(child == n.bag);
                break;
            }
            case NiceKind::forget: {
                ++forgotten[n.vertex];
                auto bag = n.bag;
                bag.push_back(n.vertex);
                std::sort(bag.begin(), bag.end());
                CHECK(bag == nice.nodes[n.children[0]].bag);
                break;
            }
            case NiceKind::join:
                CHECK(nice.nodes[n.children[0]].bag == n.bag);
                CHECK(nice.nodes[n.children[1]].bag == n.bag);
                break;
            }
        }
        for (int f : forgotten)
            CHECK(f == 1);
    }
}

TEST_CASE("elimination and path decompositions are valid", "[decomposition]")
{
    Rng rng(5);
    for (int round = 0; round < 50; ++round) {
        auto g = random_graph(rng, rng.between(0, 10), 30);
        CHECK(validate(g, min_degree_decomposition(g)).ok());
        CHECK(validate(g, single_bag_decomposition(g)).ok());
        std::vector<int> order(g.size());
        for (int i = 0; i < g.size(); ++i)
            order[i] = i;
        rng.shuffle(order);
        auto pd = path_decomposition_from_order(g, order);
        CHECK(validate(g, pd).ok());
        CHECK(is_path_shaped(pd));
        CHECK(path_order(pd).size() == pd.bags.size());
    }
    CHECK(min_degree_decomposition(cycle_graph(8)).width() == 2);
}

TEST_CASE("augmented decompositions stay valid and grow by the gadget size", "[decomposition]")
{
    // Instance: a path on 0..3 with an anchor pair (1, 2); one four-vertex
    // gadget attached to the anchor.
    Graph g(8);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    TreeDecomposition td;
    td.add_bag({0, 1, 2, 3});
    td.add_bag({0, 1});
    td.edges = {{0, 1}};
    td.add_bag({3});
    td.edges.push_back({0, 2});
    for (int v : {4, 5, 6, 7}) {
        g.add_edge(v, 1);
        g.add_edge(v, 2);
    }
    auto out = td_for_augmented_instance(td, {{{1, 2}, {4, 5, 6, 7}}});
    CHECK(validate(g, out).ok());
    CHECK(out.width() <= td.width() + 4);
    CHECK(out.width() == 7);

    Rng rng(3);
    for (int round = 0; round < 40; ++round) {
        int n = rng.between(2, 8);
        auto base = random_connected_graph(rng, n, 20);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i)
            order[i] = i;
        auto pd = path_decomposition_from_order(base, order);
        Graph big = base;
        std::vector<Insertion> ins;
        for (auto [u, v] : base.edges()) {
            int w = big.add_vertex();
            big.add_edge(w, u);
            big.add_edge(w, v);
            ins.push_back({{std::min(u, v), std::max(u, v)}, {w}});
        }
        auto grown = td_for_augmented_instance(pd, ins);
        CHECK(validate(big, grown).ok());
        CHECK(is_path_shaped(grown));
        CHECK(grown.width() <= pd.width() + 1);
    }

    CHECK_THROWS_AS(td_for_augmented_instance(td, {{{0, 3, 9}, {}}}), PreconditionError);
}

TEST_CASE("gaifman graph of a structure", "[decomposition]")
{
    RelationalStructure s;
    s.universe = 4;
    int r = s.add_symbol("R", 3);
    s.add_tuple(r, {0, 1, 2});
    s.add_tuple(r, {3, 3, 3});
    auto g = gaifman(s);
    CHECK(g.edge_count() == 3);
    CHECK_FALSE(g.has_loop(3));
}
