#include <lhom/target_analysis.hh>

#include "support/oracles.hh"
#include "support/random.hh"

#include <catch2/catch_amalgamated.hpp>

using namespace lhom;
using namespace lhom::testing;

TEST_CASE("irr of standard targets", "[target]")
{
    CHECK(irr(path_graph(4)).value == 2);
    for (int q = 3; q <= 5; ++q)
        CHECK(irr(complete_graph(q)).value == q);
    CHECK(irr(complete_bipartite_graph(3, 4)).value == 1);
    CHECK(irr(complete_graph(4, true)).value == 1);
    CHECK(irr(Graph(1)).value == 1);
    CHECK_THROWS_AS(irr(Graph(0)), PreconditionError);
}

TEST_CASE("irr witness has pairwise distinct neighborhoods", "[target]")
{
    Rng rng(21);
    for (int round = 0; round < 200; ++round) {
        auto h = random_graph(rng, rng.between(1, 7), 40, 20);
        auto cert = irr(h);
        CHECK(cert.value == irr_by_subsets(h));
        CHECK(static_cast<int>(cert.witness.size()) == cert.value);
        CHECK(is_irredundant(h, cert.witness));
    }
}

TEST_CASE("component classification matches irr", "[target]")
{
    Rng rng(8);
    for (int round = 0; round < 200; ++round) {
        auto h = random_graph(rng, rng.between(1, 7), 50, 30);
        for (auto & c : irr(h).components) {
            CHECK((c.irr >= 2) == (c.kind == ComponentKind::hard));
            if (c.bipartite && c.vertices.size() >= 2) {
                auto sub = induced_subgraph(h, c.vertices);
                CHECK((c.irr >= 2) == ! induced_p4s(sub).empty());
            }
        }
    }
}

TEST_CASE("associated bipartite graph", "[target]")
{
    Graph h(2);
    h.add_edge(0, 0);
    h.add_edge(0, 1);
    auto b = associated_bipartite(h);
    CHECK(b.size() == 4);
    CHECK(b.has_edge(0, 2));
    CHECK(b.has_edge(0, 3));
    CHECK(b.has_edge(1, 2));
    CHECK(b.edge_count() == 3);
    CHECK(is_bipartite(b));
}

TEST_CASE("irr is preserved by the associated bipartite graph on small graphs", "[target]")
{
    for (int n = 1; n <= 3; ++n) {
        int pairs = n * (n + 1) / 2;
        for (int mask = 0; mask < (1 << pairs); ++mask) {
            Graph h(n);
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u; v < n; ++v, ++bit)
                    if (mask >> bit & 1)
                        h.add_edge(u, v);
            CHECK(irr(h).value == irr(associated_bipartite(h)).value);
        }
    }
}

TEST_CASE("P4 structure", "[target]")
{
    auto p6 = path_graph(6);
    auto s = p4_structure(p6);
    REQUIRE(s.applicable);
    CHECK(s.p4s.size() == 3);
    CHECK(s.connected);
    int first = find_p4(s, {0, 1, 2, 3});
    int last = find_p4(s, {2, 3, 4, 5});
    CHECK(p4_path(s, first, last).size() == 3);

    CHECK_FALSE(p4_structure(cycle_graph(5)).applicable);
    Graph twins = path_graph(4);
    twins.add_vertex();
    twins.add_edge(4, 1);
    CHECK_FALSE(p4_structure(twins).applicable);

    Rng rng(4);
    for (int round = 0; round < 30; ++round) {
        auto h = random_irredundant_bipartite(rng, rng.between(4, 8));
        auto st = p4_structure(h);
        REQUIRE(st.applicable);
        CHECK(st.connected);
    }
}
