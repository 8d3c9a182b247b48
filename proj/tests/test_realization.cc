#include <lhom/decomposition.hh>
#include <lhom/gadgets.hh>
#include <lhom/realization.hh>

#include "support/gadget_checks.hh"
#include "support/oracles.hh"
#include "support/random.hh"

#include <catch2/catch_amalgamated.hpp>

using namespace lhom;
using namespace lhom::testing;

namespace
{
    auto path_gadget(int length, const std::vector<int> & end_list) -> Gadget
    {
        Gadget j;
        auto & s = j.structure;
        s.universe = length + 1;
        s.lists.resize(length + 1);
        int e = s.add_symbol(edge_symbol, 2);
        for (int i = 0; i < length; ++i)
            s.add_tuple(e, {i, i + 1});
        s.set_list(0, end_list);
        s.set_list(length, end_list);
        j.interface = {0, length};
        return j;
    }
}

TEST_CASE("gadget certificates", "[realization]")
{
    auto h = path_graph(4);
    auto target = graph_as_structure(h);

    // Walks of length 4 between a and c.
    auto cert = certify_gadget(path_gadget(4, {0, 2}), Relation::from_tuples(2, {{0, 2}, {2, 0}}), target);
    CHECK(cert.valid);
    CHECK(cert.mode == GadgetMode::interpolation);
    CHECK(cert.in_counts == std::vector<Count>{3});
    CHECK(cert.out_counts == std::vector<Count>{2, 5});

    // Length 2 walks from a: a-b-a and a-b-c, so (a,c) gets 1 and (a,a) 1.
    auto bad = certify_gadget(path_gadget(2, {0, 2}), Relation::from_tuples(2, {{0, 2}}), target);
    CHECK_FALSE(bad.valid);

    auto exact = certify_gadget(path_gadget(1, {0, 1}), Relation::from_tuples(2, {{0, 1}, {1, 0}}), target);
    CHECK(exact.valid);
    CHECK(exact.mode == GadgetMode::exact);
    CHECK(exact.uniform == 1);

    CHECK_THROWS_AS(certify_gadget(path_gadget(1, {0}), Relation(3), target), PreconditionError);
    CHECK_THROWS_AS(realize(h, "bad", Relation::from_tuples(2, {{0, 2}}), path_gadget(2, {0, 2}), {}), InternalError);
}

TEST_CASE("closures follow every use", "[realization]")
{
    auto h = path_graph(4);
    auto step = realize_edge_step(h, {0, 2}, {1, 3});
    auto back = realize_edge_step(h, {1, 3}, {0, 2});
    auto both = realize_composition(h, step, back);
    auto again = realize_intersection(h, {both, both});
    auto c = closure({again});
    CHECK(c.size() == 4);
    CHECK(c.count(step->name) == 1);
    CHECK(again->depth == 3);
    CHECK(again->relation == compose(step->relation, back->relation));
    CHECK(target_for_closure(h, {again}).symbols.size() == 5);
}

TEST_CASE("replacing tuples keeps a valid decomposition", "[realization]")
{
    Rng rng(17);
    auto h = path_graph(4);
    GadgetLibrary lib(h, {0, 1, 2, 3});
    auto neq = lib.neq({0, 1, 2, 3});
    for (int round = 0; round < 50; ++round) {
        auto inst = planted_instance(rng, target_with(h, {neq}), 6, 4);
        auto td = min_degree_decomposition(gaifman(inst));
        int copies = rng.between(1, 3);
        auto [out, out_td] = replace_tuples(inst, td, neq->name, neq->gadget, copies);
        auto tuples = inst.tuples[inst.symbol_index(neq->name)].size();
        CHECK(out.universe == inst.universe + static_cast<int>(tuples) * copies * 3);
        CHECK(out.symbol_index(neq->name) == -1);
        CHECK(validate(gaifman(out), out_td).ok());
        CHECK(out_td.width() <= std::max(td.width(), 1) + 3);
    }
}

TEST_CASE("one peeling step agrees with enumeration", "[realization]")
{
    Rng rng(23);
    for (int round = 0; round < 25; ++round) {
        auto h = random_graph(rng, rng.between(2, 4), 50, 20);
        std::vector<int> all(h.size());
        for (int v = 0; v < h.size(); ++v)
            all[v] = v;
        auto from = random_subset(rng, all, 60), to = random_subset(rng, all, 60);
        if (from.empty() || to.empty())
            continue;
        auto step = realize_edge_step(h, from, to);
        auto back = realize_edge_step(h, to, from);
        auto composed = realize_composition(h, step, back);
        auto inter = realize_intersection(h, {composed, realize_edge_step(h, from, from)});
        for (auto & rel : {step, composed, inter}) {
            auto report = check_one_level(h, rel, rng, 8);
            INFO(report.first_failure);
            CHECK(report.mismatches == 0);
        }
    }
}

TEST_CASE("answer statistics", "[realization]")
{
    auto h = path_graph(4);
    GadgetLibrary lib(h, {0, 1, 2, 3});
    auto neq = lib.neq({0, 1, 2, 3});
    RelationalStructure inst;
    inst.universe = 3;
    inst.lists.assign(3, std::vector<int>{0, 2});
    inst.add_symbol(edge_symbol, 2);
    int s = inst.add_symbol(neq->name, 2);
    inst.add_tuple(s, {0, 1});
    inst.add_tuple(s, {1, 2});
    auto td = min_degree_decomposition(gaifman(inst));
    AnswerStats stats;
    auto count = answer_with_relation(inst, td, *neq, structure_dp_oracle(target_with(h, {})), &stats);
    CHECK(count == 2);
    // Products of two factors from {2, 3, 5}: 4, 6, 9, 10, 15, 25.
    CHECK(stats.value_set_size == 6);
    CHECK(stats.oracle_calls == 6);
    CHECK(answer_with_relation(inst, td, *neq, structure_dp_oracle(target_with(h, {})), nullptr, 3) == 2);
}

TEST_CASE("chains of relations down to list homomorphisms", "[realization]")
{
    Rng rng(29);
    auto h = path_graph(4);
    GadgetLibrary lib(h, {0, 1, 2, 3});
    // Each interpolating level multiplies the number of oracle calls, so the
    // deepest relation gets the smallest instances.
    struct Case
    {
        RelationPtr rel;
        int universe, tuples;
    };
    std::vector<Case> cases{
        {lib.ac_relation({0, 1, 2, 3}, Relation::from_tuples(2, {{0, 0}, {2, 2}})), 4, 2},
        {lib.purify(lib.ac_relation({0, 1, 2, 3}, Relation::from_tuples(2, {{0, 0}, {2, 0}, {2, 2}})), {0, 1, 2, 3}),
            3, 1},
        {lib.ac_relation({0, 1, 2, 3}, Relation::from_tuples(3, {{0, 0, 2}, {2, 0, 0}, {2, 2, 2}})), 3, 1},
    };
    std::vector<RelationPtr> relations;
    for (auto & [rel, universe, tuples] : cases) {
        relations.push_back(rel);
        ChainEvaluator chain(h, {rel}, dp_graph_oracle(h));
        ChainEvaluator parallel(h, {rel}, dp_graph_oracle(h), 2);
        bool with_parallel = relations.size() == 1;
        ChainEvaluator plain(h, {rel}, dp_graph_oracle(h));
        plain.set_plain({rel});
        auto target = target_with(h, {rel});
        for (int round = 0; round < 8; ++round) {
            auto inst = planted_instance(rng, target, universe, tuples);
            auto td = min_degree_decomposition(gaifman(inst));
            auto expected = enumerate_structure_homs(inst, target);
            CAPTURE(rel->construction, round);
            CHECK(chain.count(inst, td) == expected);
            if (with_parallel)
                CHECK(parallel.count(inst, td) == expected);
            CHECK(plain.count(inst, td) == expected);
        }
        CHECK(chain.base_calls() > 0);
    }

    RelationalStructure unknown;
    unknown.universe = 1;
    unknown.add_tuple(unknown.add_symbol("nowhere", 1), {0});
    ChainEvaluator chain(h, relations, dp_graph_oracle(h));
    CHECK_THROWS_AS(chain.count(unknown, single_bag_decomposition(gaifman(unknown))), PreconditionError);
}
