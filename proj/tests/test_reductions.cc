#include <lhom/decomposition.hh>
#include <lhom/homcount.hh>
#include <lhom/reductions.hh>

#include "support/oracles.hh"
#include "support/random.hh"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace lhom;
using namespace lhom::testing;

namespace
{
    // Splits on the lowest unassigned variable and drops satisfied clauses.
    auto count_models_by_splitting(std::vector<std::vector<int>> clauses, int next, int variables) -> Count
    {
        for (auto & c : clauses)
            if (c.empty())
                return 0;
        if (next > variables)
            return 1;
        Count total = 0;
        for (int sign : {1, -1}) {
            std::vector<std::vector<int>> reduced;
            for (auto & c : clauses) {
                if (std::find(c.begin(), c.end(), sign * next) != c.end())
                    continue;
                std::vector<int> rest;
                for (int lit : c)
                    if (lit != -sign * next)
                        rest.push_back(lit);
                reduced.push_back(rest);
            }
            total += count_models_by_splitting(reduced, next + 1, variables);
        }
        return total;
    }

    auto random_cnf(Rng & rng, int variables, int clauses, int width) -> CnfFormula
    {
        CnfFormula f{variables, {}};
        for (int i = 0; i < clauses; ++i) {
            std::vector<int> c;
            int w = rng.between(1, width);
            for (int j = 0; j < w; ++j)
                c.push_back(rng.between(1, variables) * (rng.chance(50) ? 1 : -1));
            f.clauses.push_back(c);
        }
        return f;
    }

    auto random_csp(Rng & rng, int variables, int domain, int constraints, int max_arity) -> CspInstance
    {
        CspInstance c{variables, domain, {}};
        for (int i = 0; i < constraints; ++i) {
            CspConstraint con;
            std::vector<int> vars(variables);
            std::iota(vars.begin(), vars.end(), 0);
            rng.shuffle(vars);
            int arity = rng.between(1, std::min(max_arity, variables));
            con.scope.assign(vars.begin(), vars.begin() + arity);
            int total = 1;
            for (int j = 0; j < arity; ++j)
                total *= domain;
            for (int code = 0; code < total; ++code) {
                if (! rng.chance(60))
                    continue;
                Tuple t;
                for (int j = 0, x = code; j < arity; ++j, x /= domain)
                    t.push_back(x % domain);
                con.allowed.push_back(t);
            }
            c.constraints.push_back(con);
        }
        return c;
    }

    auto bipartite_graph(Rng & rng, int left, int right, int percent) -> Graph
    {
        Graph g(left + right);
        for (int u = 0; u < left; ++u)
            for (int v = left; v < left + right; ++v)
                if (rng.chance(percent))
                    g.add_edge(u, v);
        return g;
    }

    auto is_isomorphic_by_search(const Graph & a, const Graph & b) -> bool
    {
        if (a.size() != b.size() || a.edge_count() != b.edge_count())
            return false;
        std::vector<int> perm(a.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (auto [u, v] : a.edges())
                if (! b.has_edge(perm[u], perm[v])) {
                    ok = false;
                    break;
                }
            if (ok)
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }
}

TEST_CASE("model counts of small formulas", "[reductions]")
{
    CHECK(count_models_brute({2, {{1, -2}}}) == 3);
    CHECK(count_models_brute({1, {{1}, {-1}}}) == 0);
    CHECK(count_models_brute({3, {}}) == 8);
    CHECK(CnfFormula{3, {{1, 2, -3}, {2}}}.max_clause_width() == 3);
    CHECK_THROWS_AS(validate(CnfFormula{2, {{}}}), PreconditionError);
    CHECK_THROWS_AS(validate(CnfFormula{2, {{3}}}), PreconditionError);
    CHECK_THROWS_AS(validate(CnfFormula{2, {{0}}}), PreconditionError);
    Rng rng(1);
    for (int round = 0; round < 100; ++round) {
        auto f = random_cnf(rng, rng.between(1, 8), rng.between(0, 10), 3);
        CHECK(count_models_brute(f) == count_models_by_splitting(f.clauses, 1, f.variables));
    }
}

TEST_CASE("grouping parameters", "[reductions]")
{
    GroupingParameters g{2, 3, 3, Rational(1) / 8};
    // (3 - 1)^2 = 4 <= (15/8)^3 ~ 6.59 <= 8 <= 9.
    CHECK(grouping_holds(g, 1));
    CHECK_FALSE(grouping_holds(g, Rational(1) / 10));
    CHECK_FALSE(grouping_holds({2, 4, 3, 0}, 1));

    for (int q = 2; q <= 5; ++q)
        for (auto eps : {Rational(1) / 2, Rational(1), Rational(q) - Rational(1) / 4}) {
            auto found = choose_grouping(q, eps);
            CAPTURE(q, to_string(eps));
            REQUIRE(found);
            CHECK(grouping_holds(*found, eps));
            CHECK(found->q == q);
            // No smaller p works.
            for (int p = 1; p < found->p; ++p) {
                Count qp = 1;
                Rational lhs = 1;
                for (int i = 0; i < p; ++i) {
                    qp *= q;
                    lhs *= Rational(q) - eps;
                }
                int t = 0;
                while ((Count(1) << (t + 1)) <= qp)
                    ++t;
                CHECK((t == 0 || lhs >= Rational(Count(1) << t)));
            }
        }
    CHECK_THROWS_AS(choose_grouping(3, 0), PreconditionError);
    CHECK_THROWS_AS(choose_grouping(3, 3), PreconditionError);
}

TEST_CASE("formulas to constraint satisfaction", "[reductions]")
{
    CHECK(encode_group(5, 3, 2) == std::vector<int>{2, 1});
    CHECK_THROWS_AS(encode_group(9, 3, 2), PreconditionError);

    Rng rng(2);
    for (int round = 0; round < 60; ++round) {
        auto f = random_cnf(rng, rng.between(1, 8), rng.between(1, 6), 3);
        int q = rng.between(2, 4), p = rng.between(1, 2);
        int t = 1;
        while ((1 << (t + 1)) <= static_cast<int>(std::pow(q, p)))
            ++t;
        t = rng.between(1, t);
        auto r = sat_to_csp(f, {p, t, q, 0});
        CAPTURE(round, q, p, t);
        CHECK(r.csp.domain == q);
        CHECK(static_cast<int>(r.groups.size()) * p == r.csp.variables);
        CHECK(enumerate_csp(r.csp) * r.multiplier == count_models_by_splitting(f.clauses, 1, f.variables));

        // Every satisfying valuation decodes to a model.
        std::vector<int> valuation(r.csp.variables, 0);
        bool done = r.csp.variables == 0;
        while (! done) {
            bool sat = std::all_of(r.csp.constraints.begin(), r.csp.constraints.end(), [&](const CspConstraint & c) {
                Tuple t;
                for (int v : c.scope)
                    t.push_back(valuation[v]);
                return std::find(c.allowed.begin(), c.allowed.end(), t) != c.allowed.end();
            });
            if (sat) {
                auto a = decode_valuation(r, valuation, f.variables);
                for (auto & c : f.clauses)
                    CHECK(std::any_of(c.begin(), c.end(), [&](int lit) { return lit > 0 ? a[lit] : ! a[-lit]; }));
            }
            int i = 0;
            while (i < r.csp.variables && ++valuation[i] == q)
                valuation[i++] = 0;
            done = i == r.csp.variables;
        }
    }
    CHECK_THROWS_AS(sat_to_csp({2, {{1, 2}}}, {1, 2, 3, 0}), PreconditionError);
    CHECK_THROWS_AS(sat_to_csp({2, {{}}}, {1, 1, 2, 0}), PreconditionError);
}

TEST_CASE("constraint satisfaction through list homomorphisms", "[reductions]")
{
    auto p4 = path_graph(4);
    CspInstance free_vars{3, 2, {}};
    CHECK(csp_to_lhom(free_vars, p4).count == 8);

    CspInstance neq{2, 2, {{{0, 1}, {{0, 1}, {1, 0}}}}};
    auto r = csp_to_lhom(neq, p4);
    CHECK(r.count == 2);
    CHECK(r.s == std::vector<int>{0, 2});
    CHECK_FALSE(r.lifted_to_bipartite);
    CHECK(r.base_calls > 0);

    CspInstance impossible{1, 2, {{{0}, {}}}};
    CHECK(csp_to_lhom(impossible, p4).count == 0);

    CHECK_THROWS_AS(csp_to_lhom(CspInstance{1, 3, {}}, p4), PreconditionError);
    CHECK_THROWS_AS(csp_to_lhom(neq, p4, {{0, 1}}), PreconditionError);

    Rng rng(4);
    auto p6 = path_graph(6);
    for (int round = 0; round < 4; ++round) {
        auto c = random_csp(rng, 2, 2, rng.between(1, 2), 2);
        CAPTURE(round);
        CHECK(csp_to_lhom(c, p6, {{1, 3}}).count == enumerate_csp(c));
    }

    // A five-cycle is not bipartite; its associated bipartite graph is a ten-cycle.
    auto c5 = cycle_graph(5);
    auto lifted = csp_to_lhom(neq, c5);
    CHECK(lifted.lifted_to_bipartite);
    CHECK(lifted.count == 2);
}

TEST_CASE("clean homomorphisms of the associated bipartite instance", "[reductions]")
{
    auto k2 = complete_graph(2), k3 = complete_graph(3);
    auto lift = bipartite_lift(k2, full_lists(2, k3), k3);
    CHECK(lift.graph.size() == 4);
    CHECK(count_clean_brute(lift) == 6);

    Graph looped(1);
    looped.add_edge(0, 0);
    CHECK(count_clean_brute(bipartite_lift(looped, full_lists(1, k3), k3)) == 0);

    Rng rng(6);
    for (int round = 0; round < 60; ++round) {
        auto h = random_graph(rng, rng.between(1, 4), 50, 30);
        auto g = random_graph(rng, rng.between(1, 4), 50, 20);
        auto lists = random_lists(rng, g.size(), h.size(), 70);
        auto td = min_degree_decomposition(g);
        auto l = bipartite_lift(g, lists, h, td);
        CHECK(count_clean_brute(l) == enumerate_list_homs(g, lists, h));
        CHECK(validate(l.graph, l.td).ok());
    }
}

TEST_CASE("projecting consistent lists", "[reductions]")
{
    auto h = path_graph(3);
    auto g = path_graph(2);
    // x' = x, x'' = x + 3.
    auto l = consistent_project(g, {{0, 2}, {4}}, h);
    CHECK(l == ListAssignment{{0, 2}, {1}});
    CHECK_THROWS_AS(consistent_project(g, {{0, 4}, {1}}, h), PreconditionError);
    CHECK_THROWS_AS(consistent_project(cycle_graph(3), {{0}, {3}, {0}}, h), PreconditionError);
    CHECK_THROWS_AS(consistent_project(g, {{0}, {6}}, h), PreconditionError);

    Rng rng(7);
    for (int round = 0; round < 80; ++round) {
        auto hh = random_graph(rng, rng.between(1, 4), 50, 20);
        auto gg = bipartite_graph(rng, rng.between(1, 3), rng.between(0, 3), 60);
        int m = hh.size();
        auto c = components(gg);
        ListAssignment lists(gg.size());
        for (int v = 0; v < gg.size(); ++v) {
            bool primed = (c.side[v] == 0) == (c.members[c.component_of[v]].front() % 2 == 0);
            for (int x = 0; x < m; ++x)
                if (rng.chance(60))
                    lists[v].push_back(primed ? x : x + m);
        }
        auto star = associated_bipartite(hh);
        auto projected = consistent_project(gg, lists, hh);
        CHECK(enumerate_list_homs(gg, lists, star) == enumerate_list_homs(gg, projected, hh));
    }
}

TEST_CASE("padding a path decomposition", "[reductions]")
{
    Rng rng(8);
    int checked = 0;
    for (int round = 0; round < 80; ++round) {
        auto h = random_graph(rng, rng.between(1, 4), 50, 20);
        int n = rng.between(1, 5);
        auto g = random_graph(rng, n, 40, 10);
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        auto td = path_decomposition_from_order(g, order);
        auto lists = random_lists(rng, n, h.size(), 70);
        auto family = pad_pathwidth(g, lists, td, h);
        int t = td.width();
        CAPTURE(round, t);
        if (t >= 1) {
            CHECK(family.graph.size() == n + 2 * t - 1);
            CHECK(family.a_side.size() == static_cast<std::size_t>(t));
            CHECK(family.b_side.size() == static_cast<std::size_t>(t));
        }
        CHECK(validate(family.graph, family.td).ok());
        CHECK(is_path_shaped(family.td));
        CHECK(family.td.width() == t);
        Count sum = 0;
        for (auto & m : family.members) {
            auto & graph = m.padded ? family.graph : g;
            sum += enumerate_list_homs(graph, m.lists, h);
        }
        CHECK(sum == enumerate_list_homs(g, lists, h));
        CHECK(count_padded(family, g, td, h) == sum);
        ++checked;
    }
    CHECK(checked == 80);
    auto g = path_graph(3);
    CHECK_THROWS_AS(pad_pathwidth(g, full_lists(3, g), TreeDecomposition{{{0, 1}, {1, 2}, {1}, {1}}, {{0, 1}, {0, 2}, {0, 3}}}, g),
        PreconditionError);
}

TEST_CASE("pruning singleton lists over P4", "[reductions]")
{
    auto p4 = path_graph(4);
    Rng rng(9);
    for (int round = 0; round < 150; ++round) {
        auto g = random_graph(rng, rng.between(1, 6), 40, 5);
        ListAssignment lists(g.size());
        for (int v = 0; v < g.size(); ++v) {
            auto pool = rng.chance(50) ? std::vector<int>{0, 2} : std::vector<int>{1, 3};
            lists[v] = random_subset(rng, pool, 60);
        }
        std::vector<PruneStep> trace;
        auto last = prune_p4_lists(g, lists, &trace);
        Count expected = enumerate_list_homs(g, lists, p4);
        for (auto & step : trace)
            CHECK(enumerate_list_homs(step.graph, step.lists, p4) == expected);
        CHECK(enumerate_list_homs(last.graph, last.lists, p4) == expected);
        bool empty = std::any_of(last.lists.begin(), last.lists.end(), [](auto & l) { return l.empty(); });
        if (! empty)
            for (auto & l : last.lists)
                CHECK(l.size() == 2);
    }
}

TEST_CASE("list homomorphisms to P4 as independent sets", "[reductions]")
{
    Rng rng(10);
    for (int round = 0; round < 100; ++round) {
        auto g = random_graph(rng, rng.between(1, 7), 35);
        auto td = min_degree_decomposition(g);
        CHECK(count_independent_sets(g, td) == enumerate_independent_sets(g));

        auto p4 = path_graph(4);
        auto lists = random_lists(rng, g.size(), 4, 75);
        auto r = lhom_p4_to_independent_sets(g, lists, td);
        CAPTURE(round);
        CHECK(r.count == enumerate_list_homs(g, lists, p4));
        CHECK(r.pruned.size() == 2 * components(g).members.size());
    }
    auto k3 = complete_graph(3);
    CHECK(lhom_p4_to_independent_sets(k3, full_lists(3, path_graph(4)), single_bag_decomposition(k3)).count == 0);
}

TEST_CASE("list colorings as colorings", "[reductions]")
{
    Graph k1(1);
    auto r = list_coloring_to_coloring(k1, {{1}}, 3, single_bag_decomposition(k1));
    CHECK(r.graph.size() == 4);
    CHECK(enumerate_colourings(r.graph, 3) == 6);
    CHECK(Rational(enumerate_colourings(r.graph, 3)) * r.scale == 1);

    Rng rng(11);
    for (int round = 0; round < 60; ++round) {
        int q = rng.between(3, 4);
        auto g = random_graph(rng, rng.between(1, 4), 40);
        auto lists = rng.chance(20) ? full_lists(g.size(), complete_graph(q)) : random_lists(rng, g.size(), q, 60);
        auto td = min_degree_decomposition(g);
        auto expected = enumerate_list_homs(g, lists, complete_graph(q));
        auto plain = list_coloring_to_coloring(g, lists, q, td);
        CAPTURE(round, q);
        CHECK(validate(plain.graph, plain.td).ok());
        CHECK(plain.clique_width == std::max(td.width(), 0) + q);
        CHECK(Rational(enumerate_colourings(plain.graph, q)) * plain.scale == Rational(expected));
        CHECK(Rational(count_dp(plain.graph, full_lists(plain.graph.size(), complete_graph(q)), plain.td,
                  complete_graph(q)).count)
                * plain.scale
            == Rational(expected));
        if (plain.clique_width <= 4 && g.size() <= 3) {
            auto padded = list_coloring_to_coloring(g, lists, q, td, true);
            CHECK(validate(padded.graph, padded.td).ok());
            CHECK(padded.td.width() == plain.clique_width);
            auto colorings = padded.graph.size() <= 10
                ? enumerate_colourings(padded.graph, q)
                : count_dp(padded.graph, full_lists(padded.graph.size(), complete_graph(q)), padded.td,
                      complete_graph(q)).count;
            CHECK(Rational(colorings) * padded.scale == Rational(expected));
        }
    }

    // Colorings of K_{3,3} with one vertex fixed, against enumeration.
    auto padded = list_coloring_to_coloring(k1, {{0}}, 3, TreeDecomposition{{{0}}, {}}, true);
    CHECK(padded.biclique_factor * 3 == enumerate_colourings(complete_bipartite_graph(3, 3), 3));
    CHECK_THROWS_AS(list_coloring_to_coloring(k1, {{0}}, 2, single_bag_decomposition(k1)), PreconditionError);
}

TEST_CASE("direct products of targets", "[reductions]")
{
    auto k2 = complete_graph(2);
    auto two_edges = direct_product(k2, k2);
    CHECK(two_edges.edge_count() == 2);
    CHECK(two_edges.has_edge(0, 3));
    CHECK(two_edges.has_edge(1, 2));

    Graph loop(1);
    loop.add_edge(0, 0);
    Rng rng(12);
    for (int round = 0; round < 100; ++round) {
        auto h1 = random_graph(rng, rng.between(1, 3), 50, 30);
        auto h2 = random_graph(rng, rng.between(1, 3), 50, 30);
        auto g = random_graph(rng, rng.between(1, 4), 50, 10);
        auto prod = direct_product(h1, h2);
        CHECK(enumerate_list_homs(g, full_lists(g.size(), prod), prod)
            == enumerate_list_homs(g, full_lists(g.size(), h1), h1) * enumerate_list_homs(g, full_lists(g.size(), h2), h2));
        CHECK(is_isomorphic_by_search(direct_product(h1, loop), h1));
    }
}
