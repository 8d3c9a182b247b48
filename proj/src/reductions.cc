#include <lhom/gadgets.hh>
#include <lhom/homcount.hh>
#include <lhom/realization.hh>
#include <lhom/reductions.hh>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using std::map;
using std::optional;
using std::vector;

namespace lhom
{
    namespace
    {
        auto rational_power(const Rational & base, int exponent) -> Rational
        {
            Rational result = 1;
            for (int i = 0; i < exponent; ++i)
                result *= base;
            return result;
        }

        auto count_power(int base, int exponent) -> Count
        {
            Count result = 1;
            for (int i = 0; i < exponent; ++i)
                result *= base;
            return result;
        }

        auto factorial(int q) -> Count
        {
            Count result = 1;
            for (int i = 2; i <= q; ++i)
                result *= i;
            return result;
        }

        auto biclique_on(Graph & g, const vector<int> & a_side, const vector<int> & b_side) -> void
        {
            for (int a : a_side)
                for (int b : b_side)
                    g.add_edge(a, b);
        }

        // Bags a_side + {b} for each b, joined in a path; returns the index
        // of the first new bag, or -1 if none was added.
        auto biclique_bags(TreeDecomposition & td, const vector<int> & a_side, const vector<int> & b_side) -> int
        {
            int first = -1;
            for (int b : b_side) {
                auto bag = a_side;
                bag.push_back(b);
                std::sort(bag.begin(), bag.end());
                int id = td.add_bag(bag);
                if (first == -1)
                    first = id;
                else
                    td.edges.emplace_back(id - 1, id);
            }
            return first;
        }
    }

    auto CnfFormula::max_clause_width() const -> int
    {
        std::size_t width = 0;
        for (auto & c : clauses)
            width = std::max(width, c.size());
        return static_cast<int>(width);
    }

    auto validate(const CnfFormula & f) -> void
    {
        if (f.variables < 0)
            throw PreconditionError("negative variable count");
        for (auto & c : f.clauses) {
            if (c.empty())
                throw PreconditionError("empty clause");
            for (int lit : c)
                if (lit == 0 || std::abs(lit) > f.variables)
                    throw PreconditionError("literal " + std::to_string(lit) + " out of range");
        }
    }

    auto count_models_brute(const CnfFormula & f, std::uint64_t limit) -> Count
    {
        validate(f);
        if (f.variables >= 63 || (std::uint64_t{1} << f.variables) > limit)
            throw SizeError("formula has too many variables for enumeration");
        Count total = 0;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.variables); ++bits) {
            bool ok = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const vector<int> & c) {
                return std::any_of(c.begin(), c.end(), [&](int lit) {
                    bool value = (bits >> (std::abs(lit) - 1)) & 1;
                    return lit > 0 ? value : ! value;
                });
            });
            if (ok)
                ++total;
        }
        return total;
    }

    auto grouping_holds(const GroupingParameters & g, const Rational & epsilon) -> bool
    {
        if (g.p < 1 || g.t < 1 || g.q < 2 || g.delta < 0 || g.delta > 2 || epsilon < 0 || epsilon > g.q)
            return false;
        return rational_power(Rational(g.q) - epsilon, g.p) <= rational_power(Rational(2) - g.delta, g.t)
            && count_power(2, g.t) <= count_power(g.q, g.p);
    }

    auto choose_grouping(int q, const Rational & epsilon, int max_p) -> optional<GroupingParameters>
    {
        if (q < 2)
            throw PreconditionError("domain size must be at least 2");
        if (epsilon <= 0 || epsilon >= q)
            throw PreconditionError("epsilon must lie strictly between 0 and q");
        for (int p = 1; p <= max_p; ++p) {
            Count qp = count_power(q, p);
            int t = 0;
            while (count_power(2, t + 1) <= qp)
                ++t;
            if (t < 1)
                continue;
            Rational target = rational_power(Rational(q) - epsilon, p);
            if (target >= Rational(count_power(2, t)))
                continue;
            Rational delta = Rational(1) / 2;
            for (int k = 1; k <= 64; ++k, delta /= 2) {
                GroupingParameters g{p, t, q, delta};
                if (grouping_holds(g, epsilon))
                    return g;
            }
        }
        return std::nullopt;
    }

    auto encode_group(int bits, int q, int p) -> vector<int>
    {
        vector<int> digits;
        for (int i = 0; i < p; ++i) {
            digits.push_back(bits % q);
            bits /= q;
        }
        if (bits != 0)
            throw PreconditionError("group assignment does not fit into p digits");
        return digits;
    }

    auto sat_to_csp(const CnfFormula & f, const GroupingParameters & params) -> SatToCsp
    {
        validate(f);
        if (params.p < 1 || params.t < 1 || params.q < 2)
            throw PreconditionError("grouping parameters must be positive with q >= 2");
        if (count_power(2, params.t) > count_power(params.q, params.p))
            throw PreconditionError("grouping parameters violate 2^t <= q^p");

        SatToCsp result;
        result.params = params;
        std::set<int> used;
        for (auto & c : f.clauses)
            for (int lit : c)
                used.insert(std::abs(lit));
        result.multiplier = count_power(2, f.variables - static_cast<int>(used.size()));

        vector<int> group_of(f.variables + 1, -1), bit_of(f.variables + 1, -1);
        for (int v : used) {
            if (result.groups.empty() || static_cast<int>(result.groups.back().size()) == params.t)
                result.groups.emplace_back();
            bit_of[v] = static_cast<int>(result.groups.back().size());
            group_of[v] = static_cast<int>(result.groups.size()) - 1;
            result.groups.back().push_back(v);
        }

        auto & csp = result.csp;
        csp.variables = static_cast<int>(result.groups.size()) * params.p;
        csp.domain = params.q;
        for (auto & clause : f.clauses) {
            vector<int> groups;
            for (int lit : clause)
                groups.push_back(group_of[std::abs(lit)]);
            std::sort(groups.begin(), groups.end());
            groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

            CspConstraint constraint;
            int total_bits = 0;
            vector<int> offset;
            for (int g : groups) {
                offset.push_back(total_bits);
                total_bits += static_cast<int>(result.groups[g].size());
                for (int i = 0; i < params.p; ++i)
                    constraint.scope.push_back(g * params.p + i);
            }
            if (total_bits > 24)
                throw SizeError("clause spans too many grouped variables");

            for (std::uint32_t bits = 0; bits < (1u << total_bits); ++bits) {
                auto value = [&](int v) {
                    int at = static_cast<int>(std::find(groups.begin(), groups.end(), group_of[v]) - groups.begin());
                    return ((bits >> (offset[at] + bit_of[v])) & 1) != 0;
                };
                bool satisfied = std::any_of(clause.begin(), clause.end(), [&](int lit) {
                    return lit > 0 ? value(lit) : ! value(-lit);
                });
                if (! satisfied)
                    continue;
                Tuple tuple;
                for (std::size_t i = 0; i < groups.size(); ++i) {
                    int size = static_cast<int>(result.groups[groups[i]].size());
                    int group_bits = static_cast<int>((bits >> offset[i]) & ((1u << size) - 1));
                    auto digits = encode_group(group_bits, params.q, params.p);
                    tuple.insert(tuple.end(), digits.begin(), digits.end());
                }
                constraint.allowed.push_back(std::move(tuple));
            }
            std::sort(constraint.allowed.begin(), constraint.allowed.end());
            csp.constraints.push_back(std::move(constraint));
        }
        return result;
    }

    auto decode_valuation(const SatToCsp & r, const vector<int> & valuation, int variables) -> vector<bool>
    {
        int p = r.params.p, q = r.params.q;
        if (static_cast<int>(valuation.size()) != static_cast<int>(r.groups.size()) * p)
            throw PreconditionError("valuation size does not match the CSP");
        vector<bool> assignment(variables + 1, false);
        for (std::size_t g = 0; g < r.groups.size(); ++g) {
            long long bits = 0;
            for (int i = p - 1; i >= 0; --i)
                bits = bits * q + valuation[g * p + i];
            for (std::size_t j = 0; j < r.groups[g].size(); ++j)
                assignment[r.groups[g][j]] = (bits >> j) & 1;
        }
        return assignment;
    }

    auto csp_to_lhom(const CspInstance & c, const Graph & h, const CspToLhomOptions & options) -> CspToLhomResult
    {
        validate(c);
        CspToLhomResult result;

        vector<int> s = options.s;
        if (s.empty()) {
            auto cert = irr(h);
            if (cert.value < c.domain)
                throw PreconditionError("irr(H) = " + std::to_string(cert.value) + " is below the CSP domain size "
                    + std::to_string(c.domain));
            // Nearest vertices first: gadget depth grows with the spread of S.
            int root = cert.witness.front();
            auto dist = bfs_distances(h.has_any_loop() || ! is_bipartite(h) ? associated_bipartite(h) : h, root);
            vector<int> pool;
            for (int v = 0; v < h.size(); ++v)
                if (dist[v] >= 0 && dist[v] % 2 == 0)
                    pool.push_back(v);
            std::stable_sort(pool.begin(), pool.end(), [&](int u, int v) { return dist[u] < dist[v]; });
            for (int v : pool) {
                s.push_back(v);
                if (! is_irredundant(h, s))
                    s.pop_back();
                if (static_cast<int>(s.size()) == c.domain)
                    break;
            }
            if (static_cast<int>(s.size()) < c.domain)
                s.assign(cert.witness.begin(), cert.witness.begin() + c.domain);
        }
        std::sort(s.begin(), s.end());
        if (static_cast<int>(s.size()) != c.domain || std::adjacent_find(s.begin(), s.end()) != s.end())
            throw PreconditionError("S must have exactly q distinct vertices");
        for (int v : s)
            if (v < 0 || v >= h.size())
                throw PreconditionError("S contains an unknown vertex");
        result.s = s;

        auto comps = components(h);
        int component = comps.component_of[s.front()];
        result.lifted_to_bipartite = ! comps.bipartite[component] || comps.has_loop[component];
        Graph base = result.lifted_to_bipartite ? associated_bipartite(h) : h;

        auto view = irredundant_view(base, s);
        vector<int> sv;
        for (int v : s)
            sv.push_back(view.position[v]);
        result.anchor = {view.labels[view.anchor.a], view.labels[view.anchor.b], view.labels[view.anchor.c],
            view.labels[view.anchor.d]};

        GadgetLibrary lib(view.graph, view.anchor, {options.max_ac_arity});
        auto [structure, target] = csp_to_lhom_structure(c);

        RelationalStructure inst;
        inst.universe = structure.universe;
        inst.lists.assign(inst.universe, sv);
        inst.add_symbol(edge_symbol, 2);
        vector<RelationPtr> relations;
        for (std::size_t i = 0; i < target.symbols.size(); ++i) {
            int arity = target.symbols[i].arity;
            vector<Tuple> mapped;
            target.relations[i].for_each([&](const Tuple & t) {
                Tuple m;
                for (int value : t)
                    m.push_back(sv[value]);
                mapped.push_back(std::move(m));
            });
            int from = structure.symbol_index(target.symbols[i].name);
            if (arity == 0) {
                if (mapped.empty() && ! structure.tuples[from].empty()) {
                    result.count = 0;
                    return result;
                }
                continue;
            }
            auto rel = lib.realize_over(sv, arity, 0, Relation::from_tuples(arity, mapped));
            relations.push_back(rel);
            int to = inst.symbol_index(rel->name);
            if (to == -1)
                to = inst.add_symbol(rel->name, arity);
            for (auto & t : structure.tuples[from])
                inst.add_tuple(to, t);
        }
        result.relations_realized = static_cast<int>(relations.size());
        for (auto & [name, r] : closure(relations))
            result.max_depth = std::max(result.max_depth, r->depth);

        auto td = min_degree_decomposition(gaifman(inst));
        ChainEvaluator chain(view.graph, relations, lifted_oracle(base, view, options.threads), options.threads);
        if (options.plain_depth > 0) {
            vector<RelationPtr> plain;
            for (auto & [name, r] : closure(relations))
                if (r->depth <= options.plain_depth)
                    plain.push_back(r);
            chain.set_plain(plain);
        }
        result.count = chain.count(inst, td);
        result.base_calls = chain.base_calls();
        return result;
    }

    auto bipartite_lift(const Graph & g, const ListAssignment & lists, const Graph & h,
        const optional<TreeDecomposition> & td) -> BipartiteLift
    {
        validate_lists(g, lists, h);
        int n = g.size(), m = h.size();
        BipartiteLift lift;
        lift.graph = associated_bipartite(g);
        lift.target = associated_bipartite(h);
        lift.lists.resize(2 * n);
        for (int v = 0; v < n; ++v) {
            lift.lists[v] = lists[v];
            for (int x : lists[v])
                lift.lists[v + n].push_back(x + m);
        }
        if (td) {
            for (auto & bag : td->bags) {
                auto doubled = bag;
                for (int v : bag)
                    doubled.push_back(v + n);
                std::sort(doubled.begin(), doubled.end());
                lift.td.add_bag(doubled);
            }
            lift.td.edges = td->edges;
        }
        return lift;
    }

    auto count_clean_brute(const BipartiteLift & lift, std::uint64_t limit) -> Count
    {
        int n2 = lift.graph.size(), n = n2 / 2, m = lift.target.size() / 2;
        long double space = 1;
        for (auto & l : lift.lists)
            space *= static_cast<long double>(l.size());
        if (space > static_cast<long double>(limit))
            throw SizeError("lifted instance too large for enumeration");
        for (auto & l : lift.lists)
            if (l.empty())
                return 0;

        vector<std::size_t> at(n2, 0);
        vector<int> f(n2);
        Count total = 0;
        while (true) {
            for (int v = 0; v < n2; ++v)
                f[v] = lift.lists[v][at[v]];
            bool ok = true;
            for (auto [u, w] : lift.graph.edges())
                if (! lift.target.has_edge(f[u], f[w])) {
                    ok = false;
                    break;
                }
            for (int v = 0; v < n && ok; ++v)
                for (int x = 0; x < m && ok; ++x)
                    if ((f[v] == x) != (f[v + n] == x + m))
                        ok = false;
            if (ok)
                ++total;
            int v = 0;
            while (v < n2 && ++at[v] == lift.lists[v].size())
                at[v++] = 0;
            if (v == n2)
                break;
        }
        return total;
    }

    auto consistent_project(const Graph & g, const ListAssignment & lists, const Graph & h) -> ListAssignment
    {
        int m = h.size();
        if (static_cast<int>(lists.size()) != g.size())
            throw PreconditionError("one list per vertex is required");
        for (auto & l : lists)
            for (int x : l)
                if (x < 0 || x >= 2 * m)
                    throw PreconditionError("list entry outside the associated bipartite graph");
        auto comps = components(g);
        for (std::size_t c = 0; c < comps.members.size(); ++c) {
            if (! comps.bipartite[c])
                throw PreconditionError("instance is not bipartite");
            // Orientation 0 sends side 0 into V', orientation 1 into V''.
            bool fits[2] = {true, true};
            for (int v : comps.members[c])
                for (int x : lists[v]) {
                    bool primed = x < m;
                    bool side0 = comps.side[v] == 0;
                    if (primed != side0)
                        fits[0] = false;
                    if (primed == side0)
                        fits[1] = false;
                }
            if (! fits[0] && ! fits[1])
                throw PreconditionError("lists are not consistent with one orientation");
        }
        ListAssignment projected(g.size());
        for (int v = 0; v < g.size(); ++v) {
            for (int x : lists[v])
                projected[v].push_back(x % m);
            std::sort(projected[v].begin(), projected[v].end());
            projected[v].erase(std::unique(projected[v].begin(), projected[v].end()), projected[v].end());
        }
        return projected;
    }

    auto pad_pathwidth(const Graph & g, const ListAssignment & lists, const TreeDecomposition & td, const Graph & h)
        -> PaddedFamily
    {
        validate_lists(g, lists, h);
        if (g.size() == 0)
            throw PreconditionError("padding needs at least one vertex");
        if (! validate(g, td).ok())
            throw PreconditionError("decomposition is not valid");
        auto order = path_order(td);

        PaddedFamily family;
        int t = td.width();
        family.width = t;
        auto & last = td.bags[order.back()];
        family.attach = last.empty() ? 0 : last.front();
        int v = family.attach;

        family.graph = g;
        family.td = td;
        family.a_side.push_back(v);
        if (t >= 1) {
            for (int i = 0; i < t - 1; ++i)
                family.a_side.push_back(family.graph.add_vertex());
            for (int i = 0; i < t; ++i)
                family.b_side.push_back(family.graph.add_vertex());
            biclique_on(family.graph, family.a_side, family.b_side);
            int first = biclique_bags(family.td, family.a_side, family.b_side);
            family.td.edges.emplace_back(order.back(), first);
        }

        for (int a : lists[v]) {
            PaddedMember member;
            member.value = a;
            if (! family.b_side.empty() && h.neighbors(a).empty()) {
                member.padded = false;
                member.lists = lists;
                member.lists[v] = {a};
            }
            else {
                member.lists = lists;
                member.lists.resize(family.graph.size());
                for (int u : family.a_side)
                    member.lists[u] = {a};
                for (int u : family.b_side)
                    member.lists[u] = {h.neighbors(a).front()};
            }
            family.members.push_back(std::move(member));
        }
        if (family.td.width() != t)
            internal_failure("padded decomposition changed the width");
        return family;
    }

    auto count_padded(const PaddedFamily & family, const Graph & g, const TreeDecomposition & td, const Graph & h,
        int threads) -> Count
    {
        Count total = 0;
        for (auto & m : family.members) {
            if (m.padded)
                total += count_dp(family.graph, m.lists, family.td, h, {threads}).count;
            else
                total += count_dp(g, m.lists, td, h, {threads}).count;
        }
        return total;
    }

    auto prune_p4_lists(const Graph & g, const ListAssignment & lists, vector<PruneStep> * trace) -> PruneStep
    {
        auto p4 = path_graph(4);
        validate_lists(g, lists, p4);
        int n = g.size();
        vector<bool> alive(n, true);
        auto current = lists;

        auto snapshot = [&] {
            PruneStep step;
            vector<int> position(n, -1);
            for (int v = 0; v < n; ++v)
                if (alive[v]) {
                    position[v] = static_cast<int>(step.labels.size());
                    step.labels.push_back(v);
                }
            step.graph = Graph(static_cast<int>(step.labels.size()));
            for (auto [u, w] : g.edges())
                if (alive[u] && alive[w])
                    step.graph.add_edge(position[u], position[w]);
            for (int v : step.labels)
                step.lists.push_back(current[v]);
            return step;
        };

        while (true) {
            if (std::any_of(current.begin(), current.end(), [](const vector<int> & l) { return l.empty(); }))
                break;
            int pick = -1;
            for (int v = 0; v < n && pick == -1; ++v)
                if (alive[v] && current[v].size() == 1)
                    pick = v;
            if (pick == -1)
                break;
            int x = current[pick].front();
            if (g.has_loop(pick) && ! p4.has_loop(x)) {
                current[pick].clear();
                if (trace)
                    trace->push_back(snapshot());
                break;
            }
            for (int u : g.neighbors(pick)) {
                if (u == pick || ! alive[u])
                    continue;
                auto & l = current[u];
                l.erase(std::remove_if(l.begin(), l.end(), [&](int y) { return ! p4.has_edge(x, y); }), l.end());
            }
            alive[pick] = false;
            if (trace)
                trace->push_back(snapshot());
        }
        return snapshot();
    }

    auto count_independent_sets(const Graph & g, const TreeDecomposition & td) -> Count
    {
        // Vertices mapped to 1 form an independent set.
        Graph target(2);
        target.add_edge(0, 0);
        target.add_edge(0, 1);
        return count_dp(g, full_lists(g.size(), target), td, target).count;
    }

    auto lhom_p4_to_independent_sets(const Graph & g, const ListAssignment & lists, const TreeDecomposition & td)
        -> IndependentSetReduction
    {
        auto p4 = path_graph(4);
        validate_lists(g, lists, p4);
        IndependentSetReduction result;
        result.count = 1;
        auto comps = components(g);
        for (std::size_t c = 0; c < comps.members.size(); ++c) {
            auto & members = comps.members[c];
            if (! comps.bipartite[c]) {
                result.count = 0;
                result.pruned.emplace_back();
                result.pruned.emplace_back();
                continue;
            }
            Graph sub = induced_subgraph(g, members);
            Count component_total = 0;
            for (int orientation = 0; orientation < 2; ++orientation) {
                ListAssignment oriented;
                for (int v : members) {
                    bool ac = (comps.side[v] == 0) == (orientation == 0);
                    vector<int> l;
                    for (int x : lists[v])
                        if ((x == 0 || x == 2) == ac)
                            l.push_back(x);
                    oriented.push_back(l);
                }
                auto pruned = prune_p4_lists(sub, oriented);
                if (std::any_of(pruned.lists.begin(), pruned.lists.end(),
                        [](const vector<int> & l) { return l.empty(); })) {
                    result.pruned.emplace_back();
                    continue;
                }
                vector<int> relabel(g.size(), -1);
                for (std::size_t i = 0; i < pruned.labels.size(); ++i)
                    relabel[members[pruned.labels[i]]] = static_cast<int>(i);
                auto sub_td = restrict_decomposition(td, relabel);
                component_total += count_independent_sets(pruned.graph, sub_td);
                result.pruned.push_back(pruned.graph);
            }
            result.count *= component_total;
        }
        return result;
    }

    auto list_coloring_to_coloring(const Graph & g, const ListAssignment & lists, int q, const TreeDecomposition & td,
        bool pad) -> ColoringReduction
    {
        if (q < 3)
            throw PreconditionError("colorings need q >= 3");
        auto kq = complete_graph(q);
        validate_lists(g, lists, kq);
        int n = g.size();

        ColoringReduction result;
        result.graph = g;
        vector<int> clique;
        for (int i = 0; i < q; ++i)
            clique.push_back(result.graph.add_vertex());
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j)
                result.graph.add_edge(clique[i], clique[j]);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < q; ++i)
                if (! std::binary_search(lists[v].begin(), lists[v].end(), i))
                    result.graph.add_edge(v, clique[i]);

        for (auto & bag : td.bags) {
            auto b = bag;
            b.insert(b.end(), clique.begin(), clique.end());
            std::sort(b.begin(), b.end());
            result.td.add_bag(b);
        }
        result.td.edges = td.edges;
        if (result.td.bags.empty())
            result.td.add_bag(clique);
        result.clique_width = result.td.width();

        Count scale_den = factorial(q);
        if (pad) {
            int t = result.clique_width;
            int v = 0;
            vector<int> a_side{v}, b_side;
            for (int i = 0; i < t - 1; ++i)
                a_side.push_back(result.graph.add_vertex());
            for (int i = 0; i < t; ++i)
                b_side.push_back(result.graph.add_vertex());
            biclique_on(result.graph, a_side, b_side);
            int at = 0;
            while (! std::binary_search(result.td.bags[at].begin(), result.td.bags[at].end(), v))
                ++at;
            int first = biclique_bags(result.td, a_side, b_side);
            result.td.edges.emplace_back(at, first);

            auto k = complete_bipartite_graph(t, t);
            TreeDecomposition ktd;
            vector<int> ka(t), kb(t);
            std::iota(ka.begin(), ka.end(), 0);
            std::iota(kb.begin(), kb.end(), t);
            biclique_bags(ktd, ka, kb);
            auto all = count_dp(k, full_lists(2 * t, kq), ktd, kq).count;
            result.biclique_factor = all / q;
            result.padded = true;
            scale_den *= result.biclique_factor;
        }
        result.scale = Rational(1) / Rational(scale_den);
        return result;
    }

    auto direct_product(const Graph & h1, const Graph & h2) -> Graph
    {
        int m = h2.size();
        Graph p(h1.size() * m);
        for (int i = 0; i < h1.size(); ++i)
            for (int k : h1.neighbors(i))
                for (int j = 0; j < m; ++j)
                    for (int l : h2.neighbors(j))
                        p.add_edge(i * m + j, k * m + l);
        return p;
    }
}
