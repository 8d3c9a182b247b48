#include <lhom/decomposition.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

using std::pair;
using std::set;
using std::vector;

namespace lhom
{
    auto TreeDecomposition::width() const -> int
    {
        int w = -1;
        for (auto & b : bags)
            w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }

    auto TreeDecomposition::add_bag(vector<int> bag) -> int
    {
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        bags.push_back(std::move(bag));
        return static_cast<int>(bags.size()) - 1;
    }

    namespace
    {
        auto tree_adjacency(const TreeDecomposition & td) -> vector<vector<int>>
        {
            vector<vector<int>> adj(td.bags.size());
            for (auto [a, b] : td.edges) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
            for (auto & a : adj)
                std::sort(a.begin(), a.end());
            return adj;
        }

        auto is_tree(const TreeDecomposition & td) -> bool
        {
            auto n = td.bags.size();
            if (n == 0)
                return td.edges.empty();
            if (td.edges.size() != n - 1)
                return false;
            auto adj = tree_adjacency(td);
            vector<bool> seen(n, false);
            std::deque<int> queue{0};
            seen[0] = true;
            std::size_t count = 1;
            while (! queue.empty()) {
                int b = queue.front();
                queue.pop_front();
                for (int c : adj[b])
                    if (! seen[c]) {
                        seen[c] = true;
                        ++count;
                        queue.push_back(c);
                    }
            }
            return count == n;
        }
    }

    auto validate(const Graph & g, const TreeDecomposition & td) -> ValidationReport
    {
        int n = g.size();
        int nb = static_cast<int>(td.bags.size());
        for (auto & b : td.bags)
            for (int v : b)
                if (v < 0 || v >= n)
                    throw InputError("bag vertex " + std::to_string(v + 1) + " out of range");
        for (auto [a, b] : td.edges)
            if (a < 0 || b < 0 || a >= nb || b >= nb)
                throw InputError("tree edge endpoint out of range");

        ValidationReport report;
        if (! is_tree(td))
            report.violations.push_back({ViolationKind::not_a_tree});

        vector<vector<int>> occurs(n);
        for (int i = 0; i < nb; ++i)
            for (int v : td.bags[i])
                occurs[v].push_back(i);
        for (int v = 0; v < n; ++v)
            if (occurs[v].empty())
                report.violations.push_back({ViolationKind::uncovered_vertex, v});

        for (auto [u, v] : g.edges()) {
            if (u == v)
                continue;
            bool covered = false;
            for (int i : occurs[u]) {
                auto & b = td.bags[i];
                if (std::binary_search(b.begin(), b.end(), v)) {
                    covered = true;
                    break;
                }
            }
            if (! covered)
                report.violations.push_back({ViolationKind::uncovered_edge, u, v});
        }

        auto adj = tree_adjacency(td);
        for (int v = 0; v < n; ++v) {
            if (occurs[v].size() <= 1)
                continue;
            vector<bool> holds(nb, false), seen(nb, false);
            for (int i : occurs[v])
                holds[i] = true;
            std::deque<int> queue{occurs[v][0]};
            seen[occurs[v][0]] = true;
            std::size_t reached = 1;
            while (! queue.empty()) {
                int b = queue.front();
                queue.pop_front();
                for (int c : adj[b])
                    if (holds[c] && ! seen[c]) {
                        seen[c] = true;
                        ++reached;
                        queue.push_back(c);
                    }
            }
            if (reached != occurs[v].size())
                report.violations.push_back({ViolationKind::disconnected_occurrence, v});
        }
        return report;
    }

    auto is_path_shaped(const TreeDecomposition & td) -> bool
    {
        if (! is_tree(td))
            return false;
        auto adj = tree_adjacency(td);
        return std::all_of(adj.begin(), adj.end(), [](auto & a) { return a.size() <= 2; });
    }

    auto path_order(const TreeDecomposition & td) -> vector<int>
    {
        if (! is_path_shaped(td))
            throw PreconditionError("decomposition is not path-shaped");
        if (td.bags.empty())
            return {};
        auto adj = tree_adjacency(td);
        int start = -1;
        for (int i = 0; i < static_cast<int>(adj.size()); ++i)
            if (adj[i].size() <= 1) {
                start = i;
                break;
            }
        vector<int> order{start};
        int prev = -1, cur = start;
        while (true) {
            int next = -1;
            for (int c : adj[cur])
                if (c != prev)
                    next = c;
            if (next == -1)
                break;
            order.push_back(next);
            prev = cur;
            cur = next;
        }
        return order;
    }

    auto single_bag_decomposition(const Graph & g) -> TreeDecomposition
    {
        TreeDecomposition td;
        vector<int> all(g.size());
        for (int v = 0; v < g.size(); ++v)
            all[v] = v;
        td.add_bag(all);
        return td;
    }

    auto decomposition_from_order(const Graph & g, const vector<int> & order) -> TreeDecomposition
    {
        int n = g.size();
        if (static_cast<int>(order.size()) != n)
            throw PreconditionError("elimination order is not a permutation");
        vector<int> position(n, -1);
        for (int i = 0; i < n; ++i) {
            if (order[i] < 0 || order[i] >= n || position[order[i]] != -1)
                throw PreconditionError("elimination order is not a permutation");
            position[order[i]] = i;
        }

        vector<set<int>> adj(n);
        for (auto [u, v] : g.edges())
            if (u != v) {
                adj[u].insert(v);
                adj[v].insert(u);
            }

        TreeDecomposition td;
        vector<int> parent_vertex(n, -1);
        for (int i = 0; i < n; ++i) {
            int v = order[i];
            vector<int> bag{v};
            for (int w : adj[v])
                bag.push_back(w);
            td.add_bag(bag);
            int earliest = -1;
            for (int w : adj[v])
                if (earliest == -1 || position[w] < position[earliest])
                    earliest = w;
            parent_vertex[i] = earliest;
            for (int a : adj[v])
                for (int b : adj[v])
                    if (a != b)
                        adj[a].insert(b);
            for (int w : adj[v])
                adj[w].erase(v);
        }

        int last_root = -1;
        for (int i = 0; i < n; ++i) {
            if (parent_vertex[i] != -1)
                td.edges.emplace_back(i, position[parent_vertex[i]]);
            else {
                if (last_root != -1)
                    td.edges.emplace_back(last_root, i);
                last_root = i;
            }
        }
        return td;
    }

    auto min_degree_decomposition(const Graph & g) -> TreeDecomposition
    {
        int n = g.size();
        vector<set<int>> adj(n);
        for (auto [u, v] : g.edges())
            if (u != v) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        vector<bool> gone(n, false);
        vector<int> order;
        for (int step = 0; step < n; ++step) {
            int best = -1;
            for (int v = 0; v < n; ++v)
                if (! gone[v] && (best == -1 || adj[v].size() < adj[best].size()))
                    best = v;
            order.push_back(best);
            gone[best] = true;
            for (int a : adj[best])
                for (int b : adj[best])
                    if (a != b)
                        adj[a].insert(b);
            for (int w : adj[best])
                adj[w].erase(best);
        }
        return decomposition_from_order(g, order);
    }

    auto path_decomposition_from_order(const Graph & g, const vector<int> & order) -> TreeDecomposition
    {
        int n = g.size();
        if (static_cast<int>(order.size()) != n)
            throw PreconditionError("order is not a permutation");
        vector<int> position(n, -1);
        for (int i = 0; i < n; ++i) {
            if (order[i] < 0 || order[i] >= n || position[order[i]] != -1)
                throw PreconditionError("order is not a permutation");
            position[order[i]] = i;
        }
        vector<int> last(n);
        for (int v = 0; v < n; ++v) {
            last[v] = position[v];
            for (int w : g.neighbors(v))
                last[v] = std::max(last[v], position[w]);
        }
        TreeDecomposition td;
        for (int i = 0; i < n; ++i) {
            vector<int> bag{order[i]};
            for (int j = 0; j < i; ++j)
                if (last[order[j]] >= i)
                    bag.push_back(order[j]);
            td.add_bag(bag);
            if (i > 0)
                td.edges.emplace_back(i - 1, i);
        }
        return td;
    }

    auto make_nice(const TreeDecomposition & td) -> NiceTreeDecomposition
    {
        NiceTreeDecomposition nice;
        auto add = [&](NiceKind kind, int vertex, vector<int> bag, vector<int> children) -> int {
            nice.nodes.push_back({kind, vertex, std::move(bag), std::move(children)});
            return static_cast<int>(nice.nodes.size()) - 1;
        };
        auto introduce = [&](int node, int v) -> int {
            auto bag = nice.nodes[node].bag;
            bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
            return add(NiceKind::introduce, v, std::move(bag), {node});
        };
        auto forget = [&](int node, int v) -> int {
            auto bag = nice.nodes[node].bag;
            bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
            return add(NiceKind::forget, v, std::move(bag), {node});
        };
        // Turns node (with some bag) into a node whose bag is `target`.
        auto morph = [&](int node, const vector<int> & target) -> int {
            vector<int> drop, gain;
            auto & from = nice.nodes[node].bag;
            std::set_difference(from.begin(), from.end(), target.begin(), target.end(), std::back_inserter(drop));
            std::set_difference(target.begin(), target.end(), from.begin(), from.end(), std::back_inserter(gain));
            for (int v : drop)
                node = forget(node, v);
            for (int v : gain)
                node = introduce(node, v);
            return node;
        };

        int nb = static_cast<int>(td.bags.size());
        if (nb == 0) {
            add(NiceKind::leaf, -1, {}, {});
            return nice;
        }

        auto adj = tree_adjacency(td);
        vector<int> parent(nb, -1), bfs{0};
        vector<bool> seen(nb, false);
        seen[0] = true;
        for (std::size_t i = 0; i < bfs.size(); ++i)
            for (int c : adj[bfs[i]])
                if (! seen[c]) {
                    seen[c] = true;
                    parent[c] = bfs[i];
                    bfs.push_back(c);
                }
        if (static_cast<int>(bfs.size()) != nb)
            throw PreconditionError("decomposition tree is not connected");

        vector<vector<int>> children(nb);
        for (int b : bfs)
            if (parent[b] != -1)
                children[parent[b]].push_back(b);

        vector<int> top(nb, -1);
        for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
            int b = *it;
            const auto & bag = td.bags[b];
            int acc = -1;
            for (int c : children[b]) {
                int chain = morph(top[c], bag);
                acc = acc == -1 ? chain : add(NiceKind::join, -1, bag, {acc, chain});
            }
            if (acc == -1)
                acc = morph(add(NiceKind::leaf, -1, {}, {}), bag);
            top[b] = acc;
        }
        morph(top[0], {});
        return nice;
    }

    auto gaifman(const RelationalStructure & s) -> Graph
    {
        Graph g(s.universe);
        for (auto & list : s.tuples)
            for (auto & t : list)
                for (std::size_t i = 0; i < t.size(); ++i)
                    for (std::size_t j = i + 1; j < t.size(); ++j)
                        if (t[i] != t[j])
                            g.add_edge(t[i], t[j]);
        return g;
    }

    auto td_for_augmented_instance(const TreeDecomposition & td, const vector<Insertion> & insertions)
        -> TreeDecomposition
    {
        TreeDecomposition result = td;
        auto adj = tree_adjacency(td);
        std::map<int, vector<int>> holding;
        for (int i = 0; i < static_cast<int>(result.bags.size()); ++i)
            for (int v : result.bags[i])
                holding[v].push_back(i);

        auto contains_all = [](const vector<int> & bag, const vector<int> & anchor) {
            for (int v : anchor)
                if (! std::binary_search(bag.begin(), bag.end(), v))
                    return false;
            return true;
        };

        for (auto & ins : insertions) {
            int host = -1;
            if (ins.anchor.empty())
                host = result.bags.empty() ? -1 : 0;
            else {
                const vector<int> * fewest = nullptr;
                for (int v : ins.anchor) {
                    auto it = holding.find(v);
                    if (it == holding.end()) {
                        fewest = nullptr;
                        break;
                    }
                    if (! fewest || it->second.size() < fewest->size())
                        fewest = &it->second;
                }
                if (fewest)
                    for (int b : *fewest)
                        if (contains_all(result.bags[b], ins.anchor)) {
                            host = b;
                            break;
                        }
                if (host == -1)
                    throw PreconditionError("no bag contains the anchor tuple");
            }

            vector<int> bag = host == -1 ? vector<int>{} : result.bags[host];
            bag.insert(bag.end(), ins.vertices.begin(), ins.vertices.end());
            int fresh = result.add_bag(bag);
            adj.emplace_back();
            for (int v : result.bags[fresh])
                holding[v].push_back(fresh);
            if (host == -1)
                continue;
            if (! adj[host].empty()) {
                int next = adj[host].front();
                std::replace(adj[host].begin(), adj[host].end(), next, fresh);
                std::replace(adj[next].begin(), adj[next].end(), host, fresh);
                adj[fresh] = {host, next};
            }
            else {
                adj[host].push_back(fresh);
                adj[fresh].push_back(host);
            }
        }

        result.edges.clear();
        for (int a = 0; a < static_cast<int>(adj.size()); ++a)
            for (int b : adj[a])
                if (a < b)
                    result.edges.emplace_back(a, b);
        std::sort(result.edges.begin(), result.edges.end());
        return result;
    }

    auto restrict_decomposition(const TreeDecomposition & td, const vector<int> & relabel) -> TreeDecomposition
    {
        TreeDecomposition result;
        for (auto & b : td.bags) {
            vector<int> bag;
            for (int v : b)
                if (v < static_cast<int>(relabel.size()) && relabel[v] >= 0)
                    bag.push_back(relabel[v]);
            result.add_bag(bag);
        }
        result.edges = td.edges;
        return result;
    }
}
