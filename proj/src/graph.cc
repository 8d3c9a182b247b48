#include <lhom/common.hh>
#include <lhom/graph.hh>

#include <algorithm>
#include <deque>
#include <limits>

using std::optional;
using std::pair;
using std::vector;

namespace lhom
{
    Graph::Graph(int n)
    {
        if (n < 0)
            throw PreconditionError("negative vertex count");
        _adj.resize(n);
    }

    auto Graph::add_vertex() -> int
    {
        _adj.emplace_back();
        return size() - 1;
    }

    auto Graph::add_edge(int u, int v) -> void
    {
        if (u < 0 || v < 0 || u >= size() || v >= size())
            throw PreconditionError("edge endpoint out of range");
        auto insert = [&](int x, int y) -> bool {
            auto & a = _adj[x];
            auto it = std::lower_bound(a.begin(), a.end(), y);
            if (it != a.end() && *it == y)
                return false;
            a.insert(it, y);
            return true;
        };
        if (insert(u, v)) {
            if (u != v)
                insert(v, u);
            ++_edges;
        }
    }

    auto Graph::has_edge(int u, int v) const -> bool
    {
        const auto & a = _adj.at(u);
        return std::binary_search(a.begin(), a.end(), v);
    }

    auto Graph::has_any_loop() const -> bool
    {
        for (int v = 0; v < size(); ++v)
            if (has_loop(v))
                return true;
        return false;
    }

    auto Graph::edges() const -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        for (int u = 0; u < size(); ++u)
            for (int v : _adj[u])
                if (u <= v)
                    result.emplace_back(u, v);
        return result;
    }

    auto components(const Graph & g) -> Components
    {
        int n = g.size();
        Components c;
        c.component_of.assign(n, -1);
        c.side.assign(n, 0);
        for (int start = 0; start < n; ++start) {
            if (c.component_of[start] != -1)
                continue;
            int id = static_cast<int>(c.members.size());
            c.members.emplace_back();
            bool bipartite = true, loop = false;
            std::deque<int> queue{start};
            c.component_of[start] = id;
            while (! queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                c.members[id].push_back(v);
                for (int w : g.neighbors(v)) {
                    if (w == v) {
                        loop = true;
                        bipartite = false;
                    }
                    else if (c.component_of[w] == -1) {
                        c.component_of[w] = id;
                        c.side[w] = 1 - c.side[v];
                        queue.push_back(w);
                    }
                    else if (c.side[w] == c.side[v])
                        bipartite = false;
                }
            }
            std::sort(c.members[id].begin(), c.members[id].end());
            c.bipartite.push_back(bipartite);
            c.has_loop.push_back(loop);
        }
        return c;
    }

    auto is_bipartite(const Graph & g) -> bool
    {
        auto c = components(g);
        return std::all_of(c.bipartite.begin(), c.bipartite.end(), [](bool b) { return b; });
    }

    auto bfs_distances(const Graph & g, int source) -> vector<int>
    {
        vector<int> dist(g.size(), -1);
        std::deque<int> queue{source};
        dist.at(source) = 0;
        while (! queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(v))
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    }

    auto distance(const Graph & g, int u, int v) -> optional<int>
    {
        auto d = bfs_distances(g, u).at(v);
        if (d < 0)
            return std::nullopt;
        return d;
    }

    auto shortest_path(const Graph & g, const vector<int> & from, const vector<int> & to) -> vector<int>
    {
        int n = g.size();
        vector<bool> target(n, false);
        for (int t : to)
            target.at(t) = true;

        // Distances to the target set, then walk greedily by least label.
        vector<int> dist(n, -1);
        std::deque<int> queue;
        for (int t : to)
            if (dist[t] == -1) {
                dist[t] = 0;
                queue.push_back(t);
            }
        while (! queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(v))
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }

        int best = -1;
        for (int f : from)
            if (dist.at(f) != -1 && (best == -1 || dist[f] < dist[best] || (dist[f] == dist[best] && f < best)))
                best = f;
        if (best == -1)
            return {};

        vector<int> path{best};
        while (dist[path.back()] > 0) {
            int v = path.back();
            for (int w : g.neighbors(v))
                if (dist[w] == dist[v] - 1) {
                    path.push_back(w);
                    break;
                }
        }
        return path;
    }

    auto induced_subgraph(const Graph & g, const vector<int> & vertices) -> Graph
    {
        Graph result(static_cast<int>(vertices.size()));
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i; j < vertices.size(); ++j)
                if (g.has_edge(vertices[i], vertices[j]))
                    result.add_edge(static_cast<int>(i), static_cast<int>(j));
        return result;
    }

    auto disjoint_union(const Graph & a, const Graph & b) -> Graph
    {
        Graph result(a.size() + b.size());
        for (auto [u, v] : a.edges())
            result.add_edge(u, v);
        for (auto [u, v] : b.edges())
            result.add_edge(u + a.size(), v + a.size());
        return result;
    }

    auto path_graph(int n) -> Graph
    {
        Graph g(n);
        for (int i = 0; i + 1 < n; ++i)
            g.add_edge(i, i + 1);
        return g;
    }

    auto cycle_graph(int n) -> Graph
    {
        Graph g = path_graph(n);
        if (n >= 3)
            g.add_edge(n - 1, 0);
        return g;
    }

    auto complete_graph(int n, bool loops) -> Graph
    {
        Graph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = loops ? i : i + 1; j < n; ++j)
                g.add_edge(i, j);
        return g;
    }

    auto complete_bipartite_graph(int a, int b) -> Graph
    {
        Graph g(a + b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                g.add_edge(i, a + j);
        return g;
    }
}
