#ifndef LHOM_GRAPH_HH
#define LHOM_GRAPH_HH

#include <optional>
#include <utility>
#include <vector>

namespace lhom
{
    // Simple undirected graph on vertices 0..n-1. A loop at v is stored as v
    // being its own neighbor. Adjacency lists are kept sorted.
    class Graph
    {
    public:
        explicit Graph(int n = 0);

        auto add_vertex() -> int;
        auto add_edge(int u, int v) -> void;

        auto size() const -> int { return static_cast<int>(_adj.size()); }
        auto edge_count() const -> int { return _edges; }
        auto has_edge(int u, int v) const -> bool;
        auto has_loop(int v) const -> bool { return has_edge(v, v); }
        auto has_any_loop() const -> bool;
        auto neighbors(int v) const -> const std::vector<int> & { return _adj.at(v); }
        auto degree(int v) const -> int { return static_cast<int>(_adj.at(v).size()); }

        // Each edge once, as (u, v) with u <= v, sorted.
        auto edges() const -> std::vector<std::pair<int, int>>;

        auto operator==(const Graph &) const -> bool = default;

    private:
        std::vector<std::vector<int>> _adj;
        int _edges = 0;
    };

    struct Components
    {
        std::vector<std::vector<int>> members;
        std::vector<int> component_of;
        std::vector<bool> bipartite;
        std::vector<bool> has_loop;
        // For vertices of bipartite components, 0 or 1; the least vertex of
        // each component is on side 0.
        std::vector<int> side;
    };

    auto components(const Graph & g) -> Components;

    auto is_bipartite(const Graph & g) -> bool;

    auto distance(const Graph & g, int u, int v) -> std::optional<int>;

    auto bfs_distances(const Graph & g, int source) -> std::vector<int>;

    // Lexicographically least shortest path from any vertex of `from` to any
    // vertex of `to`, as the vertex sequence. Empty if none exists.
    auto shortest_path(const Graph & g, const std::vector<int> & from, const std::vector<int> & to)
        -> std::vector<int>;

    // Induced subgraph on `vertices` (in the given order).
    auto induced_subgraph(const Graph & g, const std::vector<int> & vertices) -> Graph;

    // Disjoint union of two graphs; vertices of b are shifted by a.size().
    auto disjoint_union(const Graph & a, const Graph & b) -> Graph;

    auto path_graph(int n) -> Graph;
    auto cycle_graph(int n) -> Graph;
    auto complete_graph(int n, bool loops = false) -> Graph;
    auto complete_bipartite_graph(int a, int b) -> Graph;
}

#endif
