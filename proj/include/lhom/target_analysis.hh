#ifndef LHOM_TARGET_ANALYSIS_HH
#define LHOM_TARGET_ANALYSIS_HH

#include <lhom/graph.hh>

#include <string>
#include <vector>

namespace lhom
{
    // Partition of `vertices` by neighborhood. Classes are sorted, and listed
    // by least member.
    auto neighborhood_classes(const Graph & h, const std::vector<int> & vertices) -> std::vector<std::vector<int>>;

    auto is_irredundant(const Graph & h, const std::vector<int> & vertices) -> bool;

    // S plus the least vertex of every neighborhood class of `pool` that S
    // does not already represent.
    auto maximal_irredundant_superset(const Graph & h, const std::vector<int> & s, const std::vector<int> & pool)
        -> std::vector<int>;

    enum class ComponentKind
    {
        reflexive_clique,
        biclique,
        hard
    };

    auto to_string(ComponentKind k) -> std::string;

    struct ComponentAnalysis
    {
        std::vector<int> vertices;
        bool bipartite = false;
        bool has_loop = false;
        // Sides of a bipartite component; side_x holds its least vertex.
        std::vector<int> side_x, side_y;
        int irr = 0;
        // Pairwise distinct neighborhoods, of size irr.
        std::vector<int> witness;
        ComponentKind kind = ComponentKind::hard;
    };

    struct IrrCertificate
    {
        int value = 0;
        std::vector<int> witness;
        int component = -1;
        std::vector<ComponentAnalysis> components;
    };

    auto analyse_component(const Graph & h, const std::vector<int> & vertices) -> ComponentAnalysis;

    // Requires at least one vertex.
    auto irr(const Graph & h) -> IrrCertificate;

    // Vertex v maps to v (the primed copy) and v + n (the double-primed copy).
    auto associated_bipartite(const Graph & h) -> Graph;

    // An induced path a - b - c - d.
    struct P4
    {
        int a, b, c, d;

        auto vertices() const -> std::vector<int>;
        auto reversed() const -> P4 { return {d, c, b, a}; }
        auto operator==(const P4 &) const -> bool = default;
    };

    auto is_induced_p4(const Graph & h, const P4 & p) -> bool;

    // Every induced P4, one orientation each (a < d), sorted.
    auto induced_p4s(const Graph & h) -> std::vector<P4>;

    struct P4Structure
    {
        bool applicable = false;
        std::vector<P4> p4s;
        // Adjacency between indices into p4s; every node is also adjacent
        // to itself, which is left implicit.
        std::vector<std::vector<int>> adjacency;
        bool connected = false;
    };

    // Applicable only to connected bipartite irredundant graphs. Two P4s are
    // adjacent when they share both of their vertices on one side.
    auto p4_structure(const Graph & h) -> P4Structure;

    auto find_p4(const P4Structure & s, const std::vector<int> & vertex_set) -> int;

    // Shortest path of P4 indices (inclusive). Empty if unreachable.
    auto p4_path(const P4Structure & s, int from, int to) -> std::vector<int>;
}

#endif
