#ifndef LHOM_DECOMPOSITION_HH
#define LHOM_DECOMPOSITION_HH

#include <lhom/graph.hh>
#include <lhom/structure.hh>

#include <utility>
#include <vector>

namespace lhom
{
    // Bags are sorted vertex sets; edges join bag indices. A path
    // decomposition is one whose tree is a path.
    struct TreeDecomposition
    {
        std::vector<std::vector<int>> bags;
        std::vector<std::pair<int, int>> edges;

        auto width() const -> int;
        auto add_bag(std::vector<int> bag) -> int;
    };

    enum class ViolationKind
    {
        uncovered_vertex,
        uncovered_edge,
        disconnected_occurrence,
        not_a_tree
    };

    struct Violation
    {
        ViolationKind kind;
        int first = -1;
        int second = -1;
    };

    struct ValidationReport
    {
        std::vector<Violation> violations;

        auto ok() const -> bool { return violations.empty(); }
    };

    // Out-of-range bag vertices or tree edge endpoints raise InputError;
    // structural defects are reported.
    auto validate(const Graph & g, const TreeDecomposition & td) -> ValidationReport;

    auto is_path_shaped(const TreeDecomposition & td) -> bool;

    // Bag indices in path order, starting from the end with the smaller index.
    auto path_order(const TreeDecomposition & td) -> std::vector<int>;

    auto single_bag_decomposition(const Graph & g) -> TreeDecomposition;

    // Decomposition from an elimination ordering of all vertices.
    auto decomposition_from_order(const Graph & g, const std::vector<int> & order) -> TreeDecomposition;

    // Greedy minimum-degree elimination, ties broken by least label.
    auto min_degree_decomposition(const Graph & g) -> TreeDecomposition;

    // Path decomposition along a vertex order: bag i holds order[i] and every
    // earlier vertex that still has a neighbor at position i or later.
    auto path_decomposition_from_order(const Graph & g, const std::vector<int> & order) -> TreeDecomposition;

    enum class NiceKind
    {
        leaf,
        introduce,
        forget,
        join
    };

    struct NiceNode
    {
        NiceKind kind;
        int vertex = -1;
        std::vector<int> bag;
        std::vector<int> children;
    };

    // Nodes are stored so that every child precedes its parent; the root is
    // the last node and has an empty bag.
    struct NiceTreeDecomposition
    {
        std::vector<NiceNode> nodes;

        auto root() const -> int { return static_cast<int>(nodes.size()) - 1; }
    };

    // Requires a valid decomposition of some graph (a tree, or no bags).
    auto make_nice(const TreeDecomposition & td) -> NiceTreeDecomposition;

    auto gaifman(const RelationalStructure & s) -> Graph;

    struct Insertion
    {
        std::vector<int> anchor;
        std::vector<int> vertices;
    };

    // For each insertion, finds the first bag containing the whole anchor and
    // splices a new bag (that bag plus the inserted vertices) next to it.
    auto td_for_augmented_instance(const TreeDecomposition & td, const std::vector<Insertion> & insertions)
        -> TreeDecomposition;

    // Keeps vertices v with relabel[v] >= 0, renamed to relabel[v].
    auto restrict_decomposition(const TreeDecomposition & td, const std::vector<int> & relabel) -> TreeDecomposition;
}

#endif
