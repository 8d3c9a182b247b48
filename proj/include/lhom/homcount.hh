#ifndef LHOM_HOMCOUNT_HH
#define LHOM_HOMCOUNT_HH

#include <lhom/common.hh>
#include <lhom/decomposition.hh>
#include <lhom/graph.hh>
#include <lhom/structure.hh>
#include <lhom/target_analysis.hh>

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace lhom
{
    // Brute-force counters refuse instances whose list-size product exceeds
    // this.
    inline constexpr std::uint64_t default_brute_limit = 100'000'000;

    auto full_lists(int n, const Graph & h) -> ListAssignment;

    // Lists must have one sorted, in-range entry per vertex of g.
    auto validate_lists(const Graph & g, const ListAssignment & lists, const Graph & h) -> void;

    auto count_brute(const Graph & g, const ListAssignment & lists, const Graph & h,
        std::uint64_t limit = default_brute_limit) -> Count;

    auto count_structure_brute(const RelationalStructure & instance, const TargetStructure & target,
        std::uint64_t limit = default_brute_limit) -> Count;

    // For a connected bipartite g and a bipartite component of h: the list
    // assignment sending the side of g holding its least vertex into the
    // component's side_x (first) or side_y (second), and the other side into
    // the opposite side.
    auto split_orientations(const Graph & g, const ListAssignment & lists, const ComponentAnalysis & component)
        -> std::pair<ListAssignment, ListAssignment>;

    struct CompressedLists
    {
        // One representative (least label) per neighborhood class met.
        ListAssignment lists;
        // weights[v][i]: how many vertices of lists[v]'s class were in the
        // original list.
        std::vector<std::vector<int>> weights;
    };

    auto compress(const ListAssignment & lists, const Graph & h) -> CompressedLists;

    struct DpStats
    {
        std::size_t max_table_size = 0;
        std::size_t max_list_size = 0;
        int max_bag_size = 0;
        std::size_t nodes = 0;

        auto absorb(const DpStats & other) -> void;
    };

    struct DpOptions
    {
        int threads = 1;
    };

    struct DpResult
    {
        Count count;
        DpStats stats;
    };

    // Counts list homomorphisms by dynamic programming over a nice tree
    // decomposition, one connected component of g and of h at a time, with
    // lists compressed to neighborhood classes.
    auto count_dp(const Graph & g, const ListAssignment & lists, const TreeDecomposition & td, const Graph & h,
        const DpOptions & options = {}) -> DpResult;

    // Weighted count over compressed lists for a whole graph, without
    // splitting into components.
    auto count_weighted(const Graph & g, const CompressedLists & lists, const NiceTreeDecomposition & nice,
        const Graph & h, const DpOptions & options, DpStats & stats) -> Count;

    // The same dynamic programme for arbitrary structures, with sparse
    // tables. The decomposition must be valid for the Gaifman graph.
    auto count_structure_dp(const RelationalStructure & instance, const TargetStructure & target,
        const TreeDecomposition & td) -> Count;
}

#endif
