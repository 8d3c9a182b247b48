#ifndef LHOM_REDUCTIONS_HH
#define LHOM_REDUCTIONS_HH

#include <lhom/common.hh>
#include <lhom/decomposition.hh>
#include <lhom/graph.hh>
#include <lhom/structure.hh>
#include <lhom/target_analysis.hh>

#include <optional>
#include <vector>

namespace lhom
{
    // Clauses hold nonzero literals over variables 1..variables; a negative
    // literal is a negated variable.
    struct CnfFormula
    {
        int variables = 0;
        std::vector<std::vector<int>> clauses;

        auto max_clause_width() const -> int;
    };

    auto validate(const CnfFormula & f) -> void;
    auto count_models_brute(const CnfFormula & f, std::uint64_t limit = 1u << 26) -> Count;

    // Groups of t boolean variables are encoded by p variables over [q].
    struct GroupingParameters
    {
        int p = 1;
        int t = 1;
        int q = 2;
        Rational delta = 0;
    };

    // (q - epsilon)^p <= (2 - delta)^t <= 2^t <= q^p, by exact powers.
    auto grouping_holds(const GroupingParameters & g, const Rational & epsilon) -> bool;

    // Least p <= max_p (then the largest t with 2^t <= q^p) admitting a
    // delta of the form 2^-k; nullopt if the search fails.
    auto choose_grouping(int q, const Rational & epsilon, int max_p = 64) -> std::optional<GroupingParameters>;

    struct SatToCsp
    {
        CspInstance csp;
        // 2^(number of variables in no clause).
        Count multiplier = 1;
        GroupingParameters params;
        // groups[i]: the formula variables of group i, ascending; CSP
        // variables i*p .. i*p+p-1 encode it.
        std::vector<std::vector<int>> groups;
    };

    // Digits (least significant first) of the group assignment read as a
    // binary number with bit j the value of the group's j-th variable.
    auto encode_group(int bits, int q, int p) -> std::vector<int>;

    auto sat_to_csp(const CnfFormula & f, const GroupingParameters & params) -> SatToCsp;

    // Truth assignment (index 1..variables, index 0 unused) of a satisfying
    // valuation; variables in no clause are left false.
    auto decode_valuation(const SatToCsp & r, const std::vector<int> & valuation, int variables)
        -> std::vector<bool>;

    struct CspToLhomOptions
    {
        // Domain of the CSP as vertices of h (value i is s[i]); chosen from
        // an irredundant witness when empty.
        std::vector<int> s;
        int max_ac_arity = 12;
        int threads = 1;
        // Realized relations of at most this depth are counted against
        // directly instead of being peeled down to plain list homomorphism
        // instances; 0 peels everything.
        int plain_depth = 0;
    };

    struct CspToLhomResult
    {
        Count count;
        std::vector<int> s;
        // Vertices of the target the gadgets were built over: h itself, or
        // its associated bipartite graph when the hard component of h is
        // not bipartite.
        bool lifted_to_bipartite = false;
        P4 anchor{};
        int relations_realized = 0;
        long base_calls = 0;
        int max_depth = 0;
    };

    // Counts satisfying valuations by realizing every distinct constraint
    // relation over S and evaluating the chain of gadget replacements with
    // the list homomorphism counter as the base.
    auto csp_to_lhom(const CspInstance & c, const Graph & h, const CspToLhomOptions & options = {})
        -> CspToLhomResult;

    struct BipartiteLift
    {
        // v' is v and v'' is v + n, for the n vertices of g; target vertices
        // likewise with |V(h)|.
        Graph graph;
        ListAssignment lists;
        Graph target;
        TreeDecomposition td;
    };

    // The associated instance over the associated bipartite graph; each bag
    // of td is doubled when a decomposition is given.
    auto bipartite_lift(const Graph & g, const ListAssignment & lists, const Graph & h,
        const std::optional<TreeDecomposition> & td = std::nullopt) -> BipartiteLift;

    // Homomorphisms f of the lift with f(v') = x' exactly when f(v'') = x'',
    // by enumeration.
    auto count_clean_brute(const BipartiteLift & lift, std::uint64_t limit = 1u << 26) -> Count;

    // For lists over the associated bipartite graph of h, in which every
    // bipartite component of g sends one side into V' and the other into
    // V'': L(v) = { x : x' or x'' in L'(v) }. Throws PreconditionError if g
    // is not bipartite or the lists are not consistent.
    auto consistent_project(const Graph & g, const ListAssignment & lists, const Graph & h) -> ListAssignment;

    struct PaddedMember
    {
        int value = -1;
        ListAssignment lists;
        // False when the value has no neighbor in h: the member is g itself
        // with v pinned to the value.
        bool padded = true;
    };

    struct PaddedFamily
    {
        Graph graph;
        TreeDecomposition td;
        int width = 0;
        int attach = -1;
        // The biclique sides; attach is the first vertex of a_side.
        std::vector<int> a_side, b_side;
        std::vector<PaddedMember> members;
    };

    // Attaches K_{t,t} at a vertex of the last bag of a path decomposition
    // of width t; the count of (g, lists) is the sum over members of the
    // padded (or, for unpadded members, original) graph's counts.
    auto pad_pathwidth(const Graph & g, const ListAssignment & lists, const TreeDecomposition & td, const Graph & h)
        -> PaddedFamily;

    auto count_padded(const PaddedFamily & family, const Graph & g, const TreeDecomposition & td, const Graph & h,
        int threads = 1) -> Count;

    // Target vertices 0..3 as the path a - b - c - d.
    struct PruneStep
    {
        Graph graph;
        ListAssignment lists;
        // Labels in the input graph of the vertices of `graph`.
        std::vector<int> labels;
    };

    // Removes vertices with lists {a} or {d} (after trimming neighbors'
    // lists) and vertices with lists {b} or {c}, until none is left. Lists
    // must lie inside {a,c} or {b,d}. Each intermediate instance is appended
    // to trace when given.
    auto prune_p4_lists(const Graph & g, const ListAssignment & lists, std::vector<PruneStep> * trace = nullptr)
        -> PruneStep;

    // Independent sets by dynamic programming over a decomposition.
    auto count_independent_sets(const Graph & g, const TreeDecomposition & td) -> Count;

    struct IndependentSetReduction
    {
        Count count;
        // The pruned graphs whose independent sets are counted, two per
        // connected component (one per orientation), empty when a list
        // became empty.
        std::vector<std::optional<Graph>> pruned;
    };

    auto lhom_p4_to_independent_sets(const Graph & g, const ListAssignment & lists, const TreeDecomposition & td)
        -> IndependentSetReduction;

    struct ColoringReduction
    {
        // g plus the clique (vertices n..n+q-1), and optionally the biclique.
        Graph graph;
        TreeDecomposition td;
        int clique_width = 0;
        bool padded = false;
        // Proper q-colorings of K_{T,T} with one vertex fixed; 1 unpadded.
        Count biclique_factor = 1;
        // The list coloring count is the coloring count of `graph` times
        // this.
        Rational scale;
    };

    // Lists hold colors 0..q-1.
    auto list_coloring_to_coloring(const Graph & g, const ListAssignment & lists, int q, const TreeDecomposition & td,
        bool pad = false) -> ColoringReduction;

    // Vertex (i, j) is i * |V(h2)| + j.
    auto direct_product(const Graph & h1, const Graph & h2) -> Graph;
}

#endif
