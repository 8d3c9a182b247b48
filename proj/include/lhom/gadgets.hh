#ifndef LHOM_GADGETS_HH
#define LHOM_GADGETS_HH

#include <lhom/common.hh>
#include <lhom/graph.hh>
#include <lhom/realization.hh>
#include <lhom/relation.hh>
#include <lhom/target_analysis.hh>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lhom
{
    // R is a subset of S x {alpha, beta}, sends x to alpha only, allows y to
    // beta, and allows every element of S at least one of the two.
    auto is_distinguisher(const Relation & r, int x, int y, const std::vector<int> & s, int alpha, int beta)
        -> bool;

    // A distinguisher that also keeps y away from alpha.
    auto is_forcer(const Relation & r, int x, int y, const std::vector<int> & s, int alpha, int beta) -> bool;

    // R is a subset of S x {a, c} with R(v) = {a} on X and {c} on Y, where S is
    // the union of X and Y.
    auto is_partitioner(
        const Relation & r, const std::vector<int> & xs, const std::vector<int> & ys, int a, int c) -> bool;

    // I is a subset of S x W^k with nonempty, pairwise disjoint rows I(x).
    auto is_indicator(const Relation & i, const std::vector<int> & s) -> bool;

    struct Indicator
    {
        RelationPtr relation;
        std::vector<int> s;
        // ids[i]: the least element of I(s[i]).
        std::vector<Tuple> ids;
    };

    struct LibraryOptions
    {
        // Largest q for which relations inside {a,c}^q are built.
        int max_ac_arity = 12;
    };

    struct ForcerFamily
    {
        // Forcers with respect to (a,c), (c,a), (b,d) and (d,b) of one P4.
        RelationPtr ac, ca, bd, db;
    };

    struct PropagationResult
    {
        RelationPtr forcer;
        // The P4 the forcer was first obtained on, and the number of moves
        // between adjacent P4s needed to reach the anchor.
        P4 start;
        int hops = 0;
    };

    struct LibraryStats
    {
        int relations = 0;
        int purifications = 0;
        int forcer_calls = 0;
        int max_forcer_depth = 0;
    };

    // Constructions of realizable relations over a connected, irredundant,
    // bipartite graph with a fixed induced P4 (a, b, c, d) as anchor. Built
    // relations are memoized; an instance is not safe for concurrent use.
    class GadgetLibrary
    {
    public:
        GadgetLibrary(const Graph & h, P4 anchor, LibraryOptions options = {});

        auto graph() const -> const Graph & { return _h; }
        auto anchor() const -> const P4 & { return _anchor; }
        auto stats() const -> const LibraryStats & { return _stats; }

        // { (a,c), (c,a) } by a five-vertex path.
        auto neq(const P4 & p) -> RelationPtr;
        // {a,c}^q minus c^q by a star.
        auto or_relation(const P4 & p, int q) -> RelationPtr;
        // {a,c}^q minus f, by flipping a-coordinates of f one at a time.
        auto excluding(const P4 & p, const Tuple & f) -> RelationPtr;
        // Any relation inside {a,c}^q.
        auto ac_relation(const P4 & p, const Relation & r) -> RelationPtr;

        // The gadget path t - u1 - t' - u2 - u3 with r on (s,t) and (s,t'),
        // turning an (x,y,S)-distinguisher w.r.t. (a,c) into a forcer.
        auto purify(const RelationPtr & r, const P4 & p) -> RelationPtr;
        // An (x,y,S)-forcer w.r.t. (a,c) of p from a distinguisher w.r.t.
        // (a,c) or (c,a) of p.
        auto forcer_wrt_ac(const RelationPtr & r, int x, int y, const std::vector<int> & s, const P4 & p)
            -> RelationPtr;
        auto distinguisher_to_forcer(const RelationPtr & r, int x, int y, const std::vector<int> & s, const P4 & p)
            -> ForcerFamily;
        // From an (x,y,S)-distinguisher w.r.t. any one-sided (alpha, beta) to
        // an (x,y,S)-forcer w.r.t. (a,c) of the anchor.
        auto forcer_on_p4(const RelationPtr & r, int x, int y, const std::vector<int> & s, int alpha, int beta)
            -> PropagationResult;

        // An (x,y,S)-forcer w.r.t. (a,c) of the anchor, for one-sided S.
        auto build_forcer(int x, int y, const std::vector<int> & s) -> RelationPtr;
        auto build_indicator(const std::vector<int> & s) -> Indicator;
        // Any relation inside S^p x {a,c}^q, p >= 1, q >= 0.
        auto realize_over(const std::vector<int> & s, int p, int q, const Relation & r) -> RelationPtr;
        auto build_partitioner(const std::vector<int> & xs, const std::vector<int> & ys) -> RelationPtr;

    private:
        auto forcer_for_pair(const RelationPtr & f, const P4 & p, int s, int t, int x, int y,
            const std::vector<int> & set) -> RelationPtr;
        auto compose(const RelationPtr & first, const RelationPtr & second) -> RelationPtr;
        auto edge_step(const std::vector<int> & from, const std::vector<int> & to) -> RelationPtr;
        auto finish(RelationPtr r) -> RelationPtr;
        auto build_forcer_at(int x, int y, const std::vector<int> & s, int depth) -> RelationPtr;
        auto build_indicator_at(const std::vector<int> & s, int depth) -> Indicator;
        auto realize_over_at(const std::vector<int> & s, int p, int q, const Relation & r, int depth)
            -> RelationPtr;
        auto build_partitioner_at(const std::vector<int> & xs, const std::vector<int> & ys, int depth)
            -> RelationPtr;
        auto one_sided(const std::vector<int> & s) const -> bool;

        const Graph & _h;
        P4 _anchor;
        LibraryOptions _options;
        Components _components;
        P4Structure _p4s;
        int _depth_guard;
        LibraryStats _stats;
        std::map<std::string, RelationPtr> _memo;
        std::map<std::string, Indicator> _indicators;
    };

    // The induced subgraph on a maximal irredundant superset of S inside the
    // hard component containing S, with the labels of its vertices in h.
    struct IrredundantView
    {
        Graph graph;
        std::vector<int> labels;
        // Position in graph of each vertex of h, or -1.
        std::vector<int> position;
        P4 anchor;
    };

    // S must be one-sided in a connected bipartite component of h with
    // irr >= 2 and irredundant. The anchor is the least induced P4 of the view
    // whose {a,c} lies on the side of S, when one exists.
    auto irredundant_view(const Graph & h, const std::vector<int> & s) -> IrredundantView;

    // An oracle for list homomorphism counts into view.graph answered by
    // counting into h after relabelling the lists.
    auto lifted_oracle(const Graph & h, const IrredundantView & view, int threads = 1) -> GraphOracle;
}

#endif
