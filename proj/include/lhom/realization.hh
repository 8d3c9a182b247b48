#ifndef LHOM_REALIZATION_HH
#define LHOM_REALIZATION_HH

#include <lhom/common.hh>
#include <lhom/decomposition.hh>
#include <lhom/graph.hh>
#include <lhom/relation.hh>
#include <lhom/structure.hh>

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lhom
{
    // A structure J with a tuple of distinct interface elements.
    struct Gadget
    {
        RelationalStructure structure;
        Interface interface;
    };

    enum class GadgetMode
    {
        // Out-of-relation counts are all zero and in-relation counts all equal
        // one value c: one gadget copy per tuple and a division by c^m.
        exact,
        // Lagrange interpolation over the value set of per-tuple products.
        interpolation
    };

    struct GadgetCertificate
    {
        bool valid = false;
        std::string reason;
        GadgetMode mode = GadgetMode::exact;
        // Distinct counts at tuples of the relation, and distinct nonzero
        // counts outside it, ascending.
        std::vector<Count> in_counts, out_counts;
        Count uniform = 1;
        // Kept for interpolation mode.
        ExtensionTable table;
    };

    // Checks that counts in the relation are nonzero, counts outside it are
    // not 1, and no prime divides both an in-count and a nonzero out-count.
    auto certify_gadget(const Gadget & j, const Relation & r, const TargetStructure & h) -> GadgetCertificate;

    struct RealizedRelation;
    using RelationPtr = std::shared_ptr<const RealizedRelation>;

    struct RealizedRelation
    {
        std::string name;
        Relation relation;
        std::string construction;
        Gadget gadget;
        GadgetCertificate certificate;
        std::vector<RelationPtr> uses;
        int depth = 1;
    };

    // Target structure with the edge relation of h and the relations of
    // `uses` under their names.
    auto target_with(const Graph & h, const std::vector<RelationPtr> & uses) -> TargetStructure;

    // A fresh symbol name with the given prefix.
    auto fresh_name(const std::string & prefix) -> std::string;

    // Certifies the gadget against the edge relation of h plus `uses` and
    // wraps it. A nonempty domain is added to (or intersected with) the list
    // of every gadget element first. Throws InternalError if certification
    // fails.
    auto realize(const Graph & h, const std::string & construction, Relation r, Gadget j,
        std::vector<RelationPtr> uses, const std::vector<int> & domain = {}) -> RelationPtr;

    // Symbols reachable from the given relations, by name.
    auto closure(const std::vector<RelationPtr> & relations) -> std::map<std::string, RelationPtr>;

    // The target structure holding every relation of the closure.
    auto target_for_closure(const Graph & h, const std::vector<RelationPtr> & relations) -> TargetStructure;

    using StructureOracle = std::function<Count(const RelationalStructure &, const TreeDecomposition &)>;

    struct AnswerStats
    {
        int oracle_calls = 0;
        int value_set_size = 0;
        int max_width = -1;
    };

    // The instance over the other symbols in which every tuple of `symbol`
    // is replaced by `copies` copies of j, with the matching decomposition.
    auto replace_tuples(const RelationalStructure & inst, const TreeDecomposition & td, const std::string & symbol,
        const Gadget & j, int copies) -> std::pair<RelationalStructure, TreeDecomposition>;

    // Counts homomorphisms of inst (whose signature contains rel's symbol)
    // with one call per value of the product set to an oracle for instances
    // without that symbol.
    auto answer_with_relation(const RelationalStructure & inst, const TreeDecomposition & td,
        const RealizedRelation & rel, const StructureOracle & oracle, AnswerStats * stats = nullptr,
        int threads = 1) -> Count;

    // An oracle that counts by dynamic programming against a fixed target.
    auto structure_dp_oracle(const TargetStructure & target) -> StructureOracle;

    using GraphOracle = std::function<Count(const Graph &, const ListAssignment &, const TreeDecomposition &)>;

    auto dp_graph_oracle(const Graph & h, int threads = 1) -> GraphOracle;

    // Counts instances over the edge symbol and realized relations by peeling
    // one realized symbol at a time down to list homomorphism instances of h.
    class ChainEvaluator
    {
    public:
        ChainEvaluator(const Graph & h, const std::vector<RelationPtr> & relations, GraphOracle base,
            int threads = 1);

        auto count(const RelationalStructure & inst, const TreeDecomposition & td) const -> Count;

        // Symbols of these relations are not peeled: once only they (and the
        // edge symbol) remain, the instance is counted directly against h
        // plus the plain relations.
        auto set_plain(const std::vector<RelationPtr> & relations) -> void;

        auto base_calls() const -> long { return _base_calls.load(); }

    private:
        const Graph & _h;
        std::map<std::string, RelationPtr> _symbols;
        std::vector<RelationPtr> _plain;
        GraphOracle _base;
        int _threads;
        mutable std::atomic<long> _base_calls{0};
    };

    // Lists of the instance as a full assignment, unlisted elements getting
    // every vertex of h.
    auto lists_of(const RelationalStructure & inst, int target_size) -> ListAssignment;

    // Closure operations for any target graph.
    auto realize_intersection(const Graph & h, const std::vector<RelationPtr> & parts,
        const std::vector<int> & domain = {}) -> RelationPtr;
    auto realize_composition(const Graph & h, const RelationPtr & first, const RelationPtr & second,
        const std::vector<int> & domain = {}) -> RelationPtr;
    // { (u, w) : u in from, w in to, uw an edge }.
    auto realize_edge_step(const Graph & h, const std::vector<int> & from, const std::vector<int> & to,
        const std::vector<int> & domain = {}) -> RelationPtr;
}

#endif
