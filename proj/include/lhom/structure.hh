#ifndef LHOM_STRUCTURE_HH
#define LHOM_STRUCTURE_HH

#include <lhom/common.hh>
#include <lhom/graph.hh>
#include <lhom/relation.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lhom
{
    struct Symbol
    {
        std::string name;
        int arity = 0;

        auto operator==(const Symbol &) const -> bool = default;
    };

    // The name of the binary edge symbol used when a graph is viewed as a
    // structure.
    inline const std::string edge_symbol = "E";

    // A structure on the instance side: a universe 0..universe-1, a list of
    // tuples per symbol, and optional lists (unary relations restricting the
    // image of an element).
    struct RelationalStructure
    {
        int universe = 0;
        std::vector<Symbol> symbols;
        std::vector<std::vector<Tuple>> tuples;
        std::vector<std::optional<std::vector<int>>> lists;

        auto symbol_index(const std::string & name) const -> int;
        auto add_symbol(const std::string & name, int arity) -> int;
        auto add_element() -> int;
        auto add_tuple(int symbol, Tuple t) -> void;
        auto set_list(int element, std::vector<int> list) -> void;
        auto tuple_count() const -> std::size_t;
    };

    // A structure on the target side, with one relation per symbol.
    struct TargetStructure
    {
        int universe = 0;
        std::vector<Symbol> symbols;
        std::vector<Relation> relations;

        auto symbol_index(const std::string & name) const -> int;
        auto add_symbol(const std::string & name, Relation r) -> int;
        // ||H||: universe size plus the sum of arity times relation size.
        auto encoding_size() const -> std::uint64_t;
    };

    using Interface = std::vector<int>;

    // Nonzero entries of y -> hom((J, x), (H, y)).
    using ExtensionTable = std::map<Tuple, Count>;

    // Budget on search nodes visited by the enumerators below.
    inline constexpr std::uint64_t default_search_budget = 400'000'000;

    auto extension_counts(const RelationalStructure & j, const Interface & x, const TargetStructure & h,
        std::uint64_t budget = default_search_budget) -> ExtensionTable;

    auto lookup(const ExtensionTable & table, const Tuple & y) -> Count;

    // All homomorphisms from `instance` to `target` respecting lists, by
    // backtracking. Each symbol of the instance must appear in the target
    // with the same arity.
    auto count_homomorphisms_backtracking(const RelationalStructure & instance, const TargetStructure & target,
        std::uint64_t budget = default_search_budget) -> Count;

    auto graph_as_structure(const Graph & h) -> TargetStructure;
    auto graph_instance(const Graph & g, const ListAssignment & lists) -> RelationalStructure;

    // Checks that the instance only uses symbols of the target with matching
    // arities and in-range elements and values.
    auto check_compatible(const RelationalStructure & instance, const TargetStructure & target) -> void;

    struct CspConstraint
    {
        std::vector<int> scope;
        std::vector<Tuple> allowed;
    };

    struct CspInstance
    {
        int variables = 0;
        int domain = 0;
        std::vector<CspConstraint> constraints;
    };

    auto validate(const CspInstance & c) -> void;
    auto count_csp_brute(const CspInstance & c, std::uint64_t budget = default_search_budget) -> Count;

    // One symbol per distinct constraint relation; the target has universe
    // equal to the CSP domain.
    auto csp_to_lhom_structure(const CspInstance & c) -> std::pair<RelationalStructure, TargetStructure>;
}

#endif
