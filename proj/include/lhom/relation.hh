#ifndef LHOM_RELATION_HH
#define LHOM_RELATION_HH

#include <lhom/common.hh>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lhom
{
    // A finite relation over integer values. Stored either as an explicit
    // sorted tuple list, or as a product of per-coordinate domains minus a
    // sorted list of excluded tuples (for relations that are nearly full).
    class Relation
    {
    public:
        explicit Relation(int arity = 0);

        static auto from_tuples(int arity, std::vector<Tuple> tuples) -> Relation;
        static auto box_minus(std::vector<std::vector<int>> box, std::vector<Tuple> excluded) -> Relation;

        auto arity() const -> int { return _arity; }
        auto is_explicit() const -> bool { return ! _complement; }
        auto size() const -> std::uint64_t;
        auto empty() const -> bool { return size() == 0; }

        auto contains(const Tuple & t) const -> bool;
        auto contains(const int * values) const -> bool;

        // Whether some member agrees with `values` on every position whose
        // `assigned` flag is set.
        auto supports(const int * values, const char * assigned) const -> bool;

        auto for_each(const std::function<void(const Tuple &)> & f) const -> void;
        auto tuples() const -> std::vector<Tuple>;

        // For binary relations: { w : (v, w) in R }.
        auto image(int v) const -> std::vector<int>;

        // A string identifying the stored representation.
        auto key() const -> std::string;

        auto operator==(const Relation & other) const -> bool;

        friend auto intersect_all(const std::vector<const Relation *> & parts) -> Relation;

    private:
        int _arity;
        bool _complement = false;
        std::vector<std::vector<int>> _box;
        std::vector<Tuple> _tuples;
    };

    auto intersect(const Relation & a, const Relation & b) -> Relation;
    auto intersect_all(const std::vector<const Relation *> & parts) -> Relation;

    // Composition of binary relations: { (u, w) : (u, v) in a, (v, w) in b }.
    auto compose(const Relation & a, const Relation & b) -> Relation;

    auto to_string(const Relation & r) -> std::string;
}

#endif
