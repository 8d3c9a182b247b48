#include <lhom/relation.hh>

#include <algorithm>
#include <limits>
#include <set>

using std::string;
using std::uint64_t;
using std::vector;

namespace lhom
{
    namespace
    {
        auto normalise(vector<Tuple> & tuples) -> void
        {
            std::sort(tuples.begin(), tuples.end());
            tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
        }

        auto in_domain(const vector<int> & domain, int v) -> bool
        {
            return std::binary_search(domain.begin(), domain.end(), v);
        }

        constexpr uint64_t materialise_limit = 50'000'000;
    }

    Relation::Relation(int arity) :
        _arity(arity)
    {
        if (arity < 0)
            throw PreconditionError("negative arity");
    }

    auto Relation::from_tuples(int arity, vector<Tuple> tuples) -> Relation
    {
        Relation r(arity);
        for (auto & t : tuples)
            if (static_cast<int>(t.size()) != arity)
                throw PreconditionError("tuple arity mismatch");
        normalise(tuples);
        r._tuples = std::move(tuples);
        return r;
    }

    auto Relation::box_minus(vector<vector<int>> box, vector<Tuple> excluded) -> Relation
    {
        Relation r(static_cast<int>(box.size()));
        r._complement = true;
        for (auto & d : box) {
            std::sort(d.begin(), d.end());
            d.erase(std::unique(d.begin(), d.end()), d.end());
        }
        vector<Tuple> kept;
        for (auto & t : excluded) {
            if (static_cast<int>(t.size()) != r._arity)
                throw PreconditionError("tuple arity mismatch");
            bool inside = true;
            for (int i = 0; i < r._arity; ++i)
                inside = inside && in_domain(box[i], t[i]);
            if (inside)
                kept.push_back(std::move(t));
        }
        normalise(kept);
        r._box = std::move(box);
        r._tuples = std::move(kept);
        return r;
    }

    auto Relation::size() const -> uint64_t
    {
        if (! _complement)
            return _tuples.size();
        uint64_t product = 1;
        for (auto & d : _box) {
            if (d.empty())
                return 0;
            if (product > materialise_limit * 64)
                throw SizeError("relation too large to measure");
            product *= d.size();
        }
        return product - _tuples.size();
    }

    auto Relation::contains(const Tuple & t) const -> bool
    {
        if (static_cast<int>(t.size()) != _arity)
            return false;
        return contains(t.data());
    }

    auto Relation::contains(const int * values) const -> bool
    {
        auto less = [&](const Tuple & t, const int *) {
            return std::lexicographical_compare(t.begin(), t.end(), values, values + _arity);
        };
        auto it = std::lower_bound(_tuples.begin(), _tuples.end(), values, less);
        bool listed = it != _tuples.end() && std::equal(it->begin(), it->end(), values);
        if (! _complement)
            return listed;
        for (int i = 0; i < _arity; ++i)
            if (! in_domain(_box[i], values[i]))
                return false;
        return ! listed;
    }

    auto Relation::supports(const int * values, const char * assigned) const -> bool
    {
        auto matches = [&](const Tuple & t) {
            for (int i = 0; i < _arity; ++i)
                if (assigned[i] && t[i] != values[i])
                    return false;
            return true;
        };

        if (! _complement) {
            for (auto & t : _tuples)
                if (matches(t))
                    return true;
            return false;
        }

        uint64_t completions = 1;
        bool all_assigned = true;
        for (int i = 0; i < _arity; ++i) {
            if (assigned[i]) {
                if (! in_domain(_box[i], values[i]))
                    return false;
            }
            else {
                all_assigned = false;
                if (_box[i].empty())
                    return false;
                if (completions <= _tuples.size())
                    completions *= _box[i].size();
            }
        }
        if (all_assigned)
            return contains(values);
        if (completions > _tuples.size())
            return true;
        uint64_t excluded = 0;
        for (auto & t : _tuples)
            if (matches(t))
                ++excluded;
        return excluded < completions;
    }

    auto Relation::for_each(const std::function<void(const Tuple &)> & f) const -> void
    {
        if (! _complement) {
            for (auto & t : _tuples)
                f(t);
            return;
        }
        if (size() > materialise_limit)
            throw SizeError("relation too large to enumerate");
        for (auto & d : _box)
            if (d.empty())
                return;
        Tuple t(_arity);
        vector<int> digit(_arity, 0);
        for (int i = 0; i < _arity; ++i)
            t[i] = _box[i][0];
        while (true) {
            if (! std::binary_search(_tuples.begin(), _tuples.end(), t))
                f(t);
            int i = _arity - 1;
            while (i >= 0 && digit[i] + 1 == static_cast<int>(_box[i].size())) {
                digit[i] = 0;
                t[i] = _box[i][0];
                --i;
            }
            if (i < 0)
                break;
            ++digit[i];
            t[i] = _box[i][digit[i]];
        }
    }

    auto Relation::tuples() const -> vector<Tuple>
    {
        if (! _complement)
            return _tuples;
        vector<Tuple> result;
        for_each([&](const Tuple & t) { result.push_back(t); });
        return result;
    }

    auto Relation::image(int v) const -> vector<int>
    {
        if (_arity != 2)
            throw PreconditionError("image of a non-binary relation");
        std::set<int> result;
        for_each([&](const Tuple & t) {
            if (t[0] == v)
                result.insert(t[1]);
        });
        return {result.begin(), result.end()};
    }

    auto Relation::key() const -> string
    {
        string k = std::to_string(_arity) + (_complement ? "~" : ":");
        if (_complement)
            for (auto & d : _box) {
                k += '[';
                for (int v : d)
                    k += std::to_string(v) + ',';
                k += ']';
            }
        for (auto & t : _tuples) {
            k += '(';
            for (int v : t)
                k += std::to_string(v) + ',';
            k += ')';
        }
        return k;
    }

    auto Relation::operator==(const Relation & other) const -> bool
    {
        if (_arity != other._arity)
            return false;
        if (_complement == other._complement && _box == other._box && _tuples == other._tuples)
            return true;
        return tuples() == other.tuples();
    }

    auto intersect(const Relation & a, const Relation & b) -> Relation
    {
        if (a.arity() != b.arity())
            throw PreconditionError("intersecting relations of different arity");
        vector<Tuple> result;
        const Relation & small = a.size() <= b.size() ? a : b;
        const Relation & large = a.size() <= b.size() ? b : a;
        small.for_each([&](const Tuple & t) {
            if (large.contains(t))
                result.push_back(t);
        });
        return Relation::from_tuples(a.arity(), std::move(result));
    }

    auto intersect_all(const vector<const Relation *> & parts) -> Relation
    {
        if (parts.empty())
            throw PreconditionError("intersection of no relations");
        bool boxes = true;
        for (auto * p : parts)
            boxes = boxes && p->_complement && p->_box == parts.front()->_box;
        if (boxes) {
            vector<Tuple> excluded;
            for (auto * p : parts)
                excluded.insert(excluded.end(), p->_tuples.begin(), p->_tuples.end());
            return Relation::box_minus(parts.front()->_box, std::move(excluded));
        }
        Relation r = *parts.front();
        for (auto * p : parts)
            r = intersect(r, *p);
        return r;
    }

    auto compose(const Relation & a, const Relation & b) -> Relation
    {
        if (a.arity() != 2 || b.arity() != 2)
            throw PreconditionError("composing non-binary relations");
        auto bt = b.tuples();
        vector<Tuple> result;
        a.for_each([&](const Tuple & t) {
            auto it = std::lower_bound(bt.begin(), bt.end(), Tuple{t[1], std::numeric_limits<int>::min()});
            for (; it != bt.end() && (*it)[0] == t[1]; ++it)
                result.push_back({t[0], (*it)[1]});
        });
        return Relation::from_tuples(2, std::move(result));
    }

    auto to_string(const Relation & r) -> string
    {
        string s = "{";
        bool first = true;
        r.for_each([&](const Tuple & t) {
            s += first ? "(" : ", (";
            first = false;
            for (std::size_t i = 0; i < t.size(); ++i)
                s += (i ? "," : "") + std::to_string(t[i]);
            s += ')';
        });
        return s + "}";
    }
}
