#include <lhom/structure.hh>

#include <algorithm>
#include <functional>
#include <set>

using std::optional;
using std::pair;
using std::string;
using std::uint64_t;
using std::vector;

namespace lhom
{
    auto RelationalStructure::symbol_index(const string & name) const -> int
    {
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].name == name)
                return static_cast<int>(i);
        return -1;
    }

    auto RelationalStructure::add_symbol(const string & name, int arity) -> int
    {
        int i = symbol_index(name);
        if (i != -1) {
            if (symbols[i].arity != arity)
                throw PreconditionError("symbol " + name + " redeclared with a different arity");
            return i;
        }
        symbols.push_back({name, arity});
        tuples.emplace_back();
        return static_cast<int>(symbols.size()) - 1;
    }

    auto RelationalStructure::add_element() -> int
    {
        lists.resize(universe);
        lists.emplace_back();
        return universe++;
    }

    auto RelationalStructure::add_tuple(int symbol, Tuple t) -> void
    {
        if (static_cast<int>(t.size()) != symbols.at(symbol).arity)
            throw PreconditionError("tuple arity mismatch for symbol " + symbols.at(symbol).name);
        for (int e : t)
            if (e < 0 || e >= universe)
                throw PreconditionError("tuple element out of range");
        tuples.at(symbol).push_back(std::move(t));
    }

    auto RelationalStructure::set_list(int element, vector<int> list) -> void
    {
        lists.resize(universe);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        lists.at(element) = std::move(list);
    }

    auto RelationalStructure::tuple_count() const -> std::size_t
    {
        std::size_t n = 0;
        for (auto & t : tuples)
            n += t.size();
        return n;
    }

    auto TargetStructure::symbol_index(const string & name) const -> int
    {
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].name == name)
                return static_cast<int>(i);
        return -1;
    }

    auto TargetStructure::add_symbol(const string & name, Relation r) -> int
    {
        if (symbol_index(name) != -1)
            throw PreconditionError("duplicate target symbol " + name);
        symbols.push_back({name, r.arity()});
        relations.push_back(std::move(r));
        return static_cast<int>(symbols.size()) - 1;
    }

    auto TargetStructure::encoding_size() const -> uint64_t
    {
        uint64_t n = universe;
        for (auto & r : relations)
            n += r.size() * r.arity();
        return n;
    }

    auto check_compatible(const RelationalStructure & instance, const TargetStructure & target) -> void
    {
        for (std::size_t s = 0; s < instance.symbols.size(); ++s) {
            if (instance.tuples[s].empty())
                continue;
            int t = target.symbol_index(instance.symbols[s].name);
            if (t == -1)
                throw PreconditionError("symbol " + instance.symbols[s].name + " missing from target");
            if (target.symbols[t].arity != instance.symbols[s].arity)
                throw PreconditionError("symbol " + instance.symbols[s].name + " has different arities");
            for (auto & tuple : instance.tuples[s])
                for (int e : tuple)
                    if (e < 0 || e >= instance.universe)
                        throw PreconditionError("tuple element out of range");
        }
        for (auto & l : instance.lists)
            if (l)
                for (int v : *l)
                    if (v < 0 || v >= target.universe)
                        throw PreconditionError("list value out of range");
    }

    namespace
    {
        struct Constraint
        {
            const Relation * relation;
            Tuple elements;
            bool partial;
        };

        class Search
        {
        public:
            Search(const RelationalStructure & j, const TargetStructure & h, const vector<int> & first, uint64_t budget) :
                _budget(budget)
            {
                check_compatible(j, h);
                int n = j.universe;
                _value.assign(n, -1);
                _assigned.assign(n, false);
                _domain.resize(n);
                for (int e = 0; e < n; ++e) {
                    if (e < static_cast<int>(j.lists.size()) && j.lists[e]) {
                        for (int v : *j.lists[e])
                            if (v >= 0 && v < h.universe)
                                _domain[e].push_back(v);
                    }
                    else
                        for (int v = 0; v < h.universe; ++v)
                            _domain[e].push_back(v);
                }

                _of.resize(n);
                for (std::size_t s = 0; s < j.symbols.size(); ++s) {
                    if (j.tuples[s].empty())
                        continue;
                    const Relation * r = &h.relations[h.symbol_index(j.symbols[s].name)];
                    bool partial = ! r->is_explicit() || r->size() <= 20000;
                    for (auto & t : j.tuples[s]) {
                        int id = static_cast<int>(_constraints.size());
                        _constraints.push_back({r, t, partial});
                        std::set<int> distinct(t.begin(), t.end());
                        for (int e : distinct)
                            _of[e].push_back(id);
                    }
                }

                // Order: the given prefix, then repeatedly the element most
                // tied to already ordered ones.
                vector<bool> placed(n, false);
                for (int e : first)
                    if (! placed.at(e)) {
                        placed[e] = true;
                        _order.push_back(e);
                    }
                _prefix = static_cast<int>(_order.size());
                vector<int> ties(n, 0);
                auto place = [&](int e) {
                    placed[e] = true;
                    _order.push_back(e);
                };
                for (int e : _order)
                    for (int c : _of[e])
                        for (int f : _constraints[c].elements)
                            ++ties[f];
                while (static_cast<int>(_order.size()) < n) {
                    int best = -1;
                    for (int e = 0; e < n; ++e)
                        if (! placed[e] && (best == -1 || ties[e] > ties[best]
                                || (ties[e] == ties[best] && _domain[e].size() < _domain[best].size())))
                            best = e;
                    place(best);
                    for (int c : _of[best])
                        for (int f : _constraints[c].elements)
                            ++ties[f];
                }
            }

            auto prefix() const -> int { return _prefix; }

            auto walk(int d, int stop, const std::function<void()> & at_stop) -> void
            {
                if (d == stop) {
                    at_stop();
                    return;
                }
                int e = _order[d];
                for (int v : _domain[e]) {
                    tick();
                    _value[e] = v;
                    _assigned[e] = true;
                    if (consistent(e))
                        walk(d + 1, stop, at_stop);
                    _assigned[e] = false;
                }
            }

            auto count_from(int d) -> Count
            {
                if (d == static_cast<int>(_order.size()))
                    return 1;
                int e = _order[d];
                Count total = 0;
                for (int v : _domain[e]) {
                    tick();
                    _value[e] = v;
                    _assigned[e] = true;
                    if (consistent(e))
                        total += count_from(d + 1);
                    _assigned[e] = false;
                }
                return total;
            }

            auto value(int e) const -> int { return _value[e]; }

        private:
            auto tick() -> void
            {
                if (++_nodes > _budget)
                    throw SizeError("enumeration budget exceeded");
            }

            auto consistent(int e) -> bool
            {
                for (int c : _of[e]) {
                    auto & con = _constraints[c];
                    std::size_t k = con.elements.size();
                    _values.resize(k);
                    _flags.resize(k);
                    bool all = true;
                    for (std::size_t i = 0; i < k; ++i) {
                        int f = con.elements[i];
                        _flags[i] = _assigned[f];
                        _values[i] = _assigned[f] ? _value[f] : -1;
                        all = all && _assigned[f];
                    }
                    if (all) {
                        if (! con.relation->contains(_values.data()))
                            return false;
                    }
                    else if (con.partial && ! con.relation->supports(_values.data(), _flags.data()))
                        return false;
                }
                return true;
            }

            uint64_t _budget;
            uint64_t _nodes = 0;
            vector<int> _value;
            vector<bool> _assigned;
            vector<vector<int>> _domain;
            vector<Constraint> _constraints;
            vector<vector<int>> _of;
            vector<int> _order;
            int _prefix = 0;
            vector<int> _values;
            vector<char> _flags;
        };
    }

    auto extension_counts(const RelationalStructure & j, const Interface & x, const TargetStructure & h, uint64_t budget)
        -> ExtensionTable
    {
        for (int e : x)
            if (e < 0 || e >= j.universe)
                throw PreconditionError("interface element out of range");
        Search search(j, h, x, budget);
        ExtensionTable table;
        search.walk(0, search.prefix(), [&]() {
            Count c = search.count_from(search.prefix());
            if (c != 0) {
                Tuple y;
                y.reserve(x.size());
                for (int e : x)
                    y.push_back(search.value(e));
                table[y] += c;
            }
        });
        return table;
    }

    auto lookup(const ExtensionTable & table, const Tuple & y) -> Count
    {
        auto it = table.find(y);
        return it == table.end() ? Count{0} : it->second;
    }

    auto count_homomorphisms_backtracking(const RelationalStructure & instance, const TargetStructure & target,
        uint64_t budget) -> Count
    {
        Search search(instance, target, {}, budget);
        return search.count_from(0);
    }

    auto graph_as_structure(const Graph & h) -> TargetStructure
    {
        vector<Tuple> tuples;
        for (int u = 0; u < h.size(); ++u)
            for (int v : h.neighbors(u))
                tuples.push_back({u, v});
        TargetStructure t;
        t.universe = h.size();
        t.add_symbol(edge_symbol, Relation::from_tuples(2, std::move(tuples)));
        return t;
    }

    auto graph_instance(const Graph & g, const ListAssignment & lists) -> RelationalStructure
    {
        RelationalStructure s;
        s.universe = g.size();
        s.lists.resize(g.size());
        int e = s.add_symbol(edge_symbol, 2);
        for (auto [u, v] : g.edges())
            s.add_tuple(e, {u, v});
        if (! lists.empty()) {
            if (static_cast<int>(lists.size()) != g.size())
                throw PreconditionError("list assignment size mismatch");
            for (int v = 0; v < g.size(); ++v)
                s.set_list(v, lists[v]);
        }
        return s;
    }

    auto validate(const CspInstance & c) -> void
    {
        if (c.variables < 0 || c.domain < 0)
            throw PreconditionError("negative CSP size");
        for (auto & con : c.constraints) {
            for (int v : con.scope)
                if (v < 0 || v >= c.variables)
                    throw PreconditionError("CSP scope variable out of range");
            for (auto & t : con.allowed) {
                if (t.size() != con.scope.size())
                    throw PreconditionError("CSP tuple arity mismatch");
                for (int d : t)
                    if (d < 0 || d >= c.domain)
                        throw PreconditionError("CSP value out of range");
            }
        }
    }

    auto csp_to_lhom_structure(const CspInstance & c) -> pair<RelationalStructure, TargetStructure>
    {
        validate(c);
        RelationalStructure instance;
        instance.universe = c.variables;
        instance.lists.resize(c.variables);
        TargetStructure target;
        target.universe = c.domain;
        std::map<string, string> names;
        for (auto & con : c.constraints) {
            auto r = Relation::from_tuples(static_cast<int>(con.scope.size()), con.allowed);
            auto [it, fresh] = names.try_emplace(r.key(), "C" + std::to_string(names.size()));
            if (fresh)
                target.add_symbol(it->second, r);
            int s = instance.add_symbol(it->second, r.arity());
            instance.add_tuple(s, con.scope);
        }
        return {instance, target};
    }

    auto count_csp_brute(const CspInstance & c, uint64_t budget) -> Count
    {
        auto [instance, target] = csp_to_lhom_structure(c);
        return count_homomorphisms_backtracking(instance, target, budget);
    }
}
