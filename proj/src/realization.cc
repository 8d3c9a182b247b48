#include <lhom/homcount.hh>
#include <lhom/interpolation.hh>
#include <lhom/realization.hh>

#include <algorithm>
#include <atomic>
#include <future>
#include <set>

using std::map;
using std::pair;
using std::set;
using std::string;
using std::vector;

namespace lhom
{
    namespace
    {
        constexpr std::size_t value_set_limit = 20000;

        auto distinct(const vector<int> & v) -> bool
        {
            return set<int>(v.begin(), v.end()).size() == v.size();
        }
    }

    auto certify_gadget(const Gadget & j, const Relation & r, const TargetStructure & h) -> GadgetCertificate
    {
        if (static_cast<int>(j.interface.size()) != r.arity())
            throw PreconditionError("interface size differs from the relation arity");
        if (! distinct(j.interface))
            throw PreconditionError("interface elements must be distinct");

        GadgetCertificate cert;
        auto table = extension_counts(j.structure, j.interface, h);
        set<Count> in, out;
        string failure;
        r.for_each([&](const Tuple & f) {
            Count c = lookup(table, f);
            if (c == 0 && failure.empty())
                failure = "zero count at a tuple of the relation";
            in.insert(c);
        });
        for (auto & [y, c] : table)
            if (! r.contains(y)) {
                if (c == 1 && failure.empty())
                    failure = "count 1 at a tuple outside the relation";
                out.insert(c);
            }
        if (failure.empty())
            for (auto & a : in)
                for (auto & b : out)
                    if (gcd(a, b) != 1 && failure.empty())
                        failure = "an in-count and an out-count share a prime";

        cert.in_counts.assign(in.begin(), in.end());
        cert.out_counts.assign(out.begin(), out.end());
        cert.valid = failure.empty();
        cert.reason = failure;
        if (out.empty() && in.size() <= 1) {
            cert.mode = GadgetMode::exact;
            cert.uniform = in.empty() ? Count{1} : *in.begin();
        }
        else {
            cert.mode = GadgetMode::interpolation;
            cert.table = std::move(table);
        }
        return cert;
    }

    auto target_with(const Graph & h, const vector<RelationPtr> & uses) -> TargetStructure
    {
        auto t = graph_as_structure(h);
        for (auto & u : uses)
            if (t.symbol_index(u->name) == -1)
                t.add_symbol(u->name, u->relation);
        return t;
    }

    auto fresh_name(const string & prefix) -> string
    {
        static std::atomic<long> counter{0};
        return prefix + "#" + std::to_string(++counter);
    }

    auto realize(const Graph & h, const string & construction, Relation r, Gadget j, vector<RelationPtr> uses,
        const vector<int> & domain) -> RelationPtr
    {
        if (! domain.empty()) {
            auto & s = j.structure;
            s.lists.resize(s.universe);
            for (int e = 0; e < s.universe; ++e) {
                if (! s.lists[e])
                    s.lists[e] = domain;
                else {
                    vector<int> both;
                    std::set_intersection(s.lists[e]->begin(), s.lists[e]->end(), domain.begin(), domain.end(),
                        std::back_inserter(both));
                    s.lists[e] = both;
                }
            }
        }
        auto target = target_with(h, uses);
        auto cert = certify_gadget(j, r, target);
        if (! cert.valid)
            throw InternalError(construction + " gadget failed certification: " + cert.reason);

        auto rel = std::make_shared<RealizedRelation>();
        rel->name = fresh_name(construction);
        rel->relation = std::move(r);
        rel->construction = construction;
        rel->gadget = std::move(j);
        rel->certificate = std::move(cert);
        rel->depth = 1;
        for (auto & u : uses)
            rel->depth = std::max(rel->depth, u->depth + 1);
        rel->uses = std::move(uses);
        return rel;
    }

    auto closure(const vector<RelationPtr> & relations) -> map<string, RelationPtr>
    {
        map<string, RelationPtr> result;
        vector<RelationPtr> stack(relations.begin(), relations.end());
        while (! stack.empty()) {
            auto r = stack.back();
            stack.pop_back();
            if (! result.emplace(r->name, r).second)
                continue;
            for (auto & u : r->uses)
                stack.push_back(u);
        }
        return result;
    }

    auto target_for_closure(const Graph & h, const vector<RelationPtr> & relations) -> TargetStructure
    {
        vector<RelationPtr> all;
        for (auto & [name, r] : closure(relations))
            all.push_back(r);
        return target_with(h, all);
    }

    auto replace_tuples(const RelationalStructure & inst, const TreeDecomposition & td, const string & symbol,
        const Gadget & j, int copies) -> pair<RelationalStructure, TreeDecomposition>
    {
        int sym = inst.symbol_index(symbol);
        if (sym == -1)
            throw PreconditionError("symbol " + symbol + " not in the instance");

        RelationalStructure out;
        out.universe = inst.universe;
        out.lists = inst.lists;
        out.lists.resize(inst.universe);
        for (std::size_t s = 0; s < inst.symbols.size(); ++s)
            if (static_cast<int>(s) != sym) {
                int t = out.add_symbol(inst.symbols[s].name, inst.symbols[s].arity);
                out.tuples[t] = inst.tuples[s];
            }

        const auto & js = j.structure;
        vector<int> jsym;
        for (auto & sy : js.symbols)
            jsym.push_back(out.add_symbol(sy.name, sy.arity));

        vector<int> interface_position(js.universe, -1);
        for (std::size_t i = 0; i < j.interface.size(); ++i)
            interface_position[j.interface[i]] = static_cast<int>(i);

        auto intersect_list = [&](int e, const std::optional<vector<int>> & list) {
            if (! list)
                return;
            if (! out.lists[e])
                out.lists[e] = *list;
            else {
                vector<int> both;
                std::set_intersection(out.lists[e]->begin(), out.lists[e]->end(), list->begin(), list->end(),
                    std::back_inserter(both));
                out.lists[e] = both;
            }
        };

        vector<Insertion> insertions;
        for (auto & t : inst.tuples[sym]) {
            if (t.size() != j.interface.size())
                throw PreconditionError("tuple arity differs from the gadget interface");
            vector<int> anchor(t.begin(), t.end());
            std::sort(anchor.begin(), anchor.end());
            anchor.erase(std::unique(anchor.begin(), anchor.end()), anchor.end());
            for (int c = 0; c < copies; ++c) {
                vector<int> image(js.universe);
                Insertion ins{anchor, {}};
                for (int e = 0; e < js.universe; ++e) {
                    if (interface_position[e] >= 0)
                        image[e] = t[interface_position[e]];
                    else {
                        image[e] = out.add_element();
                        ins.vertices.push_back(image[e]);
                    }
                    if (e < static_cast<int>(js.lists.size()))
                        intersect_list(image[e], js.lists[e]);
                }
                for (std::size_t s = 0; s < js.symbols.size(); ++s)
                    for (auto & jt : js.tuples[s]) {
                        Tuple mapped;
                        for (int e : jt)
                            mapped.push_back(image[e]);
                        out.tuples[jsym[s]].push_back(std::move(mapped));
                    }
                insertions.push_back(std::move(ins));
            }
        }
        return {out, td_for_augmented_instance(td, insertions)};
    }

    auto answer_with_relation(const RelationalStructure & inst, const TreeDecomposition & td,
        const RealizedRelation & rel, const StructureOracle & oracle, AnswerStats * stats, int threads) -> Count
    {
        AnswerStats local;
        AnswerStats & st = stats ? *stats : local;
        int sym = inst.symbol_index(rel.name);
        if (sym == -1)
            throw PreconditionError("relation symbol not in the instance");
        const auto & tuples = inst.tuples[sym];
        const auto & cert = rel.certificate;
        auto m = tuples.size();

        auto call = [&](int copies) -> Count {
            auto [next, next_td] = replace_tuples(inst, td, rel.name, rel.gadget, copies);
            st.max_width = std::max(st.max_width, next_td.width());
            return oracle(next, next_td);
        };

        if (m == 0 || cert.mode == GadgetMode::exact) {
            ++st.oracle_calls;
            st.value_set_size = 1;
            Count total = call(1);
            Count divisor = pow(cert.uniform, static_cast<unsigned>(m));
            if (total % divisor != 0)
                throw InternalError("exact gadget count not divisible by the uniform count");
            return total / divisor;
        }

        // Per-tuple values, split by membership of the image in the relation.
        set<Count> plus{1}, minus;
        for (auto & t : tuples) {
            set<Count> in_values, out_values;
            for (auto & [y, c] : cert.table) {
                bool ok = true;
                for (std::size_t i = 0; i < t.size() && ok; ++i) {
                    int e = t[i];
                    if (e < static_cast<int>(inst.lists.size()) && inst.lists[e]) {
                        auto & l = *inst.lists[e];
                        ok = std::binary_search(l.begin(), l.end(), y[i]);
                    }
                    for (std::size_t k = 0; k < i && ok; ++k)
                        if (t[k] == e && y[k] != y[i])
                            ok = false;
                }
                if (ok)
                    (rel.relation.contains(y) ? in_values : out_values).insert(c);
            }
            set<Count> next_plus, next_minus;
            for (auto & w : plus) {
                for (auto & v : in_values)
                    next_plus.insert(w * v);
                for (auto & v : out_values)
                    next_minus.insert(w * v);
            }
            for (auto & w : minus) {
                for (auto & v : in_values)
                    next_minus.insert(w * v);
                for (auto & v : out_values)
                    next_minus.insert(w * v);
            }
            plus = std::move(next_plus);
            minus = std::move(next_minus);
            if (plus.size() + minus.size() > value_set_limit)
                throw SizeError("interpolation value set too large");
        }
        if (plus.empty())
            return 0;

        for (auto & w : plus)
            if (minus.count(w))
                throw InternalError("value classes overlap");

        vector<Count> primes;
        for (auto & c : cert.in_counts)
            for (auto & p : prime_factors(c))
                primes.push_back(p);
        for (auto & w : plus)
            check(smooth_over(w, primes), "in-relation product has a foreign prime");
        for (auto & w : minus)
            check(! smooth_over(w, primes), "mixed product lacks a foreign prime");

        vector<Count> values(plus.begin(), plus.end());
        values.insert(values.end(), minus.begin(), minus.end());
        std::sort(values.begin(), values.end());
        int k = static_cast<int>(values.size());
        st.value_set_size = k;
        st.oracle_calls += k;

        vector<Count> b(k);
        if (threads <= 1)
            for (int i = 0; i < k; ++i)
                b[i] = call(i + 1);
        else
            for (int start = 0; start < k; start += threads) {
                vector<std::future<Count>> batch;
                for (int i = start; i < std::min(k, start + threads); ++i)
                    batch.push_back(std::async(std::launch::async, call, i + 1));
                for (int i = start; i < std::min(k, start + threads); ++i)
                    b[i] = batch[i - start].get();
            }

        auto x = interpolate(values, b);
        Count total = 0;
        for (int i = 0; i < k; ++i) {
            if (denominator(x[i]) != 1 || x[i] < 0)
                throw InternalError("interpolated class size is not a natural number");
            if (plus.count(values[i]))
                total += numerator(x[i]);
        }
        return total;
    }

    auto structure_dp_oracle(const TargetStructure & target) -> StructureOracle
    {
        return [target](const RelationalStructure & s, const TreeDecomposition & td) {
            return count_structure_dp(s, target, td);
        };
    }

    auto dp_graph_oracle(const Graph & h, int threads) -> GraphOracle
    {
        return [&h, threads](const Graph & g, const ListAssignment & l, const TreeDecomposition & td) {
            return count_dp(g, l, td, h, {threads}).count;
        };
    }

    auto lists_of(const RelationalStructure & inst, int target_size) -> ListAssignment
    {
        ListAssignment lists(inst.universe);
        for (int e = 0; e < inst.universe; ++e) {
            if (e < static_cast<int>(inst.lists.size()) && inst.lists[e])
                lists[e] = *inst.lists[e];
            else
                for (int v = 0; v < target_size; ++v)
                    lists[e].push_back(v);
        }
        return lists;
    }

    ChainEvaluator::ChainEvaluator(const Graph & h, const vector<RelationPtr> & relations, GraphOracle base,
        int threads) :
        _h(h),
        _symbols(closure(relations)),
        _base(std::move(base)),
        _threads(threads)
    {
    }

    auto ChainEvaluator::count(const RelationalStructure & inst, const TreeDecomposition & td) const -> Count
    {
        const RealizedRelation * best = nullptr;
        std::size_t best_size = 0;
        bool has_plain = false;
        for (std::size_t s = 0; s < inst.symbols.size(); ++s) {
            auto & name = inst.symbols[s].name;
            if (inst.tuples[s].empty() || name == edge_symbol)
                continue;
            if (std::any_of(_plain.begin(), _plain.end(), [&](const RelationPtr & r) { return r->name == name; })) {
                has_plain = true;
                continue;
            }
            auto it = _symbols.find(name);
            if (it == _symbols.end())
                throw PreconditionError("unknown symbol " + name);
            auto & r = *it->second;
            auto size = inst.tuples[s].size();
            auto rank = [](const RealizedRelation & x) { return x.certificate.mode == GadgetMode::exact ? 0 : 1; };
            if (! best || rank(r) < rank(*best) || (rank(r) == rank(*best) && size < best_size)) {
                best = &r;
                best_size = size;
            }
        }

        if (! best && has_plain) {
            ++_base_calls;
            return count_structure_dp(inst, target_with(_h, _plain), td);
        }

        if (! best) {
            Graph g(inst.universe);
            int e = inst.symbol_index(edge_symbol);
            if (e != -1)
                for (auto & t : inst.tuples[e])
                    g.add_edge(t[0], t[1]);
            ++_base_calls;
            return _base(g, lists_of(inst, _h.size()), td);
        }

        return answer_with_relation(inst, td, *best,
            [this](const RelationalStructure & s, const TreeDecomposition & t) { return count(s, t); }, nullptr,
            _threads);
    }

    auto ChainEvaluator::set_plain(const vector<RelationPtr> & relations) -> void
    {
        _plain = relations;
    }

    namespace
    {
        auto gadget_on(int universe, vector<int> interface) -> Gadget
        {
            Gadget j;
            j.structure.universe = universe;
            j.structure.lists.resize(universe);
            j.interface = std::move(interface);
            return j;
        }
    }

    auto realize_intersection(const Graph & h, const vector<RelationPtr> & parts, const vector<int> & domain)
        -> RelationPtr
    {
        if (parts.empty())
            throw PreconditionError("intersection of no relations");
        int p = parts.front()->relation.arity();
        vector<int> x(p);
        for (int i = 0; i < p; ++i)
            x[i] = i;
        auto j = gadget_on(p, x);
        vector<const Relation *> relations;
        for (auto & part : parts) {
            if (part->relation.arity() != p)
                throw PreconditionError("intersecting relations of different arity");
            int s = j.structure.add_symbol(part->name, p);
            j.structure.add_tuple(s, x);
            relations.push_back(&part->relation);
        }
        auto r = intersect_all(relations);
        return realize(h, "intersect", r, j, parts, domain);
    }

    auto realize_composition(const Graph & h, const RelationPtr & first, const RelationPtr & second,
        const vector<int> & domain) -> RelationPtr
    {
        auto j = gadget_on(3, {0, 2});
        int a = j.structure.add_symbol(first->name, 2);
        j.structure.add_tuple(a, {0, 1});
        int b = j.structure.add_symbol(second->name, 2);
        j.structure.add_tuple(b, {1, 2});
        return realize(h, "compose", compose(first->relation, second->relation), j, {first, second}, domain);
    }

    auto realize_edge_step(const Graph & h, const vector<int> & from, const vector<int> & to,
        const vector<int> & domain) -> RelationPtr
    {
        auto j = gadget_on(2, {0, 1});
        j.structure.set_list(0, from);
        j.structure.set_list(1, to);
        int e = j.structure.add_symbol(edge_symbol, 2);
        j.structure.add_tuple(e, {0, 1});
        vector<Tuple> tuples;
        for (int u : from)
            for (int w : to)
                if (h.has_edge(u, w))
                    tuples.push_back({u, w});
        return realize(h, "edge-step", Relation::from_tuples(2, tuples), j, {}, domain);
    }
}
