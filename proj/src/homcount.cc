#include <lhom/homcount.hh>

#include <algorithm>
#include <atomic>
#include <future>
#include <mutex>
#include <map>
#include <string>
#include <unordered_map>

using std::pair;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace lhom
{
    auto full_lists(int n, const Graph & h) -> ListAssignment
    {
        vector<int> all(h.size());
        for (int v = 0; v < h.size(); ++v)
            all[v] = v;
        return ListAssignment(n, all);
    }

    auto validate_lists(const Graph & g, const ListAssignment & lists, const Graph & h) -> void
    {
        if (static_cast<int>(lists.size()) != g.size())
            throw PreconditionError("list assignment does not match the graph");
        for (auto & l : lists) {
            if (! std::is_sorted(l.begin(), l.end()) || std::adjacent_find(l.begin(), l.end()) != l.end())
                throw PreconditionError("lists must be sorted without repeats");
            for (int x : l)
                if (x < 0 || x >= h.size())
                    throw PreconditionError("list entry out of range");
        }
    }

    namespace
    {
        auto guard(const vector<size_t> & sizes, uint64_t limit) -> void
        {
            long double product = 1;
            for (auto s : sizes)
                product *= s;
            if (product > static_cast<long double>(limit))
                throw SizeError("brute-force guard exceeded");
        }

        auto brute(const Graph & g, const ListAssignment & lists, const Graph & h, vector<int> & f, int v) -> Count
        {
            if (v == g.size())
                return 1;
            Count total = 0;
            for (int x : lists[v]) {
                bool ok = true;
                for (int w : g.neighbors(v)) {
                    if (w > v)
                        break;
                    if (! h.has_edge(x, w == v ? x : f[w])) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    f[v] = x;
                    total += brute(g, lists, h, f, v + 1);
                }
            }
            return total;
        }
    }

    auto count_brute(const Graph & g, const ListAssignment & lists, const Graph & h, uint64_t limit) -> Count
    {
        validate_lists(g, lists, h);
        vector<size_t> sizes;
        for (auto & l : lists)
            sizes.push_back(l.size());
        guard(sizes, limit);
        vector<int> f(g.size(), -1);
        return brute(g, lists, h, f, 0);
    }

    auto count_structure_brute(const RelationalStructure & instance, const TargetStructure & target, uint64_t limit)
        -> Count
    {
        check_compatible(instance, target);
        vector<size_t> sizes;
        for (int e = 0; e < instance.universe; ++e) {
            if (e < static_cast<int>(instance.lists.size()) && instance.lists[e])
                sizes.push_back(instance.lists[e]->size());
            else
                sizes.push_back(target.universe);
        }
        guard(sizes, limit);
        return count_homomorphisms_backtracking(instance, target, UINT64_MAX);
    }

    auto split_orientations(const Graph & g, const ListAssignment & lists, const ComponentAnalysis & component)
        -> pair<ListAssignment, ListAssignment>
    {
        auto gc = components(g);
        if (gc.members.size() > 1 || ! gc.bipartite.at(0))
            throw PreconditionError("splitting needs a connected bipartite graph");
        if (! component.bipartite)
            throw PreconditionError("splitting needs a bipartite target component");
        auto restrict = [](const vector<int> & l, const vector<int> & side) {
            vector<int> r;
            std::set_intersection(l.begin(), l.end(), side.begin(), side.end(), std::back_inserter(r));
            return r;
        };
        ListAssignment first(g.size()), second(g.size());
        for (int v = 0; v < g.size(); ++v) {
            bool x = gc.side[v] == 0;
            first[v] = restrict(lists.at(v), x ? component.side_x : component.side_y);
            second[v] = restrict(lists.at(v), x ? component.side_y : component.side_x);
        }
        return {first, second};
    }

    auto compress(const ListAssignment & lists, const Graph & h) -> CompressedLists
    {
        std::map<vector<int>, int> representative;
        for (int x = 0; x < h.size(); ++x)
            representative.try_emplace(h.neighbors(x), x);

        CompressedLists c;
        for (auto & l : lists) {
            std::map<int, int> weight;
            for (int x : l)
                ++weight[representative[h.neighbors(x)]];
            vector<int> reps, ws;
            for (auto [r, w] : weight) {
                reps.push_back(r);
                ws.push_back(w);
            }
            c.lists.push_back(reps);
            c.weights.push_back(ws);
        }
        return c;
    }

    auto DpStats::absorb(const DpStats & other) -> void
    {
        max_table_size = std::max(max_table_size, other.max_table_size);
        max_list_size = std::max(max_list_size, other.max_list_size);
        max_bag_size = std::max(max_bag_size, other.max_bag_size);
        nodes += other.nodes;
    }

    namespace
    {
        struct DenseTable
        {
            vector<int> bag;
            vector<size_t> radix;
            vector<Count> values;
        };

        class WeightedDp
        {
        public:
            WeightedDp(const Graph & g, const CompressedLists & lists, const NiceTreeDecomposition & nice,
                const Graph & h, int threads) :
                _g(g), _lists(lists), _nice(nice), _threads(threads - 1)
            {
                int n = h.size();
                _adjacent.assign(static_cast<size_t>(n) * n, 0);
                for (auto [u, v] : h.edges()) {
                    _adjacent[static_cast<size_t>(u) * n + v] = 1;
                    _adjacent[static_cast<size_t>(v) * n + u] = 1;
                }
                _n = n;
            }

            auto run(DpStats & stats) -> Count
            {
                for (auto & l : _lists.lists)
                    stats.max_list_size = std::max(stats.max_list_size, l.size());
                auto table = evaluate(_nice.root());
                stats.absorb(_stats);
                return table.values.at(0);
            }

        private:
            auto adjacent(int x, int y) const -> bool
            {
                return _adjacent[static_cast<size_t>(x) * _n + y];
            }

            auto note(const DenseTable & t) -> void
            {
                std::lock_guard<std::mutex> lock(_mutex);
                _stats.max_table_size = std::max(_stats.max_table_size, t.values.size());
                _stats.max_bag_size = std::max(_stats.max_bag_size, static_cast<int>(t.bag.size()));
                ++_stats.nodes;
            }

            auto evaluate(int node) -> DenseTable
            {
                vector<int> chain;
                int bottom = node;
                while (_nice.nodes[bottom].kind == NiceKind::introduce || _nice.nodes[bottom].kind == NiceKind::forget) {
                    chain.push_back(bottom);
                    bottom = _nice.nodes[bottom].children[0];
                }

                DenseTable table;
                const auto & b = _nice.nodes[bottom];
                if (b.kind == NiceKind::leaf)
                    table.values.assign(1, Count{1});
                else {
                    int left = b.children[0], right = b.children[1];
                    DenseTable lt, rt;
                    if (take_thread()) {
                        auto future = std::async(std::launch::async, [&] { return evaluate(left); });
                        rt = evaluate(right);
                        lt = future.get();
                        ++_threads;
                    }
                    else {
                        lt = evaluate(left);
                        rt = evaluate(right);
                    }
                    table = std::move(lt);
                    for (size_t i = 0; i < table.values.size(); ++i)
                        if (table.values[i] != 0)
                            table.values[i] *= rt.values[i];
                }
                note(table);

                for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                    const auto & nn = _nice.nodes[*it];
                    table = nn.kind == NiceKind::introduce ? introduce(table, nn.vertex) : forget(table, nn.vertex);
                    note(table);
                }
                return table;
            }

            auto take_thread() -> bool
            {
                int available = _threads.load();
                while (available > 0)
                    if (_threads.compare_exchange_weak(available, available - 1))
                        return true;
                return false;
            }

            auto introduce(const DenseTable & child, int v) -> DenseTable
            {
                DenseTable t;
                size_t p = std::lower_bound(child.bag.begin(), child.bag.end(), v) - child.bag.begin();
                t.bag = child.bag;
                t.bag.insert(t.bag.begin() + p, v);
                t.radix = child.radix;
                size_t rv = _lists.lists[v].size();
                t.radix.insert(t.radix.begin() + p, rv);

                size_t low = 1;
                for (size_t i = p; i < child.radix.size(); ++i)
                    low *= child.radix[i];
                size_t total = child.values.size() * rv;
                t.values.assign(total, Count{0});
                if (total == 0)
                    return t;

                // Bag neighbors of v, with their stride in the child index.
                vector<pair<size_t, int>> probes;
                vector<size_t> stride(child.bag.size(), 1);
                for (size_t i = child.bag.size(); i-- > 1;)
                    stride[i - 1] = stride[i] * child.radix[i];
                for (size_t i = 0; i < child.bag.size(); ++i)
                    if (_g.has_edge(v, child.bag[i]))
                        probes.emplace_back(i, child.bag[i]);
                bool loop = _g.has_loop(v);
                const auto & lv = _lists.lists[v];

                for (size_t ci = 0; ci < child.values.size(); ++ci) {
                    if (child.values[ci] == 0)
                        continue;
                    size_t hi = ci / low, lo = ci % low;
                    for (size_t c = 0; c < rv; ++c) {
                        int x = lv[c];
                        if (loop && ! adjacent(x, x))
                            continue;
                        bool ok = true;
                        for (auto [i, w] : probes) {
                            int y = _lists.lists[w][(ci / stride[i]) % child.radix[i]];
                            if (! adjacent(x, y)) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok)
                            t.values[(hi * rv + c) * low + lo] = child.values[ci];
                    }
                }
                return t;
            }

            auto forget(const DenseTable & child, int v) -> DenseTable
            {
                DenseTable t;
                size_t p = std::lower_bound(child.bag.begin(), child.bag.end(), v) - child.bag.begin();
                t.bag = child.bag;
                t.bag.erase(t.bag.begin() + p);
                t.radix = child.radix;
                t.radix.erase(t.radix.begin() + p);
                size_t rv = child.radix[p];
                size_t low = 1;
                for (size_t i = p + 1; i < child.radix.size(); ++i)
                    low *= child.radix[i];
                size_t total = rv == 0 ? 0 : child.values.size() / rv;
                if (rv == 0) {
                    total = 1;
                    for (auto r : t.radix)
                        total *= r;
                }
                t.values.assign(total, Count{0});
                const auto & w = _lists.weights[v];
                for (size_t ci = 0; ci < child.values.size(); ++ci) {
                    if (child.values[ci] == 0)
                        continue;
                    size_t lo = ci % low, c = (ci / low) % rv, hi = ci / (low * rv);
                    size_t pi = hi * low + lo;
                    if (w[c] == 1)
                        t.values[pi] += child.values[ci];
                    else
                        t.values[pi] += child.values[ci] * w[c];
                }
                return t;
            }

            const Graph & _g;
            const CompressedLists & _lists;
            const NiceTreeDecomposition & _nice;
            std::atomic<int> _threads;
            vector<char> _adjacent;
            int _n = 0;
            std::mutex _mutex;
            DpStats _stats;
        };
    }

    auto count_weighted(const Graph & g, const CompressedLists & lists, const NiceTreeDecomposition & nice,
        const Graph & h, const DpOptions & options, DpStats & stats) -> Count
    {
        for (auto & l : lists.lists)
            if (l.empty())
                return 0;
        WeightedDp dp(g, lists, nice, h, std::max(1, options.threads));
        return dp.run(stats);
    }

    auto count_dp(const Graph & g, const ListAssignment & lists, const TreeDecomposition & td, const Graph & h,
        const DpOptions & options) -> DpResult
    {
        validate_lists(g, lists, h);
        if (h.size() == 0)
            return {g.size() == 0 ? Count{1} : Count{0}, {}};
        auto report = validate(g, td);
        if (! report.ok())
            throw PreconditionError("invalid tree decomposition");

        auto target = irr(h);
        auto gc = components(g);
        DpResult result{Count{1}, {}};

        for (size_t ci = 0; ci < gc.members.size(); ++ci) {
            const auto & members = gc.members[ci];
            vector<int> relabel(g.size(), -1);
            for (size_t i = 0; i < members.size(); ++i)
                relabel[members[i]] = static_cast<int>(i);
            Graph local = induced_subgraph(g, members);
            auto local_td = restrict_decomposition(td, relabel);
            auto nice = make_nice(local_td);
            ListAssignment local_lists;
            for (int v : members)
                local_lists.push_back(lists[v]);

            Count sum = 0;
            for (auto & comp : target.components) {
                ListAssignment in_comp;
                for (auto & l : local_lists) {
                    vector<int> r;
                    std::set_intersection(l.begin(), l.end(), comp.vertices.begin(), comp.vertices.end(),
                        std::back_inserter(r));
                    in_comp.push_back(r);
                }
                if (comp.bipartite) {
                    if (! gc.bipartite[ci])
                        continue;
                    auto [first, second] = split_orientations(local, in_comp, comp);
                    sum += count_weighted(local, compress(first, h), nice, h, options, result.stats);
                    sum += count_weighted(local, compress(second, h), nice, h, options, result.stats);
                }
                else
                    sum += count_weighted(local, compress(in_comp, h), nice, h, options, result.stats);
            }
            result.count *= sum;
            if (result.count == 0)
                break;
        }
        return result;
    }

    namespace
    {
        struct SparseConstraint
        {
            const Relation * relation;
            Tuple elements;
        };

        using SparseTable = std::unordered_map<string, Count>;

        class StructureDp
        {
        public:
            StructureDp(const RelationalStructure & instance, const TargetStructure & target,
                const NiceTreeDecomposition & nice) :
                _instance(instance), _target(target), _nice(nice)
            {
                if (target.universe > 255)
                    throw PreconditionError("target universe too large for the structure counter");
                _of.resize(instance.universe);
                for (size_t s = 0; s < instance.symbols.size(); ++s) {
                    if (instance.tuples[s].empty())
                        continue;
                    const Relation * r = &target.relations[target.symbol_index(instance.symbols[s].name)];
                    for (auto & t : instance.tuples[s]) {
                        int id = static_cast<int>(_constraints.size());
                        _constraints.push_back({r, t});
                        vector<int> distinct(t.begin(), t.end());
                        std::sort(distinct.begin(), distinct.end());
                        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                        for (int e : distinct)
                            _of[e].push_back(id);
                    }
                }
                _domain.resize(instance.universe);
                for (int e = 0; e < instance.universe; ++e) {
                    if (e < static_cast<int>(instance.lists.size()) && instance.lists[e])
                        _domain[e] = *instance.lists[e];
                    else
                        for (int v = 0; v < target.universe; ++v)
                            _domain[e].push_back(v);
                }
            }

            auto run() -> Count
            {
                vector<SparseTable> tables(_nice.nodes.size());
                for (size_t i = 0; i < _nice.nodes.size(); ++i) {
                    const auto & node = _nice.nodes[i];
                    switch (node.kind) {
                    case NiceKind::leaf:
                        tables[i].emplace(string{}, Count{1});
                        break;
                    case NiceKind::introduce:
                        tables[i] = introduce(tables[node.children[0]], _nice.nodes[node.children[0]].bag, node);
                        break;
                    case NiceKind::forget:
                        tables[i] = forget(tables[node.children[0]], _nice.nodes[node.children[0]].bag, node.vertex);
                        break;
                    case NiceKind::join: {
                        auto & a = tables[node.children[0]];
                        auto & b = tables[node.children[1]];
                        auto & small = a.size() <= b.size() ? a : b;
                        auto & large = a.size() <= b.size() ? b : a;
                        for (auto & [k, v] : small) {
                            auto it = large.find(k);
                            if (it != large.end())
                                tables[i].emplace(k, v * it->second);
                        }
                        break;
                    }
                    }
                    for (int c : node.children)
                        SparseTable{}.swap(tables[c]);
                }
                auto & root = tables.back();
                auto it = root.find(string{});
                return it == root.end() ? Count{0} : it->second;
            }

        private:
            auto introduce(const SparseTable & child, const vector<int> & child_bag, const NiceNode & node)
                -> SparseTable
            {
                int e = node.vertex;
                const auto & bag = node.bag;
                size_t p = std::lower_bound(bag.begin(), bag.end(), e) - bag.begin();

                // Constraints through e that lie inside the bag, with the bag
                // position of each element.
                vector<pair<const Relation *, vector<size_t>>> checks;
                for (int c : _of[e]) {
                    auto & con = _constraints[c];
                    vector<size_t> positions;
                    bool inside = true;
                    for (int f : con.elements) {
                        auto it = std::lower_bound(bag.begin(), bag.end(), f);
                        if (it == bag.end() || *it != f) {
                            inside = false;
                            break;
                        }
                        positions.push_back(it - bag.begin());
                    }
                    if (inside)
                        checks.emplace_back(con.relation, std::move(positions));
                }

                SparseTable result;
                result.reserve(child.size() * _domain[e].size());
                (void) child_bag;
                string key;
                Tuple values;
                for (auto & [ck, cv] : child) {
                    key = ck;
                    key.insert(key.begin() + p, '\0');
                    for (int x : _domain[e]) {
                        key[p] = static_cast<char>(x);
                        bool ok = true;
                        for (auto & [r, positions] : checks) {
                            values.resize(positions.size());
                            for (size_t i = 0; i < positions.size(); ++i)
                                values[i] = static_cast<unsigned char>(key[positions[i]]);
                            if (! r->contains(values.data())) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok)
                            result.emplace(key, cv);
                    }
                }
                return result;
            }

            auto forget(const SparseTable & child, const vector<int> & child_bag, int e) -> SparseTable
            {
                size_t p = std::lower_bound(child_bag.begin(), child_bag.end(), e) - child_bag.begin();
                SparseTable result;
                string key;
                for (auto & [ck, cv] : child) {
                    key = ck;
                    key.erase(key.begin() + p);
                    result[key] += cv;
                }
                return result;
            }

            const RelationalStructure & _instance;
            const TargetStructure & _target;
            const NiceTreeDecomposition & _nice;
            vector<SparseConstraint> _constraints;
            vector<vector<int>> _of;
            vector<vector<int>> _domain;
        };
    }

    auto count_structure_dp(const RelationalStructure & instance, const TargetStructure & target,
        const TreeDecomposition & td) -> Count
    {
        check_compatible(instance, target);
        auto report = validate(gaifman(instance), td);
        if (! report.ok())
            throw PreconditionError("invalid tree decomposition for the instance");
        auto nice = make_nice(td);
        StructureDp dp(instance, target, nice);
        return dp.run();
    }
}
