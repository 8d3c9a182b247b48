#include <lhom/gadgets.hh>
#include <lhom/homcount.hh>

#include <algorithm>
#include <functional>
#include <set>

using std::map;
using std::set;
using std::string;
using std::vector;

namespace lhom
{
    namespace
    {
        auto contains_pair(const Relation & r, int v, int w) -> bool
        {
            return r.contains(Tuple{v, w});
        }

        auto member(const vector<int> & sorted, int v) -> bool
        {
            return std::binary_search(sorted.begin(), sorted.end(), v);
        }

        auto sorted_copy(vector<int> v) -> vector<int>
        {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        }

        auto pair_of(int u, int v) -> vector<int>
        {
            return sorted_copy({u, v});
        }

        auto key_of(const vector<int> & v) -> string
        {
            string k;
            for (int x : v)
                k += std::to_string(x) + ",";
            return k;
        }

        auto key_of(const P4 & p) -> string
        {
            return key_of(vector<int>{p.a, p.b, p.c, p.d});
        }

        auto difference(const vector<int> & a, const vector<int> & b) -> vector<int>
        {
            vector<int> result;
            std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(result));
            return result;
        }

        auto intersection(const vector<int> & a, const vector<int> & b) -> vector<int>
        {
            vector<int> result;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(result));
            return result;
        }

        auto unite(const vector<int> & a, const vector<int> & b) -> vector<int>
        {
            vector<int> result;
            std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(result));
            return result;
        }

        // Open neighborhood of a vertex set.
        auto neighborhood(const Graph & h, const vector<int> & s) -> vector<int>
        {
            vector<int> result;
            for (int v : s)
                for (int w : h.neighbors(v))
                    result.push_back(w);
            return sorted_copy(result);
        }

        struct Builder
        {
            Gadget j;

            auto element(std::optional<vector<int>> list = std::nullopt) -> int
            {
                int e = j.structure.add_element();
                j.structure.lists.resize(j.structure.universe);
                j.structure.lists[e] = std::move(list);
                return e;
            }

            auto tuple(const string & symbol, Tuple t) -> void
            {
                int s = j.structure.symbol_index(symbol);
                if (s == -1)
                    s = j.structure.add_symbol(symbol, static_cast<int>(t.size()));
                j.structure.add_tuple(s, std::move(t));
            }

            auto edge(int u, int v) -> void
            {
                tuple(edge_symbol, {u, v});
            }
        };

        auto all_ac_tuples(int q, int lo, int hi) -> vector<Tuple>
        {
            vector<Tuple> result;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
                Tuple t(q);
                for (int i = 0; i < q; ++i)
                    t[i] = (mask >> (q - 1 - i) & 1) ? hi : lo;
                result.push_back(std::move(t));
            }
            return result;
        }
    }

    auto is_distinguisher(const Relation & r, int x, int y, const vector<int> & s, int alpha, int beta) -> bool
    {
        if (r.arity() != 2 || alpha == beta || x == y)
            return false;
        auto ss = sorted_copy(s);
        if (! member(ss, x) || ! member(ss, y))
            return false;
        bool inside = true;
        r.for_each([&](const Tuple & t) {
            if (! member(ss, t[0]) || (t[1] != alpha && t[1] != beta))
                inside = false;
        });
        if (! inside)
            return false;
        if (! contains_pair(r, x, alpha) || contains_pair(r, x, beta) || ! contains_pair(r, y, beta))
            return false;
        for (int v : ss)
            if (! contains_pair(r, v, alpha) && ! contains_pair(r, v, beta))
                return false;
        return true;
    }

    auto is_forcer(const Relation & r, int x, int y, const vector<int> & s, int alpha, int beta) -> bool
    {
        return is_distinguisher(r, x, y, s, alpha, beta) && ! contains_pair(r, y, alpha);
    }

    auto is_partitioner(const Relation & r, const vector<int> & xs, const vector<int> & ys, int a, int c) -> bool
    {
        if (r.arity() != 2 || a == c)
            return false;
        auto x = sorted_copy(xs), y = sorted_copy(ys);
        if (! intersection(x, y).empty())
            return false;
        auto s = unite(x, y);
        bool inside = true;
        r.for_each([&](const Tuple & t) {
            if (! member(s, t[0]) || (t[1] != a && t[1] != c))
                inside = false;
        });
        if (! inside)
            return false;
        for (int v : x)
            if (r.image(v) != vector<int>{a})
                return false;
        for (int v : y)
            if (r.image(v) != vector<int>{c})
                return false;
        return true;
    }

    auto is_indicator(const Relation & i, const vector<int> & s) -> bool
    {
        if (i.arity() < 1)
            return false;
        auto ss = sorted_copy(s);
        map<Tuple, int> owner;
        set<int> rows;
        bool ok = true;
        i.for_each([&](const Tuple & t) {
            if (! member(ss, t[0])) {
                ok = false;
                return;
            }
            rows.insert(t[0]);
            Tuple rest(t.begin() + 1, t.end());
            auto [it, fresh] = owner.emplace(rest, t[0]);
            if (! fresh && it->second != t[0])
                ok = false;
        });
        return ok && rows.size() == ss.size();
    }

    GadgetLibrary::GadgetLibrary(const Graph & h, P4 anchor, LibraryOptions options) :
        _h(h),
        _anchor(anchor),
        _options(options),
        _components(components(h))
    {
        if (h.size() == 0 || _components.members.size() != 1)
            throw PreconditionError("gadget constructions need a connected graph");
        if (! _components.bipartite[0] || h.has_any_loop())
            throw PreconditionError("gadget constructions need a bipartite graph");
        if (! is_irredundant(h, _components.members[0]))
            throw PreconditionError("gadget constructions need an irredundant graph");
        if (! is_induced_p4(h, anchor))
            throw PreconditionError("anchor is not an induced P4");
        _p4s = p4_structure(h);
        check(_p4s.applicable && _p4s.connected, "P4 structure of an irredundant graph is connected");
        int diameter = 0;
        for (int v = 0; v < h.size(); ++v)
            for (int d : bfs_distances(h, v))
                diameter = std::max(diameter, d);
        _depth_guard = diameter + 1;
    }

    auto GadgetLibrary::finish(RelationPtr r) -> RelationPtr
    {
        ++_stats.relations;
        return r;
    }

    auto GadgetLibrary::one_sided(const vector<int> & s) const -> bool
    {
        for (int v : s)
            if (v < 0 || v >= _h.size() || _components.side[v] != _components.side[s.front()])
                return false;
        return ! s.empty();
    }

    auto GadgetLibrary::neq(const P4 & p) -> RelationPtr
    {
        auto key = "neq:" + key_of(p);
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        auto ac = pair_of(p.a, p.c), bd = pair_of(p.b, p.d);
        Builder b;
        int u = b.element(ac), w1 = b.element(bd), w2 = b.element(ac), w3 = b.element(bd), v = b.element(ac);
        b.edge(u, w1);
        b.edge(w1, w2);
        b.edge(w2, w3);
        b.edge(w3, v);
        b.j.interface = {u, v};
        auto r = Relation::from_tuples(2, {{p.a, p.c}, {p.c, p.a}});
        return _memo[key] = finish(realize(_h, "neq", r, b.j, {}));
    }

    auto GadgetLibrary::or_relation(const P4 & p, int q) -> RelationPtr
    {
        if (q < 1)
            throw PreconditionError("OR needs arity at least 1");
        auto key = "or:" + key_of(p) + std::to_string(q);
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        auto ac = pair_of(p.a, p.c);
        Builder b;
        for (int i = 0; i < q; ++i)
            b.j.interface.push_back(b.element(ac));
        int w = b.element(pair_of(p.b, p.d));
        for (int i = 0; i < q; ++i)
            b.edge(w, i);
        auto r = Relation::box_minus(vector<vector<int>>(q, ac), {Tuple(q, p.c)});
        return _memo[key] = finish(realize(_h, "or", r, b.j, {}));
    }

    auto GadgetLibrary::excluding(const P4 & p, const Tuple & f) -> RelationPtr
    {
        int q = static_cast<int>(f.size());
        for (int v : f)
            if (v != p.a && v != p.c)
                throw PreconditionError("excluded tuple must lie in {a,c}^q");
        auto key = "excluding:" + key_of(p) + key_of(f);
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;

        auto first_a = std::find(f.begin(), f.end(), p.a);
        if (first_a == f.end())
            return _memo[key] = or_relation(p, q);

        int j = static_cast<int>(first_a - f.begin());
        auto flipped = f;
        flipped[j] = p.c;
        auto inner = excluding(p, flipped);
        auto n = neq(p);

        Builder b;
        for (int i = 0; i < q; ++i)
            b.j.interface.push_back(b.element());
        int u = b.element();
        Tuple applied = b.j.interface;
        applied[j] = u;
        b.tuple(inner->name, applied);
        b.tuple(n->name, {u, j});
        auto r = Relation::box_minus(vector<vector<int>>(q, pair_of(p.a, p.c)), {f});
        return _memo[key] = finish(realize(_h, "exclude", r, b.j, {inner, n}));
    }

    auto GadgetLibrary::ac_relation(const P4 & p, const Relation & r) -> RelationPtr
    {
        int q = r.arity();
        if (q < 1)
            throw PreconditionError("relation arity must be at least 1");
        if (q > _options.max_ac_arity)
            throw SizeError("relation arity " + std::to_string(q) + " exceeds the configured bound "
                + std::to_string(_options.max_ac_arity));
        auto key = "ac:" + key_of(p) + r.key();
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;

        auto ac = pair_of(p.a, p.c);
        vector<Tuple> excluded;
        std::uint64_t inside = 0;
        for (auto & t : all_ac_tuples(q, ac[0], ac[1])) {
            if (r.contains(t))
                ++inside;
            else
                excluded.push_back(t);
        }
        if (inside != r.size())
            throw PreconditionError("relation is not inside {a,c}^q");

        if (excluded.empty() || inside == 0) {
            Builder b;
            for (int i = 0; i < q; ++i)
                b.j.interface.push_back(b.element(ac));
            if (inside == 0)
                b.element(vector<int>{});
            return _memo[key] = finish(realize(_h, inside == 0 ? "empty" : "full", r, b.j, {}));
        }
        if (excluded.size() == 1)
            return _memo[key] = excluding(p, excluded.front());

        vector<RelationPtr> parts;
        for (auto & f : excluded)
            parts.push_back(excluding(p, f));
        return _memo[key] = finish(realize_intersection(_h, parts));
    }

    auto GadgetLibrary::compose(const RelationPtr & first, const RelationPtr & second) -> RelationPtr
    {
        auto key = "compose:" + first->name + "|" + second->name;
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        return _memo[key] = finish(realize_composition(_h, first, second));
    }

    auto GadgetLibrary::edge_step(const vector<int> & from, const vector<int> & to) -> RelationPtr
    {
        auto f = sorted_copy(from), t = sorted_copy(to);
        auto key = "step:" + key_of(f) + "|" + key_of(t);
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        return _memo[key] = finish(realize_edge_step(_h, f, t));
    }

    auto GadgetLibrary::purify(const RelationPtr & r, const P4 & p) -> RelationPtr
    {
        auto key = "purify:" + key_of(p) + r->name;
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;

        Builder b;
        int s = b.element(), t = b.element(), t2 = b.element();
        int u1 = b.element(pair_of(p.b, p.d)), u2 = b.element(pair_of(p.b, p.d)), u3 = b.element(pair_of(p.a, p.c));
        b.edge(t, u1);
        b.edge(u1, t2);
        b.edge(t2, u2);
        b.edge(u2, u3);
        b.tuple(r->name, {s, t});
        b.tuple(r->name, {s, t2});
        b.j.interface = {s, t};

        vector<Tuple> kept;
        r->relation.for_each([&](const Tuple & f) {
            if (! (f[1] == p.a && contains_pair(r->relation, f[0], p.c)))
                kept.push_back(f);
        });
        auto result = realize(_h, "purify", Relation::from_tuples(2, kept), b.j, {r});

        for (auto & c : result->certificate.in_counts)
            if (c != 2 && c != 6 && c != 8)
                throw InternalError("purification in-count " + to_string(c) + " outside {2,6,8}");
        for (auto & c : result->certificate.out_counts)
            if (c != 5)
                throw InternalError("purification out-count " + to_string(c) + " outside {0,5}");
        ++_stats.purifications;
        return _memo[key] = finish(result);
    }

    auto GadgetLibrary::forcer_wrt_ac(const RelationPtr & r, int x, int y, const vector<int> & s, const P4 & p)
        -> RelationPtr
    {
        auto current = r;
        if (! is_distinguisher(current->relation, x, y, s, p.a, p.c)) {
            if (! is_distinguisher(current->relation, x, y, s, p.c, p.a))
                throw PreconditionError("relation is not a distinguisher with respect to (a,c) or (c,a)");
            current = compose(current, neq(p));
        }
        if (is_forcer(current->relation, x, y, s, p.a, p.c))
            return current;
        auto f = purify(current, p);
        if (! is_forcer(f->relation, x, y, s, p.a, p.c))
            throw InternalError("purification did not produce a forcer");
        return f;
    }

    auto GadgetLibrary::forcer_for_pair(const RelationPtr & f, const P4 & p, int s, int t, int x, int y,
        const vector<int> & set) -> RelationPtr
    {
        if (s == p.a && t == p.c)
            return f;
        if (s == p.c && t == p.a)
            return compose(f, neq(p));
        if ((s == p.b && t == p.d) || (s == p.d && t == p.b)) {
            // Step from {a,c} to {b,d}, then purify on the reversed path,
            // whose (a,c) is (d,b).
            auto reversed = p.reversed();
            auto d = compose(f, edge_step({p.a, p.c}, {p.b, p.d}));
            auto db = forcer_wrt_ac(d, x, y, set, reversed);
            if (s == p.d)
                return db;
            return compose(db, neq(reversed));
        }
        throw PreconditionError("pair is not a one-sided pair of the P4");
    }

    auto GadgetLibrary::distinguisher_to_forcer(const RelationPtr & r, int x, int y, const vector<int> & s,
        const P4 & p) -> ForcerFamily
    {
        ForcerFamily result;
        result.ac = forcer_wrt_ac(r, x, y, s, p);
        result.ca = forcer_for_pair(result.ac, p, p.c, p.a, x, y, s);
        result.db = forcer_for_pair(result.ac, p, p.d, p.b, x, y, s);
        result.bd = forcer_for_pair(result.ac, p, p.b, p.d, x, y, s);
        if (! is_forcer(result.ca->relation, x, y, s, p.c, p.a) || ! is_forcer(result.bd->relation, x, y, s, p.b, p.d)
            || ! is_forcer(result.db->relation, x, y, s, p.d, p.b))
            throw InternalError("forcer family fails its invariants");
        return result;
    }

    auto GadgetLibrary::forcer_on_p4(const RelationPtr & r, int x, int y, const vector<int> & s, int alpha,
        int beta) -> PropagationResult
    {
        if (! is_distinguisher(r->relation, x, y, s, alpha, beta))
            throw PreconditionError("relation is not an (x,y,S)-distinguisher with respect to the pair");
        if (_components.side[alpha] != _components.side[beta])
            throw PreconditionError("distinguisher pair is not one-sided");

        PropagationResult result;
        if (pair_of(alpha, beta) == pair_of(_anchor.a, _anchor.c)) {
            result.forcer = forcer_wrt_ac(r, x, y, s, _anchor);
            result.start = _anchor;
            return result;
        }

        P4 q;
        RelationPtr f;
        auto common = intersection(_h.neighbors(alpha), _h.neighbors(beta));
        if (! common.empty()) {
            auto only_beta = difference(_h.neighbors(beta), _h.neighbors(alpha));
            if (! only_beta.empty())
                q = {alpha, common.front(), beta, only_beta.front()};
            else {
                auto only_alpha = difference(_h.neighbors(alpha), _h.neighbors(beta));
                check(! only_alpha.empty(), "irredundant pair has distinct neighborhoods");
                q = {beta, common.front(), alpha, only_alpha.front()};
            }
            check(is_induced_p4(_h, q), "common-neighbor P4 is induced");
            f = forcer_wrt_ac(r, x, y, s, q);
        }
        else {
            auto path = shortest_path(_h, {alpha}, {beta});
            int k = static_cast<int>(path.size());
            check(k >= 5, "one-sided pair without common neighbor is at distance at least 4");
            auto d = r;
            for (int i = 0; i + 4 < k; i += 2) {
                auto first = edge_step({path[i], path[k - 1]}, {path[i + 1], path[k - 2]});
                auto second = edge_step({path[i + 1], path[k - 2]}, {path[i + 2], path[k - 1]});
                d = compose(d, compose(first, second));
            }
            q = {path[k - 1], path[k - 2], path[k - 3], path[k - 4]};
            check(is_induced_p4(_h, q), "end of a shortest path is an induced P4");
            f = forcer_wrt_ac(d, x, y, s, q);
        }
        result.start = q;

        int from = find_p4(_p4s, q.vertices()), to = find_p4(_p4s, _anchor.vertices());
        auto route = p4_path(_p4s, from, to);
        check(! route.empty(), "P4 structure is connected");
        result.hops = static_cast<int>(route.size()) - 1;
        for (std::size_t i = 1; i < route.size(); ++i) {
            auto n = _p4s.p4s[route[i]];
            auto qa = pair_of(q.a, q.c), qb = pair_of(q.b, q.d);
            auto na = pair_of(n.a, n.c), nb = pair_of(n.b, n.d);
            P4 oriented;
            if (na == qa || na == qb)
                oriented = n;
            else if (nb == qa || nb == qb)
                oriented = n.reversed();
            else
                throw InternalError("adjacent P4s share no one-sided pair");
            f = forcer_for_pair(f, q, oriented.a, oriented.c, x, y, s);
            q = oriented;
        }
        f = forcer_for_pair(f, q, _anchor.a, _anchor.c, x, y, s);
        if (! is_forcer(f->relation, x, y, s, _anchor.a, _anchor.c))
            throw InternalError("propagated relation is not a forcer");
        result.forcer = f;
        return result;
    }

    auto GadgetLibrary::build_forcer(int x, int y, const vector<int> & s) -> RelationPtr
    {
        auto ss = sorted_copy(s);
        if (! one_sided(ss))
            throw PreconditionError("S must be one-sided");
        if (x == y || ! member(ss, x) || ! member(ss, y))
            throw PreconditionError("x and y must be distinct elements of S");
        return build_forcer_at(x, y, ss, 0);
    }

    auto GadgetLibrary::build_forcer_at(int x, int y, const vector<int> & s, int depth) -> RelationPtr
    {
        auto key = "forcer:" + std::to_string(x) + "," + std::to_string(y) + "|" + key_of(s);
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;
        if (depth > static_cast<int>(s.size()) * _depth_guard + _h.size())
            throw InternalError("forcer recursion exceeded its depth guard");
        ++_stats.forcer_calls;
        _stats.max_forcer_depth = std::max(_stats.max_forcer_depth, depth);

        auto nx = _h.neighbors(x), ny = _h.neighbors(y);
        RelationPtr d;
        int dx = x, dy = y, alpha = _anchor.a, beta = _anchor.c;

        if (s.size() == 2) {
            auto only_y = difference(ny, nx);
            if (only_y.empty()) {
                std::swap(dx, dy);
                only_y = difference(nx, ny);
            }
            check(! only_y.empty(), "irredundant vertices have distinct neighborhoods");
            int q = only_y.front(), p = _h.neighbors(dx).front();
            d = edge_step({dx, dy}, {p, q});
            alpha = p;
            beta = q;
        }
        else {
            auto s0 = difference(s, pair_of(x, y));
            auto path = shortest_path(_h, pair_of(x, y), s0);
            int k = static_cast<int>(path.size());
            check(k >= 3, "distinct one-sided sets are at distance at least 2");
            int p2 = path[1];

            // q: both x and y have a neighbor in {p2, q}, and one of p2, q
            // has exactly one neighbor in {x, y}.
            auto hits = [&](int v) { return int(member(nx, v)) + int(member(ny, v)); };
            int q = -1;
            for (int v = 0; v < _h.size() && q == -1; ++v) {
                if (v == p2 || _components.side[v] != _components.side[p2])
                    continue;
                bool cover_x = member(nx, p2) || member(nx, v), cover_y = member(ny, p2) || member(ny, v);
                if (cover_x && cover_y && (hits(p2) == 1 || hits(v) == 1))
                    q = v;
            }
            check(q != -1, "a second neighbor vertex exists");

            // Rename so that p is adjacent to x and q to y but not to x.
            int p = p2;
            if (member(nx, p) && member(ny, q) && ! member(nx, q)) {
            }
            else if (member(ny, p) && member(nx, q) && ! member(ny, q))
                std::swap(dx, dy);
            else if (member(nx, q) && member(ny, p) && ! member(nx, p))
                std::swap(p, q);
            else {
                std::swap(dx, dy);
                std::swap(p, q);
            }
            auto ndx = _h.neighbors(dx);

            // Least set containing p_{k-1} whose neighborhood covers S0,
            // by size and then lexicographically.
            int anchor_vertex = path[k - 2];
            vector<int> pool;
            for (int v = 0; v < _h.size(); ++v)
                if (v != anchor_vertex && _components.side[v] == _components.side[anchor_vertex])
                    pool.push_back(v);
            vector<int> cover;
            for (std::size_t size = 0; size < s0.size() && cover.empty(); ++size) {
                vector<int> pick(size);
                std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t at, std::size_t from) {
                    if (at == size) {
                        auto candidate = sorted_copy([&] {
                            auto c = pick;
                            c.push_back(anchor_vertex);
                            return c;
                        }());
                        auto covered = neighborhood(_h, candidate);
                        if (std::includes(covered.begin(), covered.end(), s0.begin(), s0.end())) {
                            cover = candidate;
                            return true;
                        }
                        return false;
                    }
                    for (std::size_t i = from; i < pool.size(); ++i) {
                        pick[at] = pool[i];
                        if (search(at + 1, i + 1))
                            return true;
                    }
                    return false;
                };
                search(0, 0);
            }
            check(! cover.empty(), "a covering set of size at most |S0| exists");
            auto s1 = unite(pair_of(p, q), cover);

            if (k == 3) {
                check(s1.size() < s.size(), "case 1 shrinks S");
                auto part = build_partitioner_at(intersection(s1, ndx), difference(s1, ndx), depth + 1);
                d = compose(edge_step(s, s1), part);
            }
            else {
                auto inner = build_forcer_at(p, q, s1, depth + 1);
                d = compose(edge_step(s, s1), inner);
            }
        }

        // The construction is an (x,y,S)- or (y,x,S)-distinguisher with
        // respect to (alpha, beta) or (beta, alpha); find which.
        int ox = -1, oy = -1, oa = -1, ob = -1;
        for (auto [u, w] : {std::pair{dx, dy}, std::pair{dy, dx}})
            for (auto [g, e] : {std::pair{alpha, beta}, std::pair{beta, alpha}})
                if (ox == -1 && is_distinguisher(d->relation, u, w, s, g, e)) {
                    ox = u;
                    oy = w;
                    oa = g;
                    ob = e;
                }
        if (ox == -1)
            throw InternalError("constructed relation is not a distinguisher for " + std::to_string(x) + ", "
                + std::to_string(y));

        auto f = forcer_on_p4(d, ox, oy, s, oa, ob).forcer;
        if (ox != x)
            f = compose(f, neq(_anchor));
        if (! is_forcer(f->relation, x, y, s, _anchor.a, _anchor.c))
            throw InternalError("built relation is not a forcer");
        return _memo[key] = f;
    }

    auto GadgetLibrary::build_indicator(const vector<int> & s) -> Indicator
    {
        auto ss = sorted_copy(s);
        if (! one_sided(ss))
            throw PreconditionError("S must be one-sided");
        return build_indicator_at(ss, 0);
    }

    auto GadgetLibrary::build_indicator_at(const vector<int> & s, int depth) -> Indicator
    {
        if (s.size() < 2)
            throw PreconditionError("an indicator needs |S| >= 2");
        auto key = key_of(s);
        if (auto it = _indicators.find(key); it != _indicators.end())
            return it->second;

        vector<RelationPtr> forcers;
        Builder b;
        int u = b.element(s);
        b.j.interface.push_back(u);
        auto ac = pair_of(_anchor.a, _anchor.c);
        for (int i : s)
            for (int j : s)
                if (i != j) {
                    auto f = build_forcer_at(i, j, s, depth);
                    forcers.push_back(f);
                    int e = b.element(ac);
                    b.j.interface.push_back(e);
                    b.tuple(f->name, {u, e});
                }

        auto table = extension_counts(b.j.structure, b.j.interface, target_with(_h, forcers));
        vector<Tuple> support;
        for (auto & [t, c] : table)
            if (c != 0)
                support.push_back(t);
        auto relation = Relation::from_tuples(static_cast<int>(b.j.interface.size()), support);
        if (! is_indicator(relation, s))
            throw InternalError("indicator support fails its invariants");

        Indicator result;
        result.relation = finish(realize(_h, "indicator", relation, b.j, forcers));
        result.s = s;
        for (int x : s) {
            std::optional<Tuple> least;
            relation.for_each([&](const Tuple & t) {
                if (t[0] == x) {
                    Tuple rest(t.begin() + 1, t.end());
                    if (! least || rest < *least)
                        least = rest;
                }
            });
            result.ids.push_back(*least);
        }
        return _indicators[key] = result;
    }

    auto GadgetLibrary::realize_over(const vector<int> & s, int p, int q, const Relation & r) -> RelationPtr
    {
        auto ss = sorted_copy(s);
        if (! one_sided(ss))
            throw PreconditionError("S must be one-sided");
        return realize_over_at(ss, p, q, r, 0);
    }

    auto GadgetLibrary::realize_over_at(const vector<int> & s, int p, int q, const Relation & r, int depth)
        -> RelationPtr
    {
        if (p < 1 || q < 0 || r.arity() != p + q)
            throw PreconditionError("relation arity must be p + q with p >= 1");
        auto ac = pair_of(_anchor.a, _anchor.c);
        bool inside = true;
        r.for_each([&](const Tuple & t) {
            for (int i = 0; i < p + q; ++i)
                if (! member(i < p ? s : ac, t[i]))
                    inside = false;
        });
        if (! inside)
            throw PreconditionError("relation is not inside S^p x {a,c}^q");

        auto key = "over:" + key_of(s) + std::to_string(p) + "," + std::to_string(q) + "|" + r.key();
        if (auto it = _memo.find(key); it != _memo.end())
            return it->second;

        Count full = pow(Count(s.size()), static_cast<unsigned>(p)) * pow(Count(2), static_cast<unsigned>(q));
        if (Count(r.size()) == full) {
            Builder b;
            for (int i = 0; i < p + q; ++i)
                b.j.interface.push_back(b.element(i < p ? s : ac));
            return _memo[key] = finish(realize(_h, "full", r, b.j, {}));
        }
        if (s == ac)
            return _memo[key] = ac_relation(_anchor, r);

        int k = static_cast<int>(s.size() * (s.size() - 1));
        Indicator ind;
        if (s.size() >= 2)
            ind = build_indicator_at(s, depth);
        else
            ind.ids.push_back({});
        if (p * k + q > _options.max_ac_arity)
            throw SizeError("translated relation arity " + std::to_string(p * k + q) + " exceeds the configured bound "
                + std::to_string(_options.max_ac_arity));

        vector<Tuple> translated;
        r.for_each([&](const Tuple & t) {
            Tuple u;
            for (int i = 0; i < p; ++i) {
                auto & id = ind.ids[std::lower_bound(s.begin(), s.end(), t[i]) - s.begin()];
                u.insert(u.end(), id.begin(), id.end());
            }
            u.insert(u.end(), t.begin() + p, t.end());
            translated.push_back(std::move(u));
        });

        Builder b;
        vector<RelationPtr> uses;
        vector<int> ys;
        for (int l = 0; l < p; ++l)
            ys.push_back(b.element(s.size() == 1 ? std::optional<vector<int>>{s} : std::nullopt));
        vector<int> us;
        for (int l = 0; l < p; ++l) {
            Tuple row{ys[l]};
            for (int m = 0; m < k; ++m) {
                us.push_back(b.element());
                row.push_back(us.back());
            }
            if (k > 0)
                b.tuple(ind.relation->name, row);
        }
        vector<int> bs;
        for (int l = 0; l < q; ++l)
            bs.push_back(b.element(ac));
        if (k > 0)
            uses.push_back(ind.relation);

        int arity = p * k + q;
        if (arity > 0) {
            auto ri = ac_relation(_anchor, Relation::from_tuples(arity, translated));
            Tuple row = us;
            row.insert(row.end(), bs.begin(), bs.end());
            b.tuple(ri->name, row);
            uses.push_back(ri);
        }
        else if (translated.empty())
            b.element(vector<int>{});

        b.j.interface = ys;
        b.j.interface.insert(b.j.interface.end(), bs.begin(), bs.end());
        return _memo[key] = finish(realize(_h, "over-s", r, b.j, uses));
    }

    auto GadgetLibrary::build_partitioner(const vector<int> & xs, const vector<int> & ys) -> RelationPtr
    {
        auto s = unite(sorted_copy(xs), sorted_copy(ys));
        if (! one_sided(s))
            throw PreconditionError("S must be one-sided");
        return build_partitioner_at(xs, ys, 0);
    }

    auto GadgetLibrary::build_partitioner_at(const vector<int> & xs, const vector<int> & ys, int depth)
        -> RelationPtr
    {
        auto x = sorted_copy(xs), y = sorted_copy(ys);
        if (! intersection(x, y).empty())
            throw PreconditionError("partition blocks overlap");
        auto s = unite(x, y);
        vector<Tuple> tuples;
        for (int v : x)
            tuples.push_back({v, _anchor.a});
        for (int v : y)
            tuples.push_back({v, _anchor.c});
        auto r = realize_over_at(s, 1, 1, Relation::from_tuples(2, tuples), depth);
        if (! is_partitioner(r->relation, x, y, _anchor.a, _anchor.c))
            throw InternalError("realized relation is not a partitioner");
        return r;
    }

    auto irredundant_view(const Graph & h, const vector<int> & s) -> IrredundantView
    {
        if (s.empty())
            throw PreconditionError("S must be nonempty");
        auto ss = sorted_copy(s);
        auto comps = components(h);
        for (int v : ss)
            if (v < 0 || v >= h.size())
                throw PreconditionError("S contains an unknown vertex");
        int c = comps.component_of[ss.front()];
        for (int v : ss)
            if (comps.component_of[v] != c || comps.side[v] != comps.side[ss.front()])
                throw PreconditionError("S must be one-sided in one component");
        if (! comps.bipartite[c] || comps.has_loop[c])
            throw PreconditionError("the component of S must be bipartite without loops");
        if (! is_irredundant(h, ss))
            throw PreconditionError("S must be irredundant");

        IrredundantView view;
        view.labels = maximal_irredundant_superset(h, ss, comps.members[c]);
        view.graph = induced_subgraph(h, view.labels);
        view.position.assign(h.size(), -1);
        for (std::size_t i = 0; i < view.labels.size(); ++i)
            view.position[view.labels[i]] = static_cast<int>(i);
        auto p4s = induced_p4s(view.graph);
        if (p4s.empty())
            throw PreconditionError("the component of S has irr = 1");
        auto inner = components(view.graph);
        view.anchor = p4s.front();
        if (inner.side[view.anchor.a] != inner.side[view.position[ss.front()]])
            view.anchor = view.anchor.reversed();
        return view;
    }

    auto lifted_oracle(const Graph & h, const IrredundantView & view, int threads) -> GraphOracle
    {
        return [&h, &view, threads](const Graph & g, const ListAssignment & lists, const TreeDecomposition & td) {
            ListAssignment mapped(lists.size());
            for (std::size_t v = 0; v < lists.size(); ++v) {
                for (int x : lists[v])
                    mapped[v].push_back(view.labels.at(x));
                std::sort(mapped[v].begin(), mapped[v].end());
            }
            return count_dp(g, mapped, td, h, {threads}).count;
        };
    }
}
