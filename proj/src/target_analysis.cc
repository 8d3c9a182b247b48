#include <lhom/common.hh>
#include <lhom/target_analysis.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

using std::string;
using std::vector;

namespace lhom
{
    auto neighborhood_classes(const Graph & h, const vector<int> & vertices) -> vector<vector<int>>
    {
        std::map<vector<int>, vector<int>> by_neighborhood;
        for (int v : vertices)
            by_neighborhood[h.neighbors(v)].push_back(v);
        vector<vector<int>> classes;
        for (auto & [n, members] : by_neighborhood) {
            std::sort(members.begin(), members.end());
            classes.push_back(members);
        }
        std::sort(classes.begin(), classes.end());
        return classes;
    }

    auto is_irredundant(const Graph & h, const vector<int> & vertices) -> bool
    {
        return neighborhood_classes(h, vertices).size() == vertices.size();
    }

    auto maximal_irredundant_superset(const Graph & h, const vector<int> & s, const vector<int> & pool) -> vector<int>
    {
        if (! is_irredundant(h, s))
            throw PreconditionError("set is not irredundant");
        std::set<vector<int>> seen;
        for (int v : s)
            seen.insert(h.neighbors(v));
        vector<int> result = s;
        for (auto & cls : neighborhood_classes(h, pool))
            if (seen.insert(h.neighbors(cls.front())).second)
                result.push_back(cls.front());
        std::sort(result.begin(), result.end());
        return result;
    }

    auto to_string(ComponentKind k) -> string
    {
        switch (k) {
        case ComponentKind::reflexive_clique: return "reflexive-clique";
        case ComponentKind::biclique: return "biclique";
        case ComponentKind::hard: return "hard";
        }
        return "?";
    }

    auto analyse_component(const Graph & h, const vector<int> & vertices) -> ComponentAnalysis
    {
        ComponentAnalysis a;
        a.vertices = vertices;
        std::sort(a.vertices.begin(), a.vertices.end());
        if (a.vertices.empty())
            throw PreconditionError("empty component");

        // Two-colour from the least vertex.
        std::map<int, int> side;
        a.bipartite = true;
        std::deque<int> queue{a.vertices.front()};
        side[a.vertices.front()] = 0;
        while (! queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : h.neighbors(v)) {
                if (w == v) {
                    a.has_loop = true;
                    a.bipartite = false;
                    continue;
                }
                auto it = side.find(w);
                if (it == side.end()) {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                }
                else if (it->second == side[v])
                    a.bipartite = false;
            }
        }
        if (side.size() != a.vertices.size())
            throw PreconditionError("vertex set is not a connected component");

        auto pick = [](const vector<vector<int>> & classes) {
            vector<int> w;
            for (auto & c : classes)
                w.push_back(c.front());
            std::sort(w.begin(), w.end());
            return w;
        };

        if (a.bipartite) {
            for (int v : a.vertices)
                (side[v] == 0 ? a.side_x : a.side_y).push_back(v);
            auto cx = neighborhood_classes(h, a.side_x);
            auto cy = neighborhood_classes(h, a.side_y);
            a.witness = cy.size() > cx.size() ? pick(cy) : pick(cx);
            a.irr = static_cast<int>(a.witness.size());

            bool complete = true;
            for (int x : a.side_x)
                for (int y : a.side_y)
                    complete = complete && h.has_edge(x, y);
            a.kind = complete ? ComponentKind::biclique : ComponentKind::hard;
        }
        else {
            a.witness = pick(neighborhood_classes(h, a.vertices));
            a.irr = static_cast<int>(a.witness.size());
            bool reflexive_clique = true;
            for (int u : a.vertices)
                for (int v : a.vertices)
                    reflexive_clique = reflexive_clique && h.has_edge(u, v);
            a.kind = reflexive_clique ? ComponentKind::reflexive_clique : ComponentKind::hard;
        }
        return a;
    }

    auto irr(const Graph & h) -> IrrCertificate
    {
        if (h.size() == 0)
            throw PreconditionError("target graph has no vertices");
        IrrCertificate cert;
        auto comps = components(h);
        for (std::size_t i = 0; i < comps.members.size(); ++i) {
            cert.components.push_back(analyse_component(h, comps.members[i]));
            auto & a = cert.components.back();
            if (a.irr > cert.value) {
                cert.value = a.irr;
                cert.witness = a.witness;
                cert.component = static_cast<int>(i);
            }
        }
        return cert;
    }

    auto associated_bipartite(const Graph & h) -> Graph
    {
        int n = h.size();
        Graph b(2 * n);
        for (auto [u, v] : h.edges()) {
            b.add_edge(u, v + n);
            b.add_edge(v, u + n);
        }
        return b;
    }

    auto P4::vertices() const -> vector<int>
    {
        vector<int> v{a, b, c, d};
        std::sort(v.begin(), v.end());
        return v;
    }

    auto is_induced_p4(const Graph & h, const P4 & p) -> bool
    {
        int v[4] = {p.a, p.b, p.c, p.d};
        for (int i = 0; i < 4; ++i) {
            if (v[i] < 0 || v[i] >= h.size())
                return false;
            for (int j = 0; j < 4; ++j) {
                if (i != j && v[i] == v[j])
                    return false;
                bool want = (j == i + 1 || i == j + 1);
                if (h.has_edge(v[i], v[j]) != want)
                    return false;
            }
        }
        return true;
    }

    auto induced_p4s(const Graph & h) -> vector<P4>
    {
        vector<P4> result;
        int n = h.size();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = a + 1; d < n; ++d)
                        if (is_induced_p4(h, {a, b, c, d}))
                            result.push_back({a, b, c, d});
        std::sort(result.begin(), result.end(), [](const P4 & x, const P4 & y) {
            return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
        });
        return result;
    }

    auto p4_structure(const Graph & h) -> P4Structure
    {
        P4Structure s;
        auto comps = components(h);
        if (h.size() == 0 || comps.members.size() != 1 || ! comps.bipartite[0] || ! is_irredundant(h, comps.members[0]))
            return s;
        s.applicable = true;
        s.p4s = induced_p4s(h);
        int m = static_cast<int>(s.p4s.size());
        s.adjacency.resize(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j)
                    continue;
                int shared[2] = {0, 0};
                auto vi = s.p4s[i].vertices(), vj = s.p4s[j].vertices();
                for (int v : vi)
                    if (std::binary_search(vj.begin(), vj.end(), v))
                        ++shared[comps.side[v]];
                if (shared[0] == 2 || shared[1] == 2)
                    s.adjacency[i].push_back(j);
            }
        s.connected = true;
        if (m > 0) {
            vector<bool> seen(m, false);
            std::deque<int> queue{0};
            seen[0] = true;
            int count = 1;
            while (! queue.empty()) {
                int i = queue.front();
                queue.pop_front();
                for (int j : s.adjacency[i])
                    if (! seen[j]) {
                        seen[j] = true;
                        ++count;
                        queue.push_back(j);
                    }
            }
            s.connected = count == m;
        }
        return s;
    }

    auto find_p4(const P4Structure & s, const vector<int> & vertex_set) -> int
    {
        auto want = vertex_set;
        std::sort(want.begin(), want.end());
        for (std::size_t i = 0; i < s.p4s.size(); ++i)
            if (s.p4s[i].vertices() == want)
                return static_cast<int>(i);
        return -1;
    }

    auto p4_path(const P4Structure & s, int from, int to) -> vector<int>
    {
        int m = static_cast<int>(s.p4s.size());
        vector<int> parent(m, -2);
        std::deque<int> queue{from};
        parent.at(from) = -1;
        while (! queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            if (i == to)
                break;
            for (int j : s.adjacency[i])
                if (parent[j] == -2) {
                    parent[j] = i;
                    queue.push_back(j);
                }
        }
        if (parent.at(to) == -2)
            return {};
        vector<int> path;
        for (int i = to; i != -1; i = parent[i])
            path.push_back(i);
        std::reverse(path.begin(), path.end());
        return path;
    }
}
