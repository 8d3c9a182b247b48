#include "oracles.hh"

#include <functional>
#include <set>

using std::vector;

namespace lhom::testing
{
    namespace
    {
        // Calls f on every vector in [0,k)^n.
        auto odometer(int n, int k, const std::function<void(const vector<int> &)> & f) -> void
        {
            if (n > 0 && k == 0)
                return;
            vector<int> d(n, 0);
            while (true) {
                f(d);
                int i = n - 1;
                while (i >= 0 && d[i] == k - 1)
                    d[i--] = 0;
                if (i < 0)
                    return;
                ++d[i];
            }
        }

        auto structure_ok(const RelationalStructure & s, const TargetStructure & t, const vector<int> & f) -> bool
        {
            for (int e = 0; e < s.universe; ++e)
                if (e < static_cast<int>(s.lists.size()) && s.lists[e]) {
                    bool found = false;
                    for (int v : *s.lists[e])
                        found = found || v == f[e];
                    if (! found)
                        return false;
                }
            for (std::size_t i = 0; i < s.symbols.size(); ++i) {
                if (s.tuples[i].empty())
                    continue;
                const Relation & r = t.relations[t.symbol_index(s.symbols[i].name)];
                for (auto & tup : s.tuples[i]) {
                    Tuple y;
                    for (int e : tup)
                        y.push_back(f[e]);
                    if (! r.contains(y))
                        return false;
                }
            }
            return true;
        }
    }

    auto enumerate_list_homs(const Graph & g, const ListAssignment & lists, const Graph & h) -> Count
    {
        Count total = 0;
        odometer(g.size(), h.size(), [&](const vector<int> & f) {
            for (int v = 0; v < g.size(); ++v) {
                bool found = false;
                for (int x : lists[v])
                    found = found || x == f[v];
                if (! found)
                    return;
            }
            for (auto [u, v] : g.edges())
                if (! h.has_edge(f[u], f[v]))
                    return;
            ++total;
        });
        return total;
    }

    auto enumerate_structure_homs(const RelationalStructure & s, const TargetStructure & t) -> Count
    {
        Count total = 0;
        odometer(s.universe, t.universe, [&](const vector<int> & f) {
            if (structure_ok(s, t, f))
                ++total;
        });
        return total;
    }

    auto enumerate_extensions(const RelationalStructure & j, const Interface & x, const TargetStructure & t)
        -> ExtensionTable
    {
        ExtensionTable table;
        odometer(j.universe, t.universe, [&](const vector<int> & f) {
            if (structure_ok(j, t, f)) {
                Tuple y;
                for (int e : x)
                    y.push_back(f[e]);
                table[y] += 1;
            }
        });
        return table;
    }

    auto irr_by_subsets(const Graph & h) -> int
    {
        auto c = components(h);
        int best = 0;
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            auto & m = c.members[i];
            vector<vector<int>> pools;
            if (c.bipartite[i]) {
                vector<int> x, y;
                for (int v : m)
                    (c.side[v] == 0 ? x : y).push_back(v);
                pools = {x, y};
            }
            else
                pools = {m};
            for (auto & pool : pools) {
                int k = static_cast<int>(pool.size());
                for (unsigned mask = 0; mask < (1u << k); ++mask) {
                    std::set<vector<int>> seen;
                    int size = 0;
                    bool ok = true;
                    for (int b = 0; b < k; ++b)
                        if (mask & (1u << b)) {
                            ++size;
                            ok = ok && seen.insert(h.neighbors(pool[b])).second;
                        }
                    if (ok)
                        best = std::max(best, size);
                }
            }
        }
        return best;
    }

    auto solve_by_elimination(const vector<Count> & a, const vector<Count> & b) -> vector<Rational>
    {
        int k = static_cast<int>(a.size());
        vector<vector<Rational>> m(k, vector<Rational>(k + 1));
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < k; ++i)
                m[j][i] = Rational(pow(a[i], static_cast<unsigned>(j + 1)));
            m[j][k] = Rational(b[j]);
        }
        for (int col = 0; col < k; ++col) {
            int pivot = col;
            while (m[pivot][col] == 0)
                ++pivot;
            std::swap(m[pivot], m[col]);
            for (int r = 0; r < k; ++r)
                if (r != col && m[r][col] != 0) {
                    Rational factor = m[r][col] / m[col][col];
                    for (int c = col; c <= k; ++c)
                        m[r][c] -= factor * m[col][c];
                }
        }
        vector<Rational> x(k);
        for (int i = 0; i < k; ++i)
            x[i] = m[i][k] / m[i][i];
        return x;
    }

    auto enumerate_independent_sets(const Graph & g) -> Count
    {
        int n = g.size();
        Count total = 0;
        for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
            bool ok = true;
            for (auto [u, v] : g.edges())
                if ((mask >> u & 1) && (mask >> v & 1))
                    ok = false;
            if (ok)
                ++total;
        }
        return total;
    }

    auto enumerate_colourings(const Graph & g, int q) -> Count
    {
        Count total = 0;
        odometer(g.size(), q, [&](const vector<int> & f) {
            for (auto [u, v] : g.edges())
                if (f[u] == f[v])
                    return;
            ++total;
        });
        return total;
    }

    auto enumerate_csp(const CspInstance & c) -> Count
    {
        Count total = 0;
        odometer(c.variables, c.domain, [&](const vector<int> & f) {
            for (auto & con : c.constraints) {
                Tuple y;
                for (int v : con.scope)
                    y.push_back(f[v]);
                bool found = false;
                for (auto & t : con.allowed)
                    found = found || t == y;
                if (! found)
                    return;
            }
            ++total;
        });
        return total;
    }
}
