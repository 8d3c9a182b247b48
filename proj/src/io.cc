#include <lhom/io.hh>
#include <lhom/target_analysis.hh>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

using std::string;
using std::vector;

namespace lhom
{
    namespace
    {
        struct Token
        {
            string text;
            int column;
        };

        struct Line
        {
            int number;
            vector<Token> tokens;

            auto size() const -> std::size_t { return tokens.size(); }
            auto operator[](std::size_t i) const -> const Token & { return tokens[i]; }

            [[noreturn]] auto fail(const string & message, std::size_t at) const -> void
            {
                int column = at < tokens.size() ? tokens[at].column : 0;
                throw InputError(message, number, column);
            }

            auto integer(std::size_t at, long long lo, long long hi, const char * what) const -> int
            {
                if (at >= tokens.size())
                    fail(string("missing ") + what, at);
                auto & t = tokens[at].text;
                long long value = 0;
                auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
                if (ec != std::errc{} || end != t.data() + t.size())
                    fail(string("expected an integer ") + what + ", found '" + t + "'", at);
                if (value < lo || value > hi)
                    fail(string(what) + " " + t + " out of range", at);
                return static_cast<int>(value);
            }

            auto expect_size(std::size_t n) const -> void
            {
                if (tokens.size() > n)
                    fail("unexpected token '" + tokens[n].text + "'", n);
                if (tokens.size() < n)
                    fail("line too short", tokens.size());
            }
        };

        auto read_lines(std::istream & in) -> vector<Line>
        {
            vector<Line> lines;
            string text;
            int number = 0;
            while (std::getline(in, text)) {
                ++number;
                Line line{number, {}};
                std::size_t i = 0;
                while (i < text.size()) {
                    if (std::isspace(static_cast<unsigned char>(text[i]))) {
                        ++i;
                        continue;
                    }
                    std::size_t start = i;
                    while (i < text.size() && ! std::isspace(static_cast<unsigned char>(text[i])))
                        ++i;
                    line.tokens.push_back({text.substr(start, i - start), static_cast<int>(start) + 1});
                }
                if (line.tokens.empty() || line.tokens[0].text == "c")
                    continue;
                lines.push_back(std::move(line));
            }
            return lines;
        }

        auto sorted_unique(vector<int> v) -> vector<int>
        {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        }

        constexpr long long int_max = 1'000'000'000;

        // Parses "l <element> <v>..." into lists; returns false for other lines.
        auto list_line(const Line & line, int elements, int target_size, vector<std::optional<vector<int>>> & lists)
            -> bool
        {
            if (line[0].text != "l")
                return false;
            int e = line.integer(1, 1, elements, "element") - 1;
            if (lists[e])
                line.fail("second list for the same element", 1);
            vector<int> l;
            for (std::size_t i = 2; i < line.size(); ++i)
                l.push_back(line.integer(i, 1, target_size, "list vertex") - 1);
            lists[e] = sorted_unique(l);
            return true;
        }

        auto parse_structure(const vector<Line> & lines, std::optional<Interface> * interface) -> RelationalStructure
        {
            RelationalStructure s;
            bool sized = false;
            vector<std::optional<vector<int>>> lists;
            for (auto & line : lines) {
                auto & key = line[0].text;
                if (key == "u") {
                    if (sized)
                        line.fail("duplicate universe line", 0);
                    line.expect_size(2);
                    s.universe = line.integer(1, 0, int_max, "universe size");
                    lists.assign(s.universe, std::nullopt);
                    sized = true;
                    continue;
                }
                if (! sized)
                    line.fail("expected 'u <size>' first", 0);
                if (key == "s") {
                    line.expect_size(3);
                    if (s.symbol_index(line[1].text) != -1)
                        line.fail("duplicate symbol '" + line[1].text + "'", 1);
                    s.add_symbol(line[1].text, line.integer(2, 0, 64, "arity"));
                }
                else if (key == "t") {
                    if (line.size() < 2)
                        line.fail("missing symbol", 1);
                    int sym = s.symbol_index(line[1].text);
                    if (sym == -1)
                        line.fail("unknown symbol '" + line[1].text + "'", 1);
                    line.expect_size(2 + s.symbols[sym].arity);
                    Tuple t;
                    for (std::size_t i = 2; i < line.size(); ++i)
                        t.push_back(line.integer(i, 1, s.universe, "element") - 1);
                    s.add_tuple(sym, t);
                }
                else if (key == "l") {
                    list_line(line, s.universe, int_max, lists);
                }
                else if (key == "i" && interface) {
                    if (interface->has_value())
                        line.fail("duplicate interface line", 0);
                    Interface x;
                    for (std::size_t i = 1; i < line.size(); ++i)
                        x.push_back(line.integer(i, 1, s.universe, "interface element") - 1);
                    if (sorted_unique(x).size() != x.size())
                        line.fail("repeated interface element", 1);
                    *interface = x;
                }
                else
                    line.fail("unknown line type '" + key + "'", 0);
            }
            if (! sized)
                throw InputError("missing 'u <size>' line");
            s.lists = lists;
            return s;
        }

        auto write_tuple(std::ostream & out, const Tuple & t) -> void
        {
            for (int v : t)
                out << ' ' << v + 1;
        }

        auto one_based(const vector<int> & v) -> vector<int>
        {
            auto r = v;
            for (auto & x : r)
                ++x;
            return r;
        }

        // One vertex per neighborhood class, so the result is irredundant.
        auto twin_reduced(const Graph & h, const vector<int> & vertices) -> Graph
        {
            vector<int> keep;
            for (auto & cls : neighborhood_classes(h, vertices))
                keep.push_back(cls.front());
            std::sort(keep.begin(), keep.end());
            return induced_subgraph(h, keep);
        }
    }

    auto read_graph(std::istream & in) -> Graph
    {
        std::optional<Graph> g;
        int declared = 0, seen = 0;
        std::set<std::pair<int, int>> edges;
        for (auto & line : read_lines(in)) {
            auto & key = line[0].text;
            if (key == "p") {
                if (g)
                    line.fail("duplicate header", 0);
                line.expect_size(4);
                if (line[1].text != "graph")
                    line.fail("expected 'p graph <n> <m>'", 1);
                g.emplace(line.integer(2, 0, int_max, "vertex count"));
                declared = line.integer(3, 0, int_max, "edge count");
            }
            else if (key == "e") {
                if (! g)
                    line.fail("edge before header", 0);
                line.expect_size(3);
                int u = line.integer(1, 1, g->size(), "vertex") - 1;
                int v = line.integer(2, 1, g->size(), "vertex") - 1;
                if (! edges.insert({std::min(u, v), std::max(u, v)}).second)
                    line.fail("duplicate edge", 0);
                g->add_edge(u, v);
                ++seen;
            }
            else
                line.fail("unknown line type '" + key + "'", 0);
        }
        if (! g)
            throw InputError("missing 'p graph' header");
        if (seen != declared)
            throw InputError("header declares " + std::to_string(declared) + " edges, found " + std::to_string(seen));
        return *g;
    }

    auto write_graph(std::ostream & out, const Graph & g) -> void
    {
        auto edges = g.edges();
        out << "p graph " << g.size() << ' ' << edges.size() << '\n';
        for (auto [u, v] : edges)
            out << "e " << u + 1 << ' ' << v + 1 << '\n';
    }

    auto read_lists(std::istream & in, int vertices, int target_size) -> ListAssignment
    {
        vector<std::optional<vector<int>>> lists(vertices);
        for (auto & line : read_lines(in))
            if (! list_line(line, vertices, target_size, lists))
                line.fail("unknown line type '" + line[0].text + "'", 0);
        ListAssignment result(vertices);
        for (int v = 0; v < vertices; ++v) {
            if (lists[v])
                result[v] = *lists[v];
            else
                for (int x = 0; x < target_size; ++x)
                    result[v].push_back(x);
        }
        return result;
    }

    auto write_lists(std::ostream & out, const ListAssignment & lists) -> void
    {
        for (std::size_t v = 0; v < lists.size(); ++v) {
            out << "l " << v + 1;
            write_tuple(out, lists[v]);
            out << '\n';
        }
    }

    auto read_decomposition(std::istream & in, int vertices) -> TreeDecomposition
    {
        TreeDecomposition td;
        bool header = false;
        int bags = 0, max_size = 0;
        vector<bool> defined;
        for (auto & line : read_lines(in)) {
            auto & key = line[0].text;
            if (key == "s") {
                if (header)
                    line.fail("duplicate header", 0);
                line.expect_size(5);
                if (line[1].text != "td")
                    line.fail("expected 's td <bags> <max bag size> <n>'", 1);
                bags = line.integer(2, 0, int_max, "bag count");
                max_size = line.integer(3, 0, int_max, "max bag size");
                line.integer(4, vertices, vertices, "vertex count");
                td.bags.assign(bags, {});
                defined.assign(bags, false);
                header = true;
            }
            else if (! header)
                line.fail("expected 's td' header first", 0);
            else if (key == "b") {
                int id = line.integer(1, 1, bags, "bag id") - 1;
                if (defined[id])
                    line.fail("bag defined twice", 1);
                defined[id] = true;
                vector<int> bag;
                for (std::size_t i = 2; i < line.size(); ++i)
                    bag.push_back(line.integer(i, 1, vertices, "vertex") - 1);
                if (sorted_unique(bag).size() != bag.size())
                    line.fail("repeated vertex in bag", 2);
                if (static_cast<int>(bag.size()) > max_size)
                    line.fail("bag larger than the declared maximum", 0);
                td.bags[id] = sorted_unique(bag);
            }
            else {
                line.expect_size(2);
                int i = line.integer(0, 1, bags, "bag id") - 1;
                int j = line.integer(1, 1, bags, "bag id") - 1;
                td.edges.emplace_back(i, j);
            }
        }
        if (! header)
            throw InputError("missing 's td' header");
        for (int i = 0; i < bags; ++i)
            if (! defined[i])
                throw InputError("bag " + std::to_string(i + 1) + " is never defined");
        return td;
    }

    auto write_decomposition(std::ostream & out, const TreeDecomposition & td, int vertices) -> void
    {
        std::size_t max_size = 0;
        for (auto & b : td.bags)
            max_size = std::max(max_size, b.size());
        out << "s td " << td.bags.size() << ' ' << max_size << ' ' << vertices << '\n';
        for (std::size_t i = 0; i < td.bags.size(); ++i) {
            auto bag = td.bags[i];
            std::sort(bag.begin(), bag.end());
            out << "b " << i + 1;
            write_tuple(out, bag);
            out << '\n';
        }
        for (auto [i, j] : td.edges)
            out << i + 1 << ' ' << j + 1 << '\n';
    }

    auto read_structure(std::istream & in) -> RelationalStructure
    {
        return parse_structure(read_lines(in), nullptr);
    }

    auto write_structure(std::ostream & out, const RelationalStructure & s) -> void
    {
        out << "u " << s.universe << '\n';
        for (auto & sym : s.symbols)
            out << "s " << sym.name << ' ' << sym.arity << '\n';
        for (std::size_t i = 0; i < s.symbols.size(); ++i)
            for (auto & t : s.tuples[i]) {
                out << "t " << s.symbols[i].name;
                write_tuple(out, t);
                out << '\n';
            }
        for (std::size_t e = 0; e < s.lists.size(); ++e)
            if (s.lists[e]) {
                out << "l " << e + 1;
                write_tuple(out, *s.lists[e]);
                out << '\n';
            }
    }

    auto read_gadget(std::istream & in) -> Gadget
    {
        std::optional<Interface> interface;
        Gadget j;
        j.structure = parse_structure(read_lines(in), &interface);
        if (! interface)
            throw InputError("missing interface line 'i <e1> ... <ek>'");
        j.interface = *interface;
        return j;
    }

    auto write_gadget(std::ostream & out, const Gadget & j) -> void
    {
        write_structure(out, j.structure);
        out << 'i';
        write_tuple(out, j.interface);
        out << '\n';
    }

    auto read_relation(std::istream & in) -> Relation
    {
        std::optional<int> arity;
        vector<Tuple> tuples;
        for (auto & line : read_lines(in)) {
            auto & key = line[0].text;
            if (key == "r") {
                if (arity)
                    line.fail("duplicate header", 0);
                line.expect_size(2);
                arity = line.integer(1, 0, 64, "arity");
            }
            else if (key == "t") {
                if (! arity)
                    line.fail("tuple before 'r <arity>'", 0);
                line.expect_size(1 + *arity);
                Tuple t;
                for (std::size_t i = 1; i < line.size(); ++i)
                    t.push_back(line.integer(i, 1, int_max, "vertex") - 1);
                tuples.push_back(t);
            }
            else
                line.fail("unknown line type '" + key + "'", 0);
        }
        if (! arity)
            throw InputError("missing 'r <arity>' header");
        return Relation::from_tuples(*arity, tuples);
    }

    auto write_relation(std::ostream & out, const Relation & r) -> void
    {
        out << "r " << r.arity() << '\n';
        r.for_each([&](const Tuple & t) {
            out << 't';
            write_tuple(out, t);
            out << '\n';
        });
    }

    auto read_csp(std::istream & in) -> CspInstance
    {
        std::optional<CspInstance> c;
        std::optional<CspConstraint> open;
        for (auto & line : read_lines(in)) {
            auto & key = line[0].text;
            if (key == "p") {
                if (c)
                    line.fail("duplicate header", 0);
                line.expect_size(4);
                if (line[1].text != "csp")
                    line.fail("expected 'p csp <n> <q>'", 1);
                c.emplace();
                c->variables = line.integer(2, 0, int_max, "variable count");
                c->domain = line.integer(3, 0, int_max, "domain size");
            }
            else if (! c)
                line.fail("expected 'p csp' header first", 0);
            else if (key == "k") {
                if (open)
                    line.fail("constraint started before 'end'", 0);
                int arity = line.integer(1, 0, 64, "arity");
                line.expect_size(2 + arity);
                open.emplace();
                for (std::size_t i = 2; i < line.size(); ++i)
                    open->scope.push_back(line.integer(i, 1, c->variables, "variable") - 1);
            }
            else if (key == "a") {
                if (! open)
                    line.fail("tuple outside a constraint", 0);
                line.expect_size(1 + open->scope.size());
                Tuple t;
                for (std::size_t i = 1; i < line.size(); ++i)
                    t.push_back(line.integer(i, 1, c->domain, "value") - 1);
                open->allowed.push_back(t);
            }
            else if (key == "end") {
                if (! open)
                    line.fail("'end' without a constraint", 0);
                line.expect_size(1);
                c->constraints.push_back(std::move(*open));
                open.reset();
            }
            else
                line.fail("unknown line type '" + key + "'", 0);
        }
        if (! c)
            throw InputError("missing 'p csp' header");
        if (open)
            throw InputError("constraint without 'end'");
        return *c;
    }

    auto read_cnf(std::istream & in) -> CnfFormula
    {
        std::optional<CnfFormula> f;
        int declared = 0;
        vector<int> clause;
        int last_line = 0;
        for (auto & line : read_lines(in)) {
            last_line = line.number;
            if (line[0].text == "p") {
                if (f)
                    line.fail("duplicate header", 0);
                line.expect_size(4);
                if (line[1].text != "cnf")
                    line.fail("expected 'p cnf <N> <M>'", 1);
                f.emplace();
                f->variables = line.integer(2, 0, int_max, "variable count");
                declared = line.integer(3, 0, int_max, "clause count");
                continue;
            }
            if (! f)
                line.fail("expected 'p cnf' header first", 0);
            for (std::size_t i = 0; i < line.size(); ++i) {
                int lit = line.integer(i, -f->variables, f->variables, "literal");
                if (lit == 0) {
                    f->clauses.push_back(clause);
                    clause.clear();
                }
                else
                    clause.push_back(lit);
            }
        }
        if (! f)
            throw InputError("missing 'p cnf' header");
        if (! clause.empty())
            throw InputError("last clause is not terminated by 0", last_line);
        if (static_cast<int>(f->clauses.size()) != declared)
            throw InputError("header declares " + std::to_string(declared) + " clauses, found "
                + std::to_string(f->clauses.size()));
        return *f;
    }

    auto analysis_report(const Graph & h) -> string
    {
        using nlohmann::ordered_json;
        auto cert = irr(h);
        ordered_json report;
        report["vertices"] = h.size();
        report["edges"] = h.edges().size();
        report["irr"] = cert.value;
        report["witness"] = one_based(cert.witness);
        report["witness_component"] = cert.component + 1;
        auto comps = ordered_json::array();
        for (auto & c : cert.components) {
            ordered_json j;
            j["vertices"] = one_based(c.vertices);
            j["kind"] = to_string(c.kind);
            j["bipartite"] = c.bipartite;
            j["has_loop"] = c.has_loop;
            if (c.bipartite) {
                j["side_x"] = one_based(c.side_x);
                j["side_y"] = one_based(c.side_y);
            }
            j["irr"] = c.irr;
            j["witness"] = one_based(c.witness);
            if (c.kind == ComponentKind::hard) {
                // The P4 structure lives on the twin-reduced component, lifted
                // to the associated bipartite graph when it is not bipartite.
                Graph sub = induced_subgraph(h, c.vertices);
                if (! c.bipartite)
                    sub = associated_bipartite(sub);
                vector<int> all(sub.size());
                for (int v = 0; v < sub.size(); ++v)
                    all[v] = v;
                auto ps = p4_structure(twin_reduced(sub, all));
                j["p4_structure"] = {{"p4s", ps.p4s.size()}, {"connected", ps.connected}};
            }
            else
                j["p4_structure"] = nullptr;
            comps.push_back(j);
        }
        report["components"] = comps;
        auto star = associated_bipartite(h);
        report["associated_bipartite"] = {
            {"vertices", star.size()}, {"edges", star.edges().size()}, {"irr", irr(star).value}};
        return report.dump(2);
    }

    auto count_set_text(const vector<Count> & counts) -> string
    {
        string s = "{";
        for (std::size_t i = 0; i < counts.size(); ++i)
            s += (i ? "," : "") + to_string(counts[i]);
        return s + "}";
    }

    auto certificate_report(const GadgetCertificate & cert, const Relation & r, int target_size) -> string
    {
        std::ostringstream out;
        out << (cert.valid ? "valid" : "rejected: " + cert.reason) << '\n';
        out << "mode " << (cert.mode == GadgetMode::exact ? "exact" : "interpolation") << '\n';
        out << "in-counts " << count_set_text(cert.in_counts) << '\n';
        auto outs = cert.out_counts;
        Count outside = 1;
        for (int i = 0; i < r.arity(); ++i)
            outside *= target_size;
        outside -= r.size();
        std::size_t listed = 0;
        for (auto & [t, c] : cert.table)
            if (! r.contains(t) && c != 0)
                ++listed;
        if (cert.mode == GadgetMode::exact ? outside > 0 : Count(listed) < outside)
            outs.insert(outs.begin(), Count(0));
        out << "out-counts " << count_set_text(outs) << '\n';
        if (cert.mode == GadgetMode::exact)
            out << "uniform " << to_string(cert.uniform) << '\n';
        for (auto & [t, c] : cert.table) {
            out << "table";
            write_tuple(out, t);
            out << ' ' << to_string(c) << '\n';
        }
        return out.str();
    }
}
