#include <lhom/decomposition.hh>
#include <lhom/gadgets.hh>
#include <lhom/homcount.hh>
#include <lhom/io.hh>
#include <lhom/realization.hh>
#include <lhom/reductions.hh>
#include <lhom/target_analysis.hh>

#include "acceptance/criteria.hh"
#include "support/gadget_checks.hh"
#include "support/random.hh"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

using namespace lhom;
using std::string;
using std::vector;

namespace
{
    struct Flags
    {
        string graph, target, lists, td, gadget, relation, cnf, output;
        string kind = "forcer";
        vector<int> s, xs, ys;
        int x = 0, y = 0;
        int q = 0;
        int p = 0, t = 0;
        std::uint64_t seed = 1;
        int threads = 1;
        std::uint64_t max_brute = default_brute_limit;
        int rounds = 20;
        bool pad = false;
        bool all = false;
    };

    template <typename F>
    auto read_file(const string & path, F reader)
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot open " + path);
        try {
            return reader(in);
        }
        catch (const InputError & e) {
            throw InputError(path + ": " + e.what());
        }
    }

    auto load_graph(const string & path) -> Graph
    {
        return read_file(path, [](std::istream & in) { return read_graph(in); });
    }

    auto load_lists(const Flags & f, int vertices, int target_size) -> ListAssignment
    {
        if (f.lists.empty())
            return full_lists(vertices, complete_graph(target_size));
        return read_file(f.lists, [&](std::istream & in) { return read_lists(in, vertices, target_size); });
    }

    auto load_td(const Flags & f, const Graph & g) -> TreeDecomposition
    {
        if (f.td.empty())
            return single_bag_decomposition(g);
        auto td = read_file(f.td, [&](std::istream & in) { return read_decomposition(in, g.size()); });
        if (! validate(g, td).ok())
            throw PreconditionError("the decomposition in " + f.td + " is not valid for the graph");
        return td;
    }

    // Vertices on the command line are 1-based.
    auto zero_based(vector<int> v, int size) -> vector<int>
    {
        for (auto & x : v) {
            if (x < 1 || x > size)
                throw InputError("vertex " + std::to_string(x) + " out of range");
            --x;
        }
        return v;
    }

    auto run_count(const Flags & f, std::ostream & out, bool brute) -> int
    {
        auto g = load_graph(f.graph);
        auto h = load_graph(f.target);
        auto lists = load_lists(f, g.size(), h.size());
        if (brute)
            out << to_string(count_brute(g, lists, h, f.max_brute)) << '\n';
        else
            out << to_string(count_dp(g, lists, load_td(f, g), h, {f.threads}).count) << '\n';
        return 0;
    }

    auto run_irr(const Flags & f, std::ostream & out) -> int
    {
        auto cert = irr(load_graph(f.target));
        out << cert.value << "\nwitness";
        for (int v : cert.witness)
            out << ' ' << v + 1;
        out << '\n';
        return 0;
    }

    auto run_verify(const Flags & f, std::ostream & out) -> int
    {
        auto h = load_graph(f.target);
        auto j = read_file(f.gadget, [](std::istream & in) { return read_gadget(in); });
        auto r = read_file(f.relation, [](std::istream & in) { return read_relation(in); });
        r.for_each([&](const Tuple & t) {
            for (int v : t)
                if (v >= h.size())
                    throw InputError(f.relation + ": vertex " + std::to_string(v + 1) + " outside the target");
        });
        out << certificate_report(certify_gadget(j, r, graph_as_structure(h)), r, h.size());
        return 0;
    }

    auto run_realize(const Flags & f, std::ostream & out) -> int
    {
        auto h = load_graph(f.target);
        if (irr(h).value < 2)
            throw PreconditionError("irr(H) = 1: the target has no hard component");
        vector<int> s, xs, ys;
        if (f.kind == "partitioner") {
            xs = zero_based(f.xs, h.size());
            ys = zero_based(f.ys, h.size());
            s = xs;
            s.insert(s.end(), ys.begin(), ys.end());
        }
        else {
            s = zero_based(f.s, h.size());
            if (f.kind == "forcer")
                for (int v : zero_based({f.x, f.y}, h.size()))
                    if (std::find(s.begin(), s.end(), v) == s.end())
                        s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        if (s.empty())
            throw InputError("no vertices given");
        auto view = irredundant_view(h, s);
        auto in_view = [&](const vector<int> & v) {
            vector<int> r;
            for (int x : v)
                r.push_back(view.position[x]);
            return r;
        };
        GadgetLibrary lib(view.graph, view.anchor);
        RelationPtr rel;
        if (f.kind == "forcer")
            rel = lib.build_forcer(view.position[f.x - 1], view.position[f.y - 1], in_view(s));
        else if (f.kind == "partitioner")
            rel = lib.build_partitioner(in_view(xs), in_view(ys));
        else if (f.kind == "indicator")
            rel = lib.build_indicator(in_view(s)).relation;
        else
            throw InputError("unknown kind '" + f.kind + "'");

        auto label = [&](int v) { return view.labels[v] + 1; };
        out << "kind " << f.kind << "\nconstruction " << rel->construction << "\ndepth " << rel->depth
            << "\nanchor " << label(view.anchor.a) << ' ' << label(view.anchor.b) << ' ' << label(view.anchor.c)
            << ' ' << label(view.anchor.d) << "\nrelation " << rel->relation.arity() << ' '
            << rel->relation.size() << '\n';
        rel->relation.for_each([&](const Tuple & t) {
            out << 't';
            for (int v : t)
                out << ' ' << label(v);
            out << '\n';
        });

        testing::Rng rng(f.seed);
        auto report = testing::check_one_level(view.graph, rel, rng, f.rounds);
        out << "oracle-check " << (report.mismatches == 0 ? "ok" : "FAILED") << ": " << report.instances
            << " instances, " << report.mismatches << " mismatches, " << report.informative << " informative\n";
        if (report.mismatches != 0)
            internal_failure("realized relation disagrees with brute force: " + report.first_failure);
        return 0;
    }

    auto run_reduce_sat(const Flags & f, std::ostream & out) -> int
    {
        auto formula = read_file(f.cnf, [](std::istream & in) { return read_cnf(in); });
        auto h = load_graph(f.target);
        int q = f.q > 0 ? f.q : 2;
        GroupingParameters params{1, 1, q, 0};
        if (f.p > 0)
            params.p = f.p;
        Count qp = 1;
        for (int i = 0; i < params.p; ++i)
            qp *= q;
        params.t = 0;
        while ((Count(1) << (params.t + 1)) <= qp)
            ++params.t;
        if (f.t > 0)
            params.t = f.t;
        auto reduced = sat_to_csp(formula, params);
        CspToLhomOptions options;
        options.threads = f.threads;
        auto result = csp_to_lhom(reduced.csp, h, options);
        out << to_string(Count(result.count * reduced.multiplier)) << '\n';
        std::cerr << "grouping p=" << params.p << " t=" << params.t << " q=" << q << ", csp variables "
                  << reduced.csp.variables << ", relations " << result.relations_realized << ", depth "
                  << result.max_depth << ", oracle calls " << result.base_calls << '\n';
        return 0;
    }

    auto run_reduce_ind_set(const Flags & f, std::ostream & out) -> int
    {
        auto g = load_graph(f.graph);
        auto lists = load_lists(f, g.size(), 4);
        out << to_string(lhom_p4_to_independent_sets(g, lists, load_td(f, g)).count) << '\n';
        return 0;
    }

    auto run_reduce_coloring(const Flags & f, std::ostream & out) -> int
    {
        auto g = load_graph(f.graph);
        if (f.q < 3)
            throw PreconditionError("--q must be at least 3");
        auto lists = load_lists(f, g.size(), f.q);
        auto r = list_coloring_to_coloring(g, lists, f.q, load_td(f, g), f.pad);
        auto kq = complete_graph(f.q);
        auto colorings = count_dp(r.graph, full_lists(r.graph.size(), kq), r.td, kq, {f.threads}).count;
        Rational value = Rational(colorings) * r.scale;
        if (denominator(value) != 1)
            internal_failure("coloring count is not a multiple of the scale");
        out << to_string(numerator(value)) << '\n';
        return 0;
    }

    auto run_selftest(const Flags & f, std::ostream & out) -> int
    {
        acceptance::Options options{f.seed, f.threads, false};
        vector<int> ids = f.all ? acceptance::criterion_ids() : vector<int>{1, 2, 3, 5, 7, 8, 9, 10};
        return acceptance::run_criteria(ids, options, out) ? 0 : 3;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Exact list homomorphism counting over tree decompositions, with the gadget reductions."};
    app.require_subcommand(1);
    Flags f;
    string description;

    auto add_threads = [&](CLI::App * c) {
        c->add_option("--threads", f.threads, "Parallelism budget (output does not depend on it)")->default_val(1);
        c->add_option("--output", f.output, "Write results to this file instead of standard output");
    };

    auto * irr_cmd = app.add_subcommand("irr", "Print irr(H) and a witness set");
    irr_cmd->add_option("--target", f.target, "Target graph file")->required();
    add_threads(irr_cmd);

    auto * count_cmd = app.add_subcommand("count", "Count list homomorphisms by dynamic programming");
    auto * brute_cmd = app.add_subcommand("count-brute", "Count list homomorphisms by enumeration");
    for (auto * c : {count_cmd, brute_cmd}) {
        c->add_option("--graph", f.graph, "Input graph file")->required();
        c->add_option("--target", f.target, "Target graph file")->required();
        c->add_option("--lists", f.lists, "List file; vertices without a line get every target vertex");
        add_threads(c);
    }
    count_cmd->add_option("--td", f.td, "Tree decomposition file; a single bag by default");
    brute_cmd->add_option("--max-brute", f.max_brute, "Largest search space to enumerate")
        ->default_val(default_brute_limit);

    auto * analyze_cmd = app.add_subcommand("analyze", "Component classification, H* and P4-structure connectivity");
    analyze_cmd->add_option("--target", f.target, "Target graph file")->required();
    add_threads(analyze_cmd);

    auto * verify_cmd = app.add_subcommand("verify-gadget", "Certify a gadget for a relation");
    verify_cmd->add_option("--gadget", f.gadget, "Gadget file")->required();
    verify_cmd->add_option("--relation", f.relation, "Relation file")->required();
    verify_cmd->add_option("--target", f.target, "Target graph file")->required();
    add_threads(verify_cmd);

    auto * realize_cmd = app.add_subcommand("realize", "Build a forcer, partitioner or indicator and check it");
    realize_cmd->add_option("--target", f.target, "Target graph file")->required();
    realize_cmd->add_option("--kind", f.kind, "forcer, partitioner or indicator")->default_val("forcer");
    realize_cmd->add_option("--x", f.x, "Forcer: the vertex sent strictly to a");
    realize_cmd->add_option("--y", f.y, "Forcer: the vertex sent strictly to c");
    realize_cmd->add_option("--s", f.s, "Forcer or indicator: the one-sided set S")->delimiter(',');
    realize_cmd->add_option("--xs", f.xs, "Partitioner: vertices sent to a")->delimiter(',');
    realize_cmd->add_option("--ys", f.ys, "Partitioner: vertices sent to c")->delimiter(',');
    realize_cmd->add_option("--seed", f.seed, "Seed for the oracle-check instances")->default_val(1);
    realize_cmd->add_option("--rounds", f.rounds, "Number of oracle-check instances")->default_val(20);
    add_threads(realize_cmd);

    auto * sat_cmd = app.add_subcommand("reduce-sat", "Count models of a DIMACS formula through list homomorphisms");
    sat_cmd->add_option("--cnf", f.cnf, "DIMACS cnf file")->required();
    sat_cmd->add_option("--target", f.target, "Target graph file")->required();
    sat_cmd->add_option("--q", f.q, "Domain size of the intermediate CSP")->default_val(2);
    sat_cmd->add_option("--p", f.p, "CSP variables per group (default 1)");
    sat_cmd->add_option("--t", f.t, "Boolean variables per group (default the largest with 2^t <= q^p)");
    add_threads(sat_cmd);

    auto * ind_cmd = app.add_subcommand("reduce-ind-set", "List homomorphisms to P4 through independent sets");
    ind_cmd->add_option("--graph", f.graph, "Input graph file")->required();
    ind_cmd->add_option("--lists", f.lists, "List file over the path 1-2-3-4");
    ind_cmd->add_option("--td", f.td, "Tree decomposition file; a single bag by default");
    add_threads(ind_cmd);

    auto * col_cmd = app.add_subcommand("reduce-coloring", "List colorings through plain colorings");
    col_cmd->add_option("--graph", f.graph, "Input graph file")->required();
    col_cmd->add_option("--lists", f.lists, "List file over colors 1..q");
    col_cmd->add_option("--q", f.q, "Number of colors")->required();
    col_cmd->add_option("--td", f.td, "Tree decomposition file; a single bag by default");
    col_cmd->add_flag("--pad", f.pad, "Also attach the biclique that fixes the pathwidth");
    add_threads(col_cmd);

    auto * self_cmd = app.add_subcommand("selftest", "Run the fast acceptance criteria");
    self_cmd->add_option("--seed", f.seed, "Seed for instance generation")->default_val(1);
    self_cmd->add_flag("--all", f.all, "Run every criterion, including the slow ones");
    add_threads(self_cmd);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (f.threads < 1)
            throw InputError("--threads must be positive");
        std::ofstream file;
        if (! f.output.empty()) {
            file.open(f.output);
            if (! file)
                throw InputError("cannot write " + f.output);
        }
        std::ostream & out = f.output.empty() ? std::cout : file;

        if (irr_cmd->parsed())
            return run_irr(f, out);
        if (count_cmd->parsed())
            return run_count(f, out, false);
        if (brute_cmd->parsed())
            return run_count(f, out, true);
        if (analyze_cmd->parsed()) {
            out << analysis_report(load_graph(f.target)) << '\n';
            return 0;
        }
        if (verify_cmd->parsed())
            return run_verify(f, out);
        if (realize_cmd->parsed())
            return run_realize(f, out);
        if (sat_cmd->parsed())
            return run_reduce_sat(f, out);
        if (ind_cmd->parsed())
            return run_reduce_ind_set(f, out);
        if (col_cmd->parsed())
            return run_reduce_coloring(f, out);
        if (self_cmd->parsed())
            return run_selftest(f, out);
        return 1;
    }
    catch (const InputError & e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    }
    catch (const PreconditionError & e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception & e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
