#ifndef LHOM_IO_HH
#define LHOM_IO_HH

#include <lhom/common.hh>
#include <lhom/decomposition.hh>
#include <lhom/graph.hh>
#include <lhom/realization.hh>
#include <lhom/reductions.hh>
#include <lhom/structure.hh>

#include <iosfwd>
#include <string>

// Text formats. Vertices, elements, variables and values are 1-based in
// files and 0-based in memory. Lines starting with "c" are comments and
// blank lines are ignored. Parse failures throw InputError with the line
// and column of the offending token.
namespace lhom
{
    // "p graph <n> <m>", then m lines "e <u> <v>"; "e v v" is a loop.
    auto read_graph(std::istream & in) -> Graph;
    auto write_graph(std::ostream & out, const Graph & g) -> void;

    // "l <vertex> <h1> <h2> ..."; a vertex without a line gets every vertex
    // of the target, "l <vertex>" alone an empty list.
    auto read_lists(std::istream & in, int vertices, int target_size) -> ListAssignment;
    auto write_lists(std::ostream & out, const ListAssignment & lists) -> void;

    // "s td <bags> <max bag size> <n>", bag lines "b <id> <v1> ...", then
    // tree edges "<i> <j>" between bag ids.
    auto read_decomposition(std::istream & in, int vertices) -> TreeDecomposition;
    auto write_decomposition(std::ostream & out, const TreeDecomposition & td, int vertices) -> void;

    // "u <size>", "s <symbol> <arity>", "t <symbol> <e1> ... <ek>", and
    // list lines as above (an element without a line has no list).
    auto read_structure(std::istream & in) -> RelationalStructure;
    auto write_structure(std::ostream & out, const RelationalStructure & s) -> void;

    // A structure plus one interface line "i <e1> ... <ek>".
    auto read_gadget(std::istream & in) -> Gadget;
    auto write_gadget(std::ostream & out, const Gadget & j) -> void;

    // "r <arity>", then tuple lines "t <v1> ... <vk>" over target vertices.
    auto read_relation(std::istream & in) -> Relation;
    auto write_relation(std::ostream & out, const Relation & r) -> void;

    // "p csp <n> <q>"; each constraint is "k <arity> <scope...>", tuple
    // lines "a <v1> ... <vk>", and "end".
    auto read_csp(std::istream & in) -> CspInstance;

    // DIMACS: "p cnf <N> <M>", clauses of signed literals ending in 0.
    auto read_cnf(std::istream & in) -> CnfFormula;

    // Component classification, irr with witness, the associated bipartite
    // graph and P4-structure connectivity, as JSON with a fixed field order
    // and 1-based vertices.
    auto analysis_report(const Graph & h) -> std::string;

    // Validity, mode and in/out count sets. The out set includes 0 when some
    // tuple over the target outside r has no extension.
    auto certificate_report(const GadgetCertificate & cert, const Relation & r, int target_size) -> std::string;

    // "{3}", "{0,2,5}".
    auto count_set_text(const std::vector<Count> & counts) -> std::string;
}

#endif
