#ifndef LHOM_TESTS_GADGET_CHECKS_HH
#define LHOM_TESTS_GADGET_CHECKS_HH

#include <lhom/graph.hh>
#include <lhom/realization.hh>
#include <lhom/relation.hh>
#include <lhom/target_analysis.hh>

#include "support/random.hh"

#include <string>
#include <vector>

namespace lhom::testing
{
    // Recomputes the extension table of a realized relation's gadget by
    // enumerating every map, and checks the realization conditions on it.
    // Returns an empty string on success.
    auto check_gadget_by_enumeration(const RealizedRelation & rel, const Graph & h) -> std::string;

    // Straight from the definitions, without the library's predicates.
    auto forcer_by_definition(const Relation & r, int x, int y, const std::vector<int> & s, int alpha, int beta)
        -> bool;
    auto distinguisher_by_definition(
        const Relation & r, int x, int y, const std::vector<int> & s, int alpha, int beta) -> bool;

    // Induced P4s found by trying every vertex quadruple, joined when they
    // share both vertices of one side; returns the BFS distance between the
    // P4s with the given vertex sets, or -1.
    auto p4_distance_by_search(const Graph & h, const P4 & from, const P4 & to) -> int;

    struct SoundnessReport
    {
        int instances = 0;
        int mismatches = 0;
        // Instances with a nonzero count and at least one tuple of rel.
        int informative = 0;
        std::string first_failure;
    };

    // A random structure with a hidden homomorphism into target: each tuple
    // is a member of its relation pulled back along the hidden map, and
    // lists contain the hidden image.
    auto planted_instance(Rng & rng, const TargetStructure & target, int max_universe, int max_tuples)
        -> RelationalStructure;

    // Random instances (mostly planted) over the edge symbol and rel; compares one peeling
    // step (answered by a DP oracle over rel's own uses) with brute force
    // against the target holding rel itself.
    auto check_one_level(const Graph & h, const RelationPtr & rel, Rng & rng, int rounds, int max_universe = 5,
        int max_tuples = 3) -> SoundnessReport;
}

#endif
