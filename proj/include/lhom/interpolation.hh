#ifndef LHOM_INTERPOLATION_HH
#define LHOM_INTERPOLATION_HH

#include <lhom/common.hh>

#include <vector>

namespace lhom
{
    // Solves sum_i a_i^j x_i = b_j for j = 1..k exactly. The a_i must be
    // distinct and nonzero, and |b| = |a| = k.
    auto interpolate(const std::vector<Count> & a, const std::vector<Count> & b) -> std::vector<Rational>;

    // Prime factors of n > 0 by trial division, ascending, without repeats.
    auto prime_factors(const Count & n) -> std::vector<Count>;

    // Whether every prime factor of n is in `primes`.
    auto smooth_over(const Count & n, const std::vector<Count> & primes) -> bool;
}

#endif
