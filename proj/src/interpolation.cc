#include <lhom/interpolation.hh>

#include <algorithm>
#include <set>

using std::vector;

namespace lhom
{
    auto interpolate(const vector<Count> & a, const vector<Count> & b) -> vector<Rational>
    {
        auto k = a.size();
        if (b.size() != k)
            throw PreconditionError("interpolation needs as many equations as unknowns");
        if (std::set<Count>(a.begin(), a.end()).size() != k)
            throw PreconditionError("interpolation points must be distinct");
        for (auto & x : a)
            if (x == 0)
                throw PreconditionError("interpolation points must be nonzero");

        // With y_i = a_i x_i the system is sum_i a_i^(j-1) y_i = b_j. If
        // l_i(t) = sum_j c_ij t^(j-1) is the Lagrange basis polynomial at a_i,
        // then y_i = sum_j c_ij b_j.
        vector<Count> master{1};
        for (auto & x : a) {
            vector<Count> next(master.size() + 1, 0);
            for (std::size_t d = 0; d < master.size(); ++d) {
                next[d + 1] += master[d];
                next[d] -= master[d] * x;
            }
            master = std::move(next);
        }

        vector<Rational> result(k);
        for (std::size_t i = 0; i < k; ++i) {
            // master / (t - a_i) by synthetic division, highest degree first.
            vector<Count> quotient(k, 0);
            Count carry = 0;
            for (std::size_t d = k; d-- > 0;) {
                carry = master[d + 1] + carry * a[i];
                quotient[d] = carry;
            }
            Count denominator = 1;
            for (std::size_t m = 0; m < k; ++m)
                if (m != i)
                    denominator *= a[i] - a[m];
            Count numerator = 0;
            for (std::size_t j = 0; j < k; ++j)
                numerator += quotient[j] * b[j];
            denominator *= a[i];
            result[i] = Rational(numerator) / Rational(denominator);
        }
        return result;
    }

    auto prime_factors(const Count & n) -> vector<Count>
    {
        if (n <= 0)
            throw PreconditionError("prime factors of a nonpositive number");
        vector<Count> result;
        Count rest = n;
        for (Count p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                result.push_back(p);
                while (rest % p == 0)
                    rest /= p;
            }
        if (rest > 1)
            result.push_back(rest);
        return result;
    }

    auto smooth_over(const Count & n, const vector<Count> & primes) -> bool
    {
        if (n <= 0)
            return false;
        Count rest = n;
        for (auto & p : primes)
            while (rest % p == 0)
                rest /= p;
        return rest == 1;
    }
}
