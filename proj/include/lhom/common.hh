#ifndef LHOM_COMMON_HH
#define LHOM_COMMON_HH

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lhom
{
    using Count = boost::multiprecision::cpp_int;
    using Rational = boost::multiprecision::cpp_rational;

    using Tuple = std::vector<int>;

    // lists[v] is the sorted set of target vertices allowed for v.
    using ListAssignment = std::vector<std::vector<int>>;

    // Malformed input. Line and column are 1-based, 0 when not applicable.
    class InputError : public std::runtime_error
    {
    public:
        InputError(const std::string & message, int line = 0, int column = 0);

        auto line() const -> int { return _line; }
        auto column() const -> int { return _column; }

    private:
        int _line;
        int _column;
    };

    // Well-formed input that violates a documented precondition.
    class PreconditionError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A brute-force or enumeration guard was exceeded.
    class SizeError : public PreconditionError
    {
    public:
        using PreconditionError::PreconditionError;
    };

    // An internal consistency check failed.
    class InternalError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    [[noreturn]] auto internal_failure(const std::string & what) -> void;

    inline auto check(bool condition, const char * what) -> void
    {
        if (! condition)
            internal_failure(what);
    }

    auto to_string(const Count & c) -> std::string;
    auto to_string(const Rational & r) -> std::string;
}

#endif
