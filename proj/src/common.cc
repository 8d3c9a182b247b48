#include <lhom/common.hh>

using std::string;

namespace lhom
{
    namespace
    {
        auto located(const string & message, int line, int column) -> string
        {
            if (line <= 0)
                return message;
            string result = "line " + std::to_string(line);
            if (column > 0)
                result += ", column " + std::to_string(column);
            return result + ": " + message;
        }
    }

    InputError::InputError(const string & message, int line, int column) :
        std::runtime_error(located(message, line, column)),
        _line(line),
        _column(column)
    {
    }

    auto internal_failure(const string & what) -> void
    {
        throw InternalError(what);
    }

    auto to_string(const Count & c) -> string
    {
        return c.str();
    }

    auto to_string(const Rational & r) -> string
    {
        return r.str();
    }
}
