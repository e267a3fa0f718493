#include "versinus/error.hpp"

namespace versinus {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line)
{
}

} // namespace versinus
