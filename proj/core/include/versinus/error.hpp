#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace versinus {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input; `line()` is 1-based, 0 when no single line is to blame.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Invalid configuration value (window, fractions, geometry, canvas...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A broken internal contract, e.g. a window vertex missing from the layout.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace versinus
