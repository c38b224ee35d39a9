#pragma once

#include <stdexcept>
#include <string>

namespace hosim {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input files (bad tokens, inconsistent line counts).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Structurally valid input that violates an operation's preconditions.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Internal-consistency failures: negative census intermediates, overflow,
// solver divergence. These signal bugs or out-of-contract inputs.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

} // namespace hosim
