#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailfit {

// Base class for all library failures. Carries the subsystem name so
// callers (the CLI in particular) can report "module: cause" without
// parsing the message text.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

// Invalid arguments or values outside a documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed to reach its accuracy target.
class NumericError : public Error {
public:
    using Error::Error;
};

// Input data admits no meaningful fit (e.g. likelihood maximized only
// at a parameter-space boundary at infinity).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

// Malformed input text; line numbers are 1-based.
class ParseError : public Error {
public:
    ParseError(std::string module, std::size_t line, const std::string& what)
        : Error(std::move(module), "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace tailfit
