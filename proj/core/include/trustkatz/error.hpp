#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustkatz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input line. `line()` is 1-based; 0 means the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised when an accumulation would store more entries than the configured budget allows.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(std::size_t budget)
        : Error("memory budget of " + std::to_string(budget) + " stored entries exceeded"),
          budget_(budget) {}

    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t budget_;
};

}  // namespace trustkatz
