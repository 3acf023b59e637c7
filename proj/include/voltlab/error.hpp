#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace voltlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number of the offending row.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Design matrix without full column rank.
class RankError : public Error {
public:
    RankError(std::size_t column, const std::string& name)
        : Error("design matrix is rank deficient: column " + std::to_string(column) +
                (name.empty() ? std::string{} : " (" + name + ")") + " is linearly dependent"),
          column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// An objective returned NaN or -inf; carries the point where it happened.
class NonFiniteError : public Error {
public:
    NonFiniteError(const std::string& what, std::vector<double> point)
        : Error(what), point_(std::move(point)) {}

    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

}  // namespace voltlab
