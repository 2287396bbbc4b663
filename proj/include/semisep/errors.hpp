#pragma once

#include <stdexcept>
#include <string>

namespace semisep {

// Thrown by the factorization when no usable pivot exists in a column.
// `column` identifies the offending column (0-based).
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(int column, const std::string& what)
        : std::runtime_error(what), column_(column) {}

    int column() const noexcept { return column_; }

private:
    int column_;
};

// Thrown by the text-format readers. `line` is 1-based; 0 means the error is
// not tied to a specific line (e.g. unexpected end of file).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace semisep
