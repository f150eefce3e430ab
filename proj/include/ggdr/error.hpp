#pragma once

#include <stdexcept>
#include <string>

namespace ggdr {

/// Malformed input file (bad row, bad grammar). Carries a position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, int line, int col, const std::string& message)
        : std::runtime_error(where + ":" + std::to_string(line) + ":" + std::to_string(col) +
                             ": " + message),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Structural violation: dangling endpoint, duplicate id, broken index.
class IntegrityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Constraint evaluated over operands of the wrong kind.
class EvalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact search refused because the input exceeds its size guard.
class GuardError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ggdr
