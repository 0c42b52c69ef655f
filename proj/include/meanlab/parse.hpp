#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "meanlab/expr.hpp"

namespace meanlab {

/// Syntax error with the byte offset where scanning stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parse the mean-expression grammar:
///
///   expr := "arith" | "geom" | "harm" | "rms" | "min" | "max" | "log"
///         | "power(" num ")" | "gini(" num "," num ")"
///         | "env(e1)" | "env(e2)"
///         | "compose(" expr "," expr "," expr ")"
///         | "invariant(" expr "," expr ")"
///
/// Aliases expand at parse time (arith -> gini(1,0), geom -> gini(0,0),
/// harm -> gini(0,-1), rms -> gini(2,0), power(p) -> gini(p,0)).
/// Whitespace between tokens is ignored. Numbers are signed decimals;
/// an exponent suffix is accepted as a superset of the grammar so that
/// formatted expressions always re-parse.
MeanExpr parse_mean(std::string_view text);

/// Canonical text for an expression; parse_mean(format_mean(e)) == e.
/// UserTable envelopes have no textual form and throw std::invalid_argument.
std::string format_mean(const MeanExpr& expr);

}  // namespace meanlab
