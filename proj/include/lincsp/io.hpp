#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "lincsp/csp.hpp"

namespace lincsp {

/// Instance text format:
///
///     c <free text>
///     p csp <n_vars> <d> <k> <m>
///     <var>:<value> ... (k tokens, variables ascending)   x m
///
/// Constraints are written in canonical order, every line ends in '\n'.
std::string serialize(const Csp& csp, std::span<const std::string> comments = {});

/// Parses the format written by serialize. Throws ParseError naming the line.
Csp parse(std::string_view text);

/// DIMACS CNF for d = 2: x != 0 is written +x, x != 1 is written -x.
/// Throws UnsupportedDomainError for d != 2.
std::string to_dimacs(const Csp& csp, std::span<const std::string> comments = {});

/// Reads a DIMACS CNF whose clauses all have the same length. `empty_k` is the
/// arity reported for a formula without clauses.
Csp from_dimacs(std::string_view text, std::size_t empty_k = 2);

/// Dispatches on the problem line: `p csp` or `p cnf`.
Csp parse_any(std::string_view text);

} // namespace lincsp
