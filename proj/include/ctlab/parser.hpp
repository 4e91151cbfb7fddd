#ifndef CTLAB_PARSER_HPP
#define CTLAB_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "ctlab/polynomial.hpp"

namespace ctlab {

/// Parses a polynomial expression over `variables`.
///
/// Grammar (whitespace is insignificant):
///
///     expr   := term (('+' | '-') term)*
///     term   := power ('*' power)*
///     power  := ('+' | '-') power | atom ('^' integer)?
///     atom   := integer ('/' integer)? | identifier | '(' expr ')'
///
/// Identifiers match [a-zA-Z][a-zA-Z0-9']*. Implicit multiplication is
/// rejected. U+2212 is accepted as a minus sign. Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const Variables& variables);

/// Identifiers occurring in `text`, in order of first appearance.
std::vector<std::string> scan_identifiers(std::string_view text);

}  // namespace ctlab

#endif
