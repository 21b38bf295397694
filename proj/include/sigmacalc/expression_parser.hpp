// Expressions over presented algebras: sums of products of generators and
// scalar rational functions in q, with "(x)" separating tensor legs.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := leg ('(x)' leg)*
//   leg    := factor (factor | '/' factor)*
//   factor := atom ['^' ['-'] integer]
//   atom   := integer | symbol | 'q' | '(' expr ')'
//
// Products are written by juxtaposition. Symbols may end in '*'. Division
// and negative powers are allowed for scalars only. Results live in the free
// algebra; callers reduce them to normal form.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigmacalc/combination.hpp"

namespace sigmacalc {

class Presentation;

/// Parses an expression whose i-th tensor leg uses the generators of legs[i].
/// The number of legs in every term must equal legs.size(). Errors are
/// reported as ParseError with line/column offsets added.
Tensor parse_tensor_expression(std::string_view text,
                               std::span<const std::vector<std::string>> legs,
                               int line = 0, int column_offset = 0);

NCElement parse_expression(std::string_view text, const std::vector<std::string>& symbols,
                           int line = 0, int column_offset = 0);

/// Convenience overloads resolving symbols from presentations.
Tensor parse_tensor(std::string_view text, std::span<const Presentation* const> legs);
NCElement parse_element(std::string_view text, const Presentation& p);

}  // namespace sigmacalc
