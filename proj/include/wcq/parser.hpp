#pragma once

#include <string_view>

#include "wcq/algebra.hpp"

namespace wcq {

// Grammar: signed sums of terms `coeff*var^exp*...`, rational `p/q`
// coefficients, parentheses allowed. Errors carry the byte offset.
Terms parse_terms(const Algebra& alg, std::string_view text);

bool is_identifier(std::string_view s);

}  // namespace wcq
