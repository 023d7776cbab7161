#pragma once

#include <string>
#include <string_view>

#include "fusionmod/ring.hpp"

namespace fusionmod {

// Grammar:
//   Expr   := Term ('+' Term)*
//   Term   := Factor (['*'] Factor)*   juxtaposition only next to a parenthesized group
//   Factor := INT | LABEL | '(' Expr ')'
// LABEL is a basis label of R or one of its shorthands (Gamma, Lambda, Pi, Phi).
// Throws ParseError (with byte offset) on malformed input or unknown labels.
ObjectVector parse_object(const RingPtr& R, std::string_view src);

// Sum of terms in basis order, "1" for the unit, "k*label" for coefficients above one,
// "0" for the zero vector. parse_object inverts it.
std::string format_object(const ObjectVector& X);

}  // namespace fusionmod
