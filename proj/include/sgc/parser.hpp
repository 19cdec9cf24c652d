#pragma once

#include <map>
#include <string>

#include "sgc/expr.hpp"

namespace sgc {

// Expression grammar: identifiers; tp,tm / xp,xm as declared coordinates;
// rational literals p or p/q; I for the imaginary unit; operators + - * ^
// (integer exponents, negative only on invertible constants); derivative
// application Dp( ), Dm( ), dxp( ), dxm( ), dtp( ), dtm( ); functions
// exp( ), sin( ), cos( ). '*' is mandatory between factors.
Expr parse_expr(const std::string& text, const SymbolTable* tab, int line = 0);

// Vector-field component lists: "2*xp*dxp - H*dH + dphi". Each additive chunk
// is coefficient * d<target>; returns target symbol -> coefficient.
std::map<int, Expr> parse_vector_field(const std::string& text, const SymbolTable* tab,
                                       int line = 0);

}  // namespace sgc
