#pragma once

#include <array>

#include "sgc/expr.hpp"

namespace sgc {

// Coefficients of 1, tp, tm, tp*tm. The expansion oracle works on these
// tuples with its own multiplication and derivative rules, independent of the
// engine's theta handling, so the two paths can certify each other.
struct ThetaTuple {
    std::array<Expr, 4> c;

    bool operator==(const ThetaTuple& o) const {
        for (int j = 0; j < 4; ++j)
            if (c[j] != o.c[j]) return false;
        return true;
    }
};

// (-1)^{|x|} x termwise (grade involution); moves a theta past x.
Expr grade_involution(const Expr& e);

ThetaTuple tuple_mul(const ThetaTuple& a, const ThetaTuple& b);
ThetaTuple tuple_apply(const ThetaTuple& a, SuperOp op);
Expr tuple_to_expr(const ThetaTuple& t);

// Expand a superspace expression into its four theta components. Every field
// symbol in e must declare a component expansion.
ThetaTuple expand_components(const Expr& e);

// Taylor expansion of f applied to an even expression split into its bare
// theta-free part and the nilpotent theta part.
Expr expand_function(const FnSym& fn, const Expr& e);

}  // namespace sgc
