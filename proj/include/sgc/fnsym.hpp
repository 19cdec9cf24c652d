#pragma once

#include <optional>
#include <string>
#include <utility>

#include "sgc/coef.hpp"

namespace sgc {

// Abstract smooth function heads. User functions carry a formal derivative
// order, rendered f, f', f'', ... Known heads have an exact derivative cycle.
struct FnSym {
    enum Kind { Exp, Sin, Cos, User } kind = Exp;
    std::string name;  // User only
    int order = 0;     // User only

    static FnSym exp() { return {Exp, "", 0}; }
    static FnSym sin() { return {Sin, "", 0}; }
    static FnSym cos() { return {Cos, "", 0}; }
    static FnSym user(std::string n, int ord = 0) { return {User, std::move(n), ord}; }

    bool operator==(const FnSym& o) const {
        return kind == o.kind && name == o.name && order == o.order;
    }
    int cmp(const FnSym& o) const {
        if (kind != o.kind) return kind < o.kind ? -1 : 1;
        if (int c = name.compare(o.name)) return c < 0 ? -1 : 1;
        if (order != o.order) return order < o.order ? -1 : 1;
        return 0;
    }

    std::string str() const {
        switch (kind) {
            case Exp: return "exp";
            case Sin: return "sin";
            case Cos: return "cos";
            default: return name + std::string(order, '\'');
        }
    }
};

// d/dx f = c * g with g the next head in the cycle.
inline std::pair<Coef, FnSym> fn_derivative(const FnSym& f) {
    switch (f.kind) {
        case FnSym::Exp: return {Coef::one(), f};
        case FnSym::Sin: return {Coef::one(), FnSym::cos()};
        case FnSym::Cos: return {-Coef::one(), FnSym::sin()};
        default: return {Coef::one(), FnSym::user(f.name, f.order + 1)};
    }
}

// Exact value of the n-th derivative of f at 0, when known.
inline std::optional<Coef> fn_value_at_zero(FnSym f, int n) {
    Coef c = Coef::one();
    for (int j = 0; j < n; ++j) {
        auto [dc, df] = fn_derivative(f);
        c *= dc;
        f = df;
    }
    switch (f.kind) {
        case FnSym::Exp: return c;
        case FnSym::Sin: return Coef::zero();
        case FnSym::Cos: return c;
        default: return std::nullopt;
    }
}

}  // namespace sgc
