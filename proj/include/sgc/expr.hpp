#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgc/coef.hpp"
#include "sgc/errors.hpp"
#include "sgc/fnsym.hpp"
#include "sgc/grassmann.hpp"
#include "sgc/symtab.hpp"

namespace sgc {

class Expr;

using Deriv = std::array<uint8_t, kMaxCoords>;

// One multiplicand of a term. Coordinates sort before fields and constants,
// which sort before function applications; within a kind the order is fixed so
// normal forms are deterministic. Odd factors always have power 1; only unit
// constants may carry negative powers.
struct Factor {
    enum Kind : uint8_t { Coord = 0, Field = 1, Func = 2 } kind = Field;
    int sym = -1;                     // Coord, Field
    Deriv d{0, 0, 0, 0};              // Field
    FnSym fn;                         // Func
    std::shared_ptr<const Expr> arg;  // Func
    int pow = 1;

    static Factor coord(int sym) {
        Factor f;
        f.kind = Coord;
        f.sym = sym;
        return f;
    }
    static Factor field(int sym, Deriv d = {0, 0, 0, 0}) {
        Factor f;
        f.sym = sym;
        f.d = d;
        return f;
    }
};

struct Term {
    Coef c;
    std::vector<Factor> fs;
};

Parity factor_parity(const SymbolTable* tab, const Factor& f);
Parity term_parity(const SymbolTable* tab, const Term& t);
int cmp_factor_key(const SymbolTable* tab, const Factor& a, const Factor& b);

// Canonical normal-form expression: sorted terms, merged coefficients, no
// zeros, odd reorderings sign-tracked, repeated odd factors eliminated.
// Structural equality of normal forms is the working notion of equality;
// is_zero_strong() additionally folds exp products and expands sin/cos into
// exponentials before deciding.
class Expr {
  public:
    Expr() = default;

    static Expr zero(const SymbolTable* tab) { return Expr(tab, {}); }
    static Expr constant(const SymbolTable* tab, Coef c);
    static Expr one(const SymbolTable* tab) { return constant(tab, Coef::one()); }
    static Expr symbol(const SymbolTable* tab, int id);
    static Expr derived(const SymbolTable* tab, int field, const Deriv& d);
    static Expr func(const SymbolTable* tab, const FnSym& fn, const Expr& arg, int pw = 1);
    static Expr from_terms(const SymbolTable* tab, std::vector<Term> ts);  // normalizes

    const SymbolTable* table() const { return tab_; }
    const std::vector<Term>& terms() const { return ts_; }
    bool is_structural_zero() const { return ts_.empty(); }

    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator-() const;
    Expr scaled(const Coef& q) const;
    Expr pow(int n) const;  // n >= 0

    Grade grade_of() const;
    std::optional<Parity> homogeneous_parity() const;

    int cmp(const Expr& o) const;
    bool operator==(const Expr& o) const { return cmp(o) == 0; }
    bool operator!=(const Expr& o) const { return cmp(o) != 0; }

    std::string str() const;

  private:
    Expr(const SymbolTable* tab, std::vector<Term> ts) : tab_(tab), ts_(std::move(ts)) {}
    friend Expr collect_terms(const SymbolTable* tab, std::vector<Term>&& raw);

    const SymbolTable* tab_ = nullptr;
    std::vector<Term> ts_;
};

// --- term-level helpers (used by the engine and the parser) ---
bool mul_into(const SymbolTable* tab, std::vector<Factor>& acc, Factor g, int& sign);
std::optional<Term> mul_term(const SymbolTable* tab, const Term& a, const Term& b);
Expr collect_terms(const SymbolTable* tab, std::vector<Term>&& raw);

// --- derivatives ---
// Total superspace derivative with respect to the coordinate at index ci,
// left-acting for odd coordinates.
Expr d_coord(const Expr& e, int ci);
// Graded partial derivative treating every symbol (coordinate, bare field,
// formal constant) as an independent variable: the point-geometry derivative
// used by vector fields and the spectral-parameter eliminations.
Expr d_symbol(const Expr& e, int sym);

enum class SuperOp { Dxp, Dxm, Dtp, Dtm, Dp, Dm, Jp, Jm };
SuperOp superop_from_name(const std::string&);
std::string superop_name(SuperOp);
// Dp = dtp - I*tp*dxp, Jp = dtp + I*tp*dxp, likewise for the minus pair.
Expr apply_op(const Expr& e, SuperOp op);

// (op1 o op2 -+ op2 o op1 - claimed)(test): anticommutator when both operators
// are odd, commutator otherwise. Zero certifies the identity.
Expr compose_check(SuperOp op1, SuperOp op2, const Expr& test, const Expr& claimed);

// e^n with negative exponents allowed on invertible constant monomials.
Expr expr_int_pow(const Expr& base, int n);

// --- substitution ---
// Capture-free substitution of whole symbols; derivative slots on substituted
// fields are pushed through with d_coord. Parities must match.
Expr substitute(const Expr& e, const std::map<int, Expr>& images);

// --- zero recognition ---
// Folds exp products by adding arguments, rewrites sin/cos to complex
// exponentials, and recollects. Applied only when deciding zero-ness so
// ordinary normal forms stay readable.
Expr zero_normal(const Expr& e);
bool is_zero_strong(const Expr& e);
bool equal_strong(const Expr& a, const Expr& b);

// Supernumbers over symbolic coefficients.
template <>
struct SnRing<Expr> {
    static bool is_zero(const Expr& r) { return r.is_structural_zero(); }
    static Expr add(const Expr& a, const Expr& b) { return a + b; }
    static Expr mul(const Expr& a, const Expr& b) { return a * b; }
    static Expr neg(const Expr& a) { return -a; }
    static Expr scale(const Expr& a, const Coef& q) { return a.scaled(q); }
};

}  // namespace sgc
