#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgc/expr.hpp"

namespace sgc {

// First-order differential operator sum_t a_t d/dt over the point geometry:
// coordinates and field symbols are independent variables, coefficients are
// polynomial expressions in them.
struct SuperVectorField {
    std::string name;
    Parity parity = Parity::Even;
    std::map<int, Expr> comp;  // target symbol -> coefficient

    bool is_zero() const { return comp.empty(); }
};

// Validates the parity rule coefficient ^ target = field parity and the
// polynomial-coefficient restriction, then tags the parity.
SuperVectorField make_vector_field(const SymbolTable* tab, std::string name,
                                   std::map<int, Expr> comp);

// X acting on a coefficient expression: sum_t X_t * d(e)/dt.
Expr vf_apply(const SuperVectorField& X, const Expr& e);

// Graded bracket X Y - (-1)^{|X||Y|} Y X; anticommutator when both are odd.
SuperVectorField bracket(const SuperVectorField& X, const SuperVectorField& Y);

bool vf_equal(const SuperVectorField& a, const SuperVectorField& b);
SuperVectorField vf_scale(const SuperVectorField& X, const Coef& c);
SuperVectorField vf_add(const SuperVectorField& a, const SuperVectorField& b);

struct TableRel {
    int i, j;                                 // basis indices, i <= j
    std::vector<std::pair<Coef, int>> combo;  // expected bracket as basis combination
};

struct AlgebraPresentation {
    std::string name;
    std::vector<SuperVectorField> basis;
    std::vector<TableRel> table;

    int index_of(const std::string& n) const {
        for (size_t k = 0; k < basis.size(); ++k)
            if (basis[k].name == n) return int(k);
        throw Error("unknown generator: " + n);
    }
};

struct TableCheck {
    int i, j;
    bool listed;
    bool pass;
    std::string detail;
};

// Recomputes every pair (i <= j; diagonal only for odd generators) and
// compares against the listed combination, expecting zero for unlisted pairs.
std::vector<TableCheck> verify_table(const AlgebraPresentation& alg);

struct OmegaSet {
    std::vector<int> retained;
    bool contains(int sym) const {
        for (int s : retained)
            if (s == sym) return true;
        return false;
    }
};

// Restriction onto the omega support: drops components along non-retained
// targets; kept coefficients must not involve dropped variables. Formal
// constants are always retained.
SuperVectorField project(const SuperVectorField& X, const OmegaSet& omega);

// Exact linear algebra over the (coefficient monomial x target) basis.
struct SpanResult {
    enum Kind { Equal, FirstInSecond, SecondInFirst, Incomparable } kind;
    std::vector<std::string> only_first;   // elements of A outside span(B)
    std::vector<std::string> only_second;  // elements of B outside span(A)
};

SpanResult span_compare(const std::vector<SuperVectorField>& A,
                        const std::vector<SuperVectorField>& B);

bool in_span(const SuperVectorField& X, const std::vector<SuperVectorField>& basis);

}  // namespace sgc
