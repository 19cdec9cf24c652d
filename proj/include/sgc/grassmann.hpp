#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgc/coef.hpp"
#include "sgc/errors.hpp"
#include "sgc/fnsym.hpp"

namespace sgc {

enum class Grade { Even, Odd, Mixed };

// Ring hooks for the coefficient type of a Supernumber. The default covers
// Coef; sgc::Expr specializes this in expr.hpp so supernumbers can carry
// symbolic coefficients.
template <class R>
struct SnRing {
    static bool is_zero(const R& r) { return r.is_zero(); }
    static R add(const R& a, const R& b) { return a + b; }
    static R mul(const R& a, const R& b) { return a * b; }
    static R neg(const R& a) { return -a; }
    static R scale(const R& a, const Coef& q) { return a * q; }
};

// Sign of merging two disjoint ordered generator products into one.
inline int merge_sign(uint64_t a, uint64_t b) {
    int crossings = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        crossings += std::popcount(a >> (j + 1));
    }
    return (crossings & 1) ? -1 : 1;
}

// Element of the complex Grassmann algebra with k generators xi1..xiK.
// Bit i of a term mask means generator xi(i+1). Canonical: no zero terms.
template <class R>
class SupernumberT {
  public:
    explicit SupernumberT(int k) : k_(k) {}

    static SupernumberT term(int k, uint64_t mask, R coef) {
        SupernumberT s(k);
        if (!SnRing<R>::is_zero(coef)) s.terms_.emplace(mask, std::move(coef));
        return s;
    }
    static SupernumberT scalar(int k, R coef) { return term(k, 0, std::move(coef)); }
    // i is 1-based: generator(k, 2) = xi2
    static SupernumberT generator(int k, int i, R coef) {
        return term(k, uint64_t(1) << (i - 1), std::move(coef));
    }

    int generators() const { return k_; }
    const std::map<uint64_t, R>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    const R* body_ptr() const {
        auto it = terms_.find(0);
        return it == terms_.end() ? nullptr : &it->second;
    }
    SupernumberT soul() const {
        SupernumberT s(k_);
        for (auto& [m, c] : terms_)
            if (m != 0) s.terms_.emplace(m, c);
        return s;
    }

    SupernumberT operator+(const SupernumberT& o) const {
        check(o);
        SupernumberT s(*this);
        for (auto& [m, c] : o.terms_) s.accum(m, c);
        return s;
    }
    SupernumberT operator-() const {
        SupernumberT s(k_);
        for (auto& [m, c] : terms_) s.terms_.emplace(m, SnRing<R>::neg(c));
        return s;
    }
    SupernumberT operator-(const SupernumberT& o) const { return *this + (-o); }

    SupernumberT operator*(const SupernumberT& o) const {
        check(o);
        SupernumberT s(k_);
        for (auto& [ma, ca] : terms_)
            for (auto& [mb, cb] : o.terms_) {
                if (ma & mb) continue;  // repeated generator
                R c = SnRing<R>::mul(ca, cb);
                if (merge_sign(ma, mb) < 0) c = SnRing<R>::neg(c);
                s.accum(ma | mb, c);
            }
        return s;
    }

    SupernumberT scaled(const Coef& q) const {
        SupernumberT s(k_);
        if (q.is_zero()) return s;
        for (auto& [m, c] : terms_) s.accum(m, SnRing<R>::scale(c, q));
        return s;
    }

    Grade grade() const {
        bool even = false, odd = false;
        for (auto& [m, c] : terms_) (std::popcount(m) & 1 ? odd : even) = true;
        if (even && odd) return Grade::Mixed;
        return odd ? Grade::Odd : Grade::Even;
    }

    bool operator==(const SupernumberT& o) const { return k_ == o.k_ && terms_ == o.terms_; }

  private:
    void check(const SupernumberT& o) const {
        if (k_ != o.k_) throw AlgebraMismatch("supernumbers from different algebras");
    }
    void accum(uint64_t m, const R& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!SnRing<R>::is_zero(c)) terms_.emplace(m, c);
            return;
        }
        it->second = SnRing<R>::add(it->second, c);
        if (SnRing<R>::is_zero(it->second)) terms_.erase(it);
    }

    int k_;
    std::map<uint64_t, R> terms_;
};

using Supernumber = SupernumberT<Coef>;

inline Grade grade(const Supernumber& a) { return a.grade(); }

// Two-sided inverse via the nilpotent geometric series, body(a) != 0.
inline Supernumber invert(const Supernumber& a) {
    const Coef* b = a.body_ptr();
    if (!b) throw BodilessNotInvertible("bodiless supernumber has no inverse");
    Coef binv = b->inv();
    Supernumber s = a.soul().scaled(-binv);  // -soul/body
    Supernumber acc = Supernumber::scalar(a.generators(), Coef::one());
    Supernumber pow = acc;
    while (true) {
        pow = pow * s;
        if (pow.is_zero()) break;
        acc = acc + pow;
    }
    return acc.scaled(binv);
}

// f(body + soul) = sum f^(n)(body) soul^n / n!, truncated by nilpotency.
// fnval(fn, n, body) supplies the n-th derivative value at the body; it may
// build a symbolic value when the coefficient ring supports one.
template <class R, class FnVal>
SupernumberT<R> apply_even_function(const FnSym& fn, const SupernumberT<R>& a, FnVal&& fnval) {
    if (a.grade() != Grade::Even) throw OddArgument("function of a non-even supernumber");
    int k = a.generators();
    const R* bp = a.body_ptr();
    SupernumberT<R> s = a.soul();
    SupernumberT<R> acc = SupernumberT<R>::scalar(k, fnval(fn, 0, bp));
    SupernumberT<R> pow = s;
    Rat fact(1);
    for (int n = 1; !pow.is_zero(); ++n) {
        fact *= n;
        acc = acc +
              SupernumberT<R>::scalar(k, fnval(fn, n, bp)).scaled(Coef(Rat(1) / fact)) * pow;
        pow = pow * s;
    }
    return acc;
}

// Exact values only: requires a rational body equal to zero (exp, sin, cos at
// soul-only arguments). Symbolic bodies need the Expr-coefficient algebra.
inline Supernumber apply_even_function(const FnSym& fn, const Supernumber& a) {
    return apply_even_function(fn, a, [](const FnSym& f, int n, const Coef* body) -> Coef {
        if (body && !body->is_zero())
            throw SymbolicBodyRequired("non-zero body needs symbolic coefficients");
        auto v = fn_value_at_zero(f, n);
        if (!v) throw SymbolicBodyRequired("no exact value for " + f.str() + " at 0");
        return *v;
    });
}

// "1 - xi1*xi2" style rendering (Coef coefficients).
std::string to_string(const Supernumber& a);

}  // namespace sgc
