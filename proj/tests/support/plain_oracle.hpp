#pragma once

// Independent plain-calculus oracle for the classical scenario: commutative
// polynomial expressions over derived symbols with an integer power of e^u,
// with its own product rule and derivative. No Grassmann machinery.

#include <compare>
#include <map>
#include <stdexcept>
#include <string>

#include "sgc/expr.hpp"

#define SGC_PLAIN_REQUIRE(cond) \
    do { \
        if (!(cond)) throw std::runtime_error("plain oracle: unsupported input: " #cond); \
    } while (0)

namespace sgc::testsupport::plain {

struct Key {
    std::string name;
    int a = 0, b = 0;  // dxp^a dxm^b
    auto operator<=>(const Key&) const = default;
};
struct Mono {
    std::map<Key, int> sym;
    int expu = 0;  // power of e^u
    auto operator<=>(const Mono&) const = default;
};

struct PExpr {
    std::map<Mono, Coef> t;

    static PExpr zero() { return {}; }
    static PExpr term(Mono m, Coef c) {
        PExpr p;
        if (!c.is_zero()) p.t[std::move(m)] = std::move(c);
        return p;
    }
    static PExpr sym(const std::string& n, int a = 0, int b = 0, Coef c = Coef::one()) {
        Mono m;
        m.sym[{n, a, b}] = 1;
        return term(std::move(m), std::move(c));
    }
    static PExpr expu(int k, Coef c = Coef::one()) {
        Mono m;
        m.expu = k;
        return term(std::move(m), std::move(c));
    }

    void accum(const Mono& m, const Coef& c) {
        auto it = t.find(m);
        if (it == t.end()) {
            if (!c.is_zero()) t.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
    PExpr operator+(const PExpr& o) const {
        PExpr r = *this;
        for (auto& [m, c] : o.t) r.accum(m, c);
        return r;
    }
    PExpr operator-() const {
        PExpr r = *this;
        for (auto& [m, c] : r.t) c = -c;
        return r;
    }
    PExpr operator-(const PExpr& o) const { return *this + (-o); }
    PExpr operator*(const PExpr& o) const {
        PExpr r;
        for (auto& [ma, ca] : t)
            for (auto& [mb, cb] : o.t) {
                Mono m = ma;
                m.expu += mb.expu;
                for (auto& [k, p] : mb.sym) m.sym[k] += p;
                r.accum(m, ca * cb);
            }
        return r;
    }
    // which = 0 for dxp, 1 for dxm; product rule plus d(e^{ku}) = k u' e^{ku}
    PExpr d(int which) const {
        PExpr r;
        for (auto& [m, c] : t) {
            for (auto& [k, p] : m.sym) {
                Mono nm = m;
                if (--nm.sym[k] == 0) nm.sym.erase(k);
                Key dk = k;
                (which == 0 ? dk.a : dk.b) += 1;
                nm.sym[dk] += 1;
                r.accum(nm, c * Coef(p));
            }
            if (m.expu != 0) {
                Mono nm = m;
                Key du{"u", which == 0 ? 1 : 0, which == 0 ? 0 : 1};
                nm.sym[du] += 1;
                r.accum(nm, c * Coef(m.expu));
            }
        }
        return r;
    }
    bool is_zero() const { return t.empty(); }
};

// convert an engine expression over {u,Q,Qb,H,exp(k*u)} into the plain form
PExpr from_engine(const Expr& e) {
    const SymbolTable* tab = e.table();
    int u = tab->require("u");
    PExpr out;
    for (const Term& t : e.terms()) {
        PExpr prod = PExpr::term(Mono{}, t.c);
        for (const Factor& f : t.fs) {
            if (f.kind == Factor::Field) {
                PExpr s = PExpr::sym(tab->info(f.sym).name, f.d[0], f.d[1]);
                for (int j = 0; j < f.pow; ++j) prod = prod * s;
                continue;
            }
            SGC_PLAIN_REQUIRE(f.kind == Factor::Func);
            SGC_PLAIN_REQUIRE(f.fn.kind == FnSym::Exp);
            // argument must be k*u
            SGC_PLAIN_REQUIRE(f.arg->terms().size() == 1);
            const Term& at = f.arg->terms()[0];
            SGC_PLAIN_REQUIRE(at.fs.size() == 1);
            SGC_PLAIN_REQUIRE(at.fs[0].sym == u);
            SGC_PLAIN_REQUIRE(at.c.is_real());
            Rat k = at.c.re * at.fs[0].pow * f.pow;
            SGC_PLAIN_REQUIRE(k.get_den() == 1);
            prod = prod * PExpr::expu(int(k.get_num().get_si()));
        }
        out = out + prod;
    }
    return out;
}


}  // namespace sgc::testsupport::plain
