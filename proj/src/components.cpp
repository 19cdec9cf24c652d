#include "sgc/components.hpp"

namespace sgc {

Expr grade_involution(const Expr& e) {
    const SymbolTable* tab = e.table();
    std::vector<Term> ts = e.terms();
    for (Term& t : ts)
        if (term_parity(tab, t) == Parity::Odd) t.c = -t.c;
    return Expr::from_terms(tab, std::move(ts));
}

ThetaTuple tuple_mul(const ThetaTuple& a, const ThetaTuple& b) {
    Expr gi0 = grade_involution(a.c[0]);
    Expr gi1 = grade_involution(a.c[1]);
    Expr gi2 = grade_involution(a.c[2]);
    ThetaTuple r;
    r.c[0] = a.c[0] * b.c[0];
    r.c[1] = a.c[1] * b.c[0] + gi0 * b.c[1];
    r.c[2] = a.c[2] * b.c[0] + gi0 * b.c[2];
    r.c[3] = a.c[3] * b.c[0] + a.c[0] * b.c[3] + gi1 * b.c[2] - gi2 * b.c[1];
    return r;
}

static int coord_index_of(const SymbolTable* tab, const char* name) {
    return tab->info(tab->require(name)).coord_index;
}

ThetaTuple tuple_apply(const ThetaTuple& a, SuperOp op) {
    const SymbolTable* tab = a.c[0].table();
    const Coef i = Coef::i(), mi = -Coef::i();
    auto dx = [&](const Expr& e, const char* n) { return d_coord(e, coord_index_of(tab, n)); };
    ThetaTuple r;
    switch (op) {
        case SuperOp::Dxp:
        case SuperOp::Dxm: {
            const char* n = op == SuperOp::Dxp ? "xp" : "xm";
            for (int j = 0; j < 4; ++j) r.c[j] = dx(a.c[j], n);
            return r;
        }
        case SuperOp::Dtp:
            r.c = {a.c[1], Expr::zero(tab), a.c[3], Expr::zero(tab)};
            return r;
        case SuperOp::Dtm:
            r.c = {a.c[2], -a.c[3], Expr::zero(tab), Expr::zero(tab)};
            return r;
        case SuperOp::Dp:
            r.c = {a.c[1], dx(a.c[0], "xp").scaled(mi), a.c[3], dx(a.c[2], "xp").scaled(mi)};
            return r;
        case SuperOp::Dm:
            r.c = {a.c[2], -a.c[3], dx(a.c[0], "xm").scaled(mi), dx(a.c[1], "xm").scaled(i)};
            return r;
        case SuperOp::Jp:
            r.c = {a.c[1], dx(a.c[0], "xp").scaled(i), a.c[3], dx(a.c[2], "xp").scaled(i)};
            return r;
        default:  // Jm
            r.c = {a.c[2], -a.c[3], dx(a.c[0], "xm").scaled(i), dx(a.c[1], "xm").scaled(mi)};
            return r;
    }
}

Expr tuple_to_expr(const ThetaTuple& t) {
    const SymbolTable* tab = t.c[0].table();
    Expr tp = Expr::symbol(tab, tab->require("tp"));
    Expr tm = Expr::symbol(tab, tab->require("tm"));
    return t.c[0] + tp * t.c[1] + tm * t.c[2] + tp * tm * t.c[3];
}

static ThetaTuple tuple_scalar(const SymbolTable* tab, Expr e) {
    return ThetaTuple{{std::move(e), Expr::zero(tab), Expr::zero(tab), Expr::zero(tab)}};
}

static ThetaTuple tuple_pow(const SymbolTable* tab, const ThetaTuple& t, int n) {
    ThetaTuple r = tuple_scalar(tab, Expr::one(tab));
    for (int j = 0; j < n; ++j) r = tuple_mul(r, t);
    return r;
}

// expansion of the factor base (power 1); callers apply the power
static ThetaTuple expand_factor(const SymbolTable* tab, const Factor& f) {
    Expr z = Expr::zero(tab);
    Factor base = f;
    base.pow = 1;
    if (f.kind == Factor::Coord) {
        const SymbolInfo& si = tab->info(f.sym);
        if (si.parity == Parity::Even)
            return tuple_scalar(tab, Expr::from_terms(tab, {Term{Coef::one(), {base}}}));
        if (si.name == "tp") return ThetaTuple{{z, Expr::one(tab), z, z}};
        return ThetaTuple{{z, z, Expr::one(tab), z}};
    }
    if (f.kind == Factor::Field) {
        const SymbolInfo& si = tab->info(f.sym);
        if (si.kind == SymbolInfo::Const) return tuple_scalar(tab, Expr::symbol(tab, f.sym));
        int tp = coord_index_of(tab, "tp"), tm = coord_index_of(tab, "tm");
        bool theta_dep = ((si.depends >> tp) & 1) || ((si.depends >> tm) & 1);
        if (!theta_dep)  // a theta-free field is its own expansion
            return tuple_scalar(tab, Expr::from_terms(tab, {Term{Coef::one(), {base}}}));
        if (!si.has_components)
            throw MissingComponentExpansion("field " + si.name + " has no component expansion");
        Deriv bos = f.d;
        bos[tp] = bos[tm] = 0;
        ThetaTuple t;
        for (int j = 0; j < 4; ++j) t.c[j] = Expr::derived(tab, si.components[j], bos);
        if (f.d[tp]) t = tuple_apply(t, SuperOp::Dtp);
        if (f.d[tm]) t = tuple_apply(t, SuperOp::Dtm);
        return t;
    }
    // function factor: Taylor around the theta-free component of the argument
    ThetaTuple ta = expand_components(*f.arg);
    Expr a0 = ta.c[0];
    auto deriv_head = [&](int n) {
        FnSym g = f.fn;
        Coef c = Coef::one();
        for (int j = 0; j < n; ++j) {
            auto [dc, dg] = fn_derivative(g);
            c *= dc;
            g = dg;
        }
        return Expr::func(tab, g, a0).scaled(c);
    };
    Expr g0 = deriv_head(0), g1 = deriv_head(1), g2 = deriv_head(2);
    ThetaTuple t;
    t.c[0] = g0;
    t.c[1] = ta.c[1] * g1;
    t.c[2] = ta.c[2] * g1;
    t.c[3] = ta.c[3] * g1 - ta.c[1] * ta.c[2] * g2;
    return t;
}

ThetaTuple expand_components(const Expr& e) {
    const SymbolTable* tab = e.table();
    ThetaTuple acc = tuple_scalar(tab, Expr::zero(tab));
    for (const Term& t : e.terms()) {
        ThetaTuple prod = tuple_scalar(tab, Expr::constant(tab, t.c));
        for (const Factor& f : t.fs) {
            ThetaTuple ft = expand_factor(tab, f);
            int n = f.pow;
            if (n < 0) {
                // invertible constant monomial: expand as-is in component 0
                ft = tuple_scalar(tab, Expr::from_terms(tab, {Term{Coef::one(), {f}}}));
                n = 1;
            } else if (n != 1) {
                ft = tuple_pow(tab, ft, n);
                n = 1;
            }
            prod = tuple_mul(prod, ft);
        }
        for (int j = 0; j < 4; ++j) acc.c[j] = acc.c[j] + prod.c[j];
    }
    return acc;
}

Expr expand_function(const FnSym& fn, const Expr& e) {
    const SymbolTable* tab = e.table();
    if (e.grade_of() != Grade::Even) throw OddArgument("expand_function of odd expression");
    std::vector<Term> free_part, nil_part;
    for (const Term& t : e.terms()) {
        bool has_theta = false;
        for (const Factor& f : t.fs)
            if (f.kind == Factor::Coord && tab->info(f.sym).parity == Parity::Odd)
                has_theta = true;
        (has_theta ? nil_part : free_part).push_back(t);
    }
    Expr e0 = Expr::from_terms(tab, std::move(free_part));
    Expr n = Expr::from_terms(tab, std::move(nil_part));

    Expr acc = Expr::func(tab, fn, e0);
    Expr p = n;
    Rat fact(1);
    FnSym g = fn;
    Coef gc = Coef::one();
    for (int k = 1; !p.is_structural_zero(); ++k) {
        fact *= k;
        auto [dc, dg] = fn_derivative(g);
        gc *= dc;
        g = dg;
        acc = acc + (p * Expr::func(tab, g, e0)).scaled(gc * Coef(Rat(1) / fact));
        p = p * n;
    }
    return acc;
}

}  // namespace sgc
