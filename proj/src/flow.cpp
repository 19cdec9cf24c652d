#include "sgc/flow.hpp"

#include <numeric>
#include <set>

#include "sgc/linalg.hpp"

namespace sgc {

void ensure_flow_consts(SymbolTable& tab, int mix_pairs) {
    auto dc = [&](const std::string& n, Parity p, bool unit) {
        if (!tab.find(n)) tab.declare_const(n, p, unit);
    };
    dc("_s", Parity::Even, true);
    dc("_e", Parity::Even, false);
    dc("_n", Parity::Odd, false);
    for (int k = 0; k < mix_pairs; ++k) {
        dc("_C" + std::to_string(k), Parity::Even, false);
        dc("_S" + std::to_string(k), Parity::Even, false);
    }
}

FlowSpec derive_flow(const SymbolTable* tab, const SuperVectorField& X) {
    FlowSpec s;
    s.tab = tab;
    s.gen = &X;
    s.odd = X.parity == Parity::Odd;
    auto unsup = [&](const std::string& w) -> void {
        throw UnsupportedGeneratorShape("generator " + X.name + ": " + w);
    };

    if (s.odd) {
        for (auto& [t, e] : X.comp) {
            const SymbolInfo& si = tab->info(t);
            if (si.kind == SymbolInfo::Coord) {
                for (auto& term : e.terms())
                    for (auto& f : term.fs)
                        if (f.kind != Factor::Coord)
                            unsup("field-dependent coordinate motion");
            } else {
                if (!(e.terms().size() == 1 && e.terms()[0].fs.empty()))
                    unsup("non-constant odd field component");
            }
        }
        return s;
    }

    std::map<int, std::map<int, Coef>> rawmix;
    for (auto& [t, e] : X.comp) {
        const SymbolInfo& si = tab->info(t);
        if (e.terms().size() == 1 && e.terms()[0].fs.empty()) {
            if (si.kind == SymbolInfo::Coord)
                s.coord_translation.push_back(t);
            else
                s.field_shift[t] = e.terms()[0].c;
            continue;
        }
        bool classified = true;
        for (const Term& term : e.terms()) {
            if (term.fs.size() != 1) {
                classified = false;
                break;
            }
            const Factor& f = term.fs[0];
            bool underived = f.kind != Factor::Func && f.pow == 1;
            if (f.kind == Factor::Field)
                for (int ci = 0; ci < kMaxCoords; ++ci) underived = underived && !f.d[ci];
            if (!underived) {
                classified = false;
                break;
            }
            if (f.sym == t) {
                if (!term.c.is_real() || e.terms().size() != 1) {
                    classified = false;
                    break;
                }
                (si.kind == SymbolInfo::Coord ? s.coord_scale : s.field_scale)[t] = term.c.re;
            } else if (si.kind == SymbolInfo::Field &&
                       tab->info(f.sym).kind == SymbolInfo::Field) {
                rawmix[t][f.sym] = term.c;
            } else {
                classified = false;
                break;
            }
        }
        if (!classified)
            unsup("component d" + tab->info(t).name + " <- " + e.str() +
                  " is not affine of a supported shape");
    }

    std::set<int> used;
    std::map<std::string, int> pq_pair;
    int pair_idx = 0;
    for (auto& [t, row] : rawmix) {
        if (used.count(t)) continue;
        if (row.size() != 1) unsup("mixing row touches several fields");
        int u = row.begin()->first;
        Coef p = row.begin()->second;
        if (tab->info(t).parity != tab->info(u).parity) unsup("parity-changing mixing");
        if (s.field_scale.count(t) || s.field_scale.count(u) || s.field_shift.count(t) ||
            s.field_shift.count(u))
            unsup("field both mixed and scaled or shifted");
        auto itu = rawmix.find(u);
        if (itu == rawmix.end()) {
            s.mix.push_back({t, u, p, Coef::zero(), -1});
            used.insert(t);
            continue;
        }
        if (itu->second.size() != 1 || itu->second.begin()->first != t)
            unsup("mixing component is not a 2-block");
        Coef q = itu->second.begin()->second;
        std::string key = (p * q).str();
        auto pit = pq_pair.find(key);
        int pr = pit == pq_pair.end() ? pair_idx++ : pit->second;
        if (pit == pq_pair.end()) pq_pair.emplace(key, pr);
        s.mix.push_back({t, u, p, q, pr});
        used.insert(t);
        used.insert(u);
    }

    long L = 1;
    auto addden = [&](const Rat& r) { L = std::lcm(L, labs(long(r.get_den().get_si()))); };
    for (auto& [t, w] : s.coord_scale) addden(w);
    for (auto& [t, w] : s.field_scale) addden(w);
    for (auto& [t, k] : s.field_shift)
        if (k.is_real()) addden(k.re);
    s.denom = L;
    return s;
}

namespace {

struct EvenCtx {
    const FlowSpec* spec;
    const SymbolTable* tab;
    bool insertion = false;  // flips the sign of all scale exponents
    int unit_sym = -1;       // _s for equation flows, mu for insertions
};

Expr unit_pow(const EvenCtx& cx, long num) {
    if (num == 0) return Expr::one(cx.tab);
    Factor f = Factor::field(cx.unit_sym);
    f.pow = int(num);
    return Expr::from_terms(cx.tab, {Term{Coef::one(), {f}}});
}

long weight_steps(const EvenCtx& cx, const Rat& w) {
    Rat scaled = w * cx.spec->denom;
    if (scaled.get_den() != 1) throw Error("internal: weight denominator");
    long n = long(scaled.get_num().get_si());
    return cx.insertion ? -n : n;
}

Expr transform_even(const EvenCtx& cx, const Expr& e);

const FlowSpec::MixBlock* find_block(const FlowSpec& sp, int sym) {
    for (auto& b : sp.mix)
        if (b.t == sym || b.u == sym) return &b;
    return nullptr;
}

Expr factor_image(const EvenCtx& cx, const Factor& f) {
    const SymbolTable* tab = cx.tab;
    const FlowSpec& sp = *cx.spec;
    Expr self = Expr::from_terms(tab, {Term{Coef::one(), {f}}});

    if (f.kind == Factor::Coord) {
        auto it = sp.coord_scale.find(f.sym);
        if (it != sp.coord_scale.end())
            return unit_pow(cx, weight_steps(cx, it->second) * f.pow) * self;
        for (int t : sp.coord_translation)
            if (t == f.sym)
                throw UnsupportedGeneratorShape(
                    "translated coordinate appears explicitly in an equation");
        return self;
    }

    if (f.kind == Factor::Field) {
        const SymbolInfo& si = tab->info(f.sym);
        if (si.kind == SymbolInfo::Const) return self;
        if (const FlowSpec::MixBlock* b = find_block(sp, f.sym)) {
            Expr img;
            if (b->u < 0 || b->q.is_zero()) {
                // nilpotent: t -> t + p _e u (only t carries a row)
                if (f.sym == b->t) {
                    Expr eps = Expr::symbol(tab, tab->require("_e"));
                    img = Expr::derived(tab, b->t, f.d) +
                          eps.scaled(b->p) * Expr::derived(tab, b->u, f.d);
                } else {
                    img = Expr::derived(tab, f.sym, f.d);
                }
            } else {
                Expr C = Expr::symbol(tab, tab->require("_C" + std::to_string(b->pair)));
                Expr S = Expr::symbol(tab, tab->require("_S" + std::to_string(b->pair)));
                if (f.sym == b->t)
                    img = C * Expr::derived(tab, b->t, f.d) +
                          S.scaled(b->p) * Expr::derived(tab, b->u, f.d);
                else
                    img = S.scaled(b->q) * Expr::derived(tab, b->t, f.d) +
                          C * Expr::derived(tab, b->u, f.d);
            }
            return expr_int_pow(img, f.pow);
        }
        // coordinate-scale weight picked up by the derivative slots
        Rat aw(0);
        for (int ci = 0; ci < tab->coord_count(); ++ci)
            if (f.d[ci]) {
                auto it = sp.coord_scale.find(tab->coord_id(ci));
                if (it != sp.coord_scale.end()) aw += it->second * f.d[ci];
            }
        Rat fw(0);
        if (auto it = sp.field_scale.find(f.sym); it != sp.field_scale.end()) fw = it->second;
        Expr img = Expr::derived(tab, f.sym, f.d);
        auto itsh = sp.field_shift.find(f.sym);
        bool underived = true;
        for (int ci = 0; ci < kMaxCoords; ++ci) underived = underived && !f.d[ci];
        if (itsh != sp.field_shift.end() && underived)
            img = img + Expr::symbol(tab, tab->require("_e")).scaled(itsh->second);
        img = expr_int_pow(img, f.pow);
        Rat w = fw - aw;
        if (w != 0) img = unit_pow(cx, weight_steps(cx, w) * f.pow) * img;
        return img;
    }

    // function factor
    Expr arg2 = transform_even(cx, *f.arg);
    if (arg2 == *f.arg) return self;
    // split off the pure-shift part r*_e; exp picks it up as a power of the
    // scale unit, since both are exponentials of the same group parameter
    int esym = tab->find("_e").value_or(-1);
    std::vector<Term> core;
    Coef r = Coef::zero();
    for (const Term& t : arg2.terms()) {
        if (esym >= 0 && t.fs.size() == 1 && t.fs[0].kind == Factor::Field &&
            t.fs[0].sym == esym && t.fs[0].pow == 1) {
            r += t.c;
        } else {
            core.push_back(t);
        }
    }
    Expr core_e = Expr::from_terms(tab, std::move(core));
    Expr res = Expr::func(tab, f.fn, core_e);
    if (!r.is_zero()) {
        if (f.fn.kind != FnSym::Exp || !r.is_real())
            throw UnsupportedGeneratorShape("flow shifts the argument of a non-exponential");
        Rat steps = r.re * cx.spec->denom;
        if (steps.get_den() != 1)
            throw UnsupportedGeneratorShape("non-integral exponential shift");
        res = res * unit_pow(cx, long(steps.get_num().get_si()));
    }
    return expr_int_pow(res, f.pow);
}

Expr transform_even(const EvenCtx& cx, const Expr& e) {
    Expr out = Expr::zero(cx.tab);
    for (const Term& t : e.terms()) {
        Expr prod = Expr::constant(cx.tab, t.c);
        for (const Factor& f : t.fs) prod = prod * factor_image(cx, f);
        out = out + prod;
    }
    return out;
}

}  // namespace

Expr transform_equation(const Expr& e, const FlowSpec& spec) {
    const SymbolTable* tab = spec.tab;
    if (spec.odd) {
        Expr v = Expr::zero(tab);
        for (auto& [t, c] : spec.gen->comp) {
            const SymbolInfo& si = tab->info(t);
            Expr d = si.kind == SymbolInfo::Coord ? d_coord(e, si.coord_index) : d_symbol(e, t);
            v = v + c * d;
        }
        return e + Expr::symbol(tab, tab->require("_n")) * v;
    }
    EvenCtx cx{&spec, tab, false, *tab->find("_s")};
    return transform_even(cx, e);
}

Expr transform_matrix_entry(const Expr& e, const FlowSpec& spec, int unit_sym, int odd_sym) {
    const SymbolTable* tab = spec.tab;
    if (spec.odd) {
        std::map<int, Expr> imgs;
        for (auto& [t, c] : spec.gen->comp) {
            if (tab->info(t).kind == SymbolInfo::Coord)
                throw UnsupportedGeneratorShape("odd insertion moving coordinates");
            imgs.emplace(t, Expr::symbol(tab, t) +
                                Expr::symbol(tab, odd_sym).scaled(c.terms()[0].c));
        }
        return substitute(e, imgs);
    }
    if (!spec.field_shift.empty() || !spec.mix.empty() || !spec.coord_translation.empty())
        throw UnsupportedGeneratorShape("even insertion supports pure scaling flows only");
    EvenCtx cx{&spec, tab, true, unit_sym};
    return transform_even(cx, e);
}

namespace {

bool is_flow_const(const SymbolTable* tab, int sym) {
    const SymbolInfo& si = tab->info(sym);
    return si.kind == SymbolInfo::Const && !si.name.empty() && si.name[0] == '_';
}

// Split a zero-normalized expression into residuals per flow-parameter
// monomial, as t = sign * param_mono * rest with the parameters pulled to the
// front: an odd parameter crossing an odd kept factor flips the sign.
std::map<std::string, Expr> strip_params(const Expr& e) {
    const SymbolTable* tab = e.table();
    std::map<std::string, std::vector<Term>> groups;
    for (const Term& t : e.terms()) {
        std::vector<Factor> params, rest;
        int sign = 1;
        int kept_odd = 0;
        for (const Factor& f : t.fs) {
            bool is_param = f.kind == Factor::Field && is_flow_const(tab, f.sym);
            bool odd = factor_parity(tab, f) == Parity::Odd;
            if (is_param) {
                if (odd && (kept_odd & 1)) sign = -sign;
                params.push_back(f);
            } else {
                if (odd) kept_odd ^= 1;
                rest.push_back(f);
            }
        }
        Expr pm = Expr::from_terms(tab, {Term{Coef::one(), params}});
        Coef c = t.c;
        if (sign < 0) c = -c;
        groups[pm.str()].push_back(Term{c, rest});
    }
    std::map<std::string, Expr> out;
    for (auto& [k, ts] : groups) {
        Expr r = Expr::from_terms(tab, std::move(ts));
        if (!r.is_structural_zero()) out.emplace(k, std::move(r));
    }
    return out;
}

}  // namespace

std::vector<InvarianceCheck> flow_invariance_check(
    SymbolTable& tab, const std::vector<std::pair<std::string, Expr>>& eqs,
    const SuperVectorField& X) {
    std::vector<InvarianceCheck> out;
    FlowSpec spec;
    try {
        spec = derive_flow(&tab, X);
    } catch (const UnsupportedGeneratorShape& ex) {
        out.push_back({"*", "skip", ex.what()});
        return out;
    }
    ensure_flow_consts(tab, int(spec.mix.size()) + 1);

    RowSpace plain;
    for (auto& [n, e] : eqs) plain.insert(expr_to_vec(zero_normal(e)));

    bool need_prolonged = spec.odd || !spec.field_shift.empty();
    RowSpace prolonged;
    if (need_prolonged) {
        prolonged = plain;
        std::vector<Expr> thetas;
        thetas.push_back(Expr::one(&tab));
        for (int ci = 0; ci < tab.coord_count(); ++ci)
            if (tab.coord_parity(ci) == Parity::Odd)
                thetas.push_back(Expr::symbol(&tab, tab.coord_id(ci)));
        if (thetas.size() == 3) thetas.push_back(thetas[1] * thetas[2]);
        for (auto& [n, e] : eqs) {
            std::vector<Expr> derivs;
            for (int ci = 0; ci < tab.coord_count(); ++ci) derivs.push_back(d_coord(e, ci));
            for (auto& [t, c] : X.comp)
                if (tab.info(t).kind != SymbolInfo::Coord) derivs.push_back(d_symbol(e, t));
            for (const Expr& th : thetas)
                for (const Expr& d : derivs)
                    if (!d.is_structural_zero()) prolonged.insert(expr_to_vec(zero_normal(th * d)));
        }
    }

    for (auto& [name, e] : eqs) {
        InvarianceCheck ck{name, "pass", ""};
        Expr T;
        try {
            T = transform_equation(e, spec);
        } catch (const UnsupportedGeneratorShape& ex) {
            out.push_back({name, "skip", ex.what()});
            continue;
        }
        if (T == e) {
            ck.detail = "form-invariant";
            out.push_back(std::move(ck));
            continue;
        }
        auto groups = strip_params(zero_normal(T));
        std::string bad;
        for (auto& [pm, residual] : groups) {
            SparseVec v = expr_to_vec(residual);
            if (plain.contains(v)) continue;
            if (need_prolonged && prolonged.contains(v)) continue;
            bad = pm + " -> " + residual.str();
            break;
        }
        if (bad.empty()) {
            ck.detail = "combination of system equations";
        } else {
            ck.status = "fail";
            ck.detail = "uncancelled part at " + bad;
        }
        out.push_back(std::move(ck));
    }
    return out;
}

}  // namespace sgc
