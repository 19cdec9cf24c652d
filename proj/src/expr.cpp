#include "sgc/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sgc {

Parity factor_parity(const SymbolTable* tab, const Factor& f) {
    switch (f.kind) {
        case Factor::Coord: return tab->info(f.sym).parity;
        case Factor::Field: {
            Parity p = tab->info(f.sym).parity;
            for (int i = 0; i < tab->coord_count(); ++i)
                if (f.d[i] && tab->coord_parity(i) == Parity::Odd) p = p ^ Parity::Odd;
            return p;
        }
        default: return Parity::Even;
    }
}

int cmp_factor_key(const SymbolTable* tab, const Factor& a, const Factor& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
        case Factor::Coord: {
            int ia = tab->info(a.sym).coord_index, ib = tab->info(b.sym).coord_index;
            return ia == ib ? 0 : (ia < ib ? -1 : 1);
        }
        case Factor::Field: {
            if (a.sym != b.sym) {
                int c = tab->info(a.sym).name.compare(tab->info(b.sym).name);
                return c < 0 ? -1 : 1;
            }
            for (int i = 0; i < kMaxCoords; ++i)
                if (a.d[i] != b.d[i]) return a.d[i] < b.d[i] ? -1 : 1;
            return 0;
        }
        default: {
            if (int c = a.fn.cmp(b.fn)) return c;
            return a.arg->cmp(*b.arg);
        }
    }
}

static int cmp_term_key(const SymbolTable* tab, const Term& a, const Term& b) {
    size_t n = std::min(a.fs.size(), b.fs.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = cmp_factor_key(tab, a.fs[i], b.fs[i])) return c;
        if (a.fs[i].pow != b.fs[i].pow) return a.fs[i].pow < b.fs[i].pow ? -1 : 1;
    }
    if (a.fs.size() != b.fs.size()) return a.fs.size() < b.fs.size() ? -1 : 1;
    return 0;
}

bool mul_into(const SymbolTable* tab, std::vector<Factor>& acc, Factor g, int& sign) {
    if (g.pow == 0) return true;
    if (g.pow != 1 && factor_parity(tab, g) == Parity::Odd) return false;
    acc.push_back(std::move(g));
    size_t i = acc.size() - 1;
    while (i > 0) {
        int c = cmp_factor_key(tab, acc[i - 1], acc[i]);
        if (c < 0) break;
        if (c == 0) {
            if (factor_parity(tab, acc[i]) == Parity::Odd) return false;  // odd squared
            acc[i - 1].pow += acc[i].pow;
            acc.erase(acc.begin() + i);
            if (acc[i - 1].pow == 0) acc.erase(acc.begin() + (i - 1));
            return true;
        }
        if (factor_parity(tab, acc[i - 1]) == Parity::Odd &&
            factor_parity(tab, acc[i]) == Parity::Odd)
            sign = -sign;
        std::swap(acc[i - 1], acc[i]);
        --i;
    }
    return true;
}

std::optional<Term> mul_term(const SymbolTable* tab, const Term& a, const Term& b) {
    Term r;
    r.c = a.c * b.c;
    if (r.c.is_zero()) return std::nullopt;
    r.fs = a.fs;
    int sign = 1;
    for (const Factor& g : b.fs)
        if (!mul_into(tab, r.fs, g, sign)) return std::nullopt;
    if (sign < 0) r.c = -r.c;
    return r;
}

Expr collect_terms(const SymbolTable* tab, std::vector<Term>&& raw) {
    std::sort(raw.begin(), raw.end(),
              [tab](const Term& x, const Term& y) { return cmp_term_key(tab, x, y) < 0; });
    std::vector<Term> out;
    for (auto& t : raw) {
        if (t.c.is_zero()) continue;
        if (!out.empty() && cmp_term_key(tab, out.back(), t) == 0) {
            out.back().c += t.c;
            if (out.back().c.is_zero()) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    return Expr(tab, std::move(out));
}

Expr Expr::from_terms(const SymbolTable* tab, std::vector<Term> ts) {
    std::vector<Term> norm;
    for (Term& t : ts) {
        if (t.c.is_zero()) continue;
        Term r{t.c, {}};
        int sign = 1;
        bool dead = false;
        for (Factor& f : t.fs) {
            if (f.pow == 0) continue;
            if (f.pow < 0 &&
                !(f.kind == Factor::Field && tab->info(f.sym).unit))
                throw Error("negative power on a non-invertible factor");
            if (!mul_into(tab, r.fs, f, sign)) {
                dead = true;
                break;
            }
        }
        if (dead) continue;
        if (sign < 0) r.c = -r.c;
        norm.push_back(std::move(r));
    }
    return collect_terms(tab, std::move(norm));
}

Expr Expr::constant(const SymbolTable* tab, Coef c) {
    if (c.is_zero()) return zero(tab);
    return Expr(tab, {Term{std::move(c), {}}});
}

Expr Expr::symbol(const SymbolTable* tab, int id) {
    const SymbolInfo& si = tab->info(id);
    Factor f = si.kind == SymbolInfo::Coord ? Factor::coord(id) : Factor::field(id);
    return Expr(tab, {Term{Coef::one(), {f}}});
}

Expr Expr::derived(const SymbolTable* tab, int field, const Deriv& d) {
    const SymbolInfo& si = tab->info(field);
    bool any = false;
    for (int ci = 0; ci < tab->coord_count(); ++ci) {
        if (!d[ci]) continue;
        any = true;
        if (si.kind != SymbolInfo::Field) return zero(tab);
        if (!((si.depends >> ci) & 1)) return zero(tab);
        if (tab->coord_parity(ci) == Parity::Odd && d[ci] > 1) return zero(tab);
    }
    if (si.kind == SymbolInfo::Coord) {
        if (any) throw Error("derived() on a coordinate");
        return symbol(tab, field);
    }
    return Expr(tab, {Term{Coef::one(), {Factor::field(field, d)}}});
}

Expr Expr::func(const SymbolTable* tab, const FnSym& fn, const Expr& arg, int pw) {
    Grade g = arg.grade_of();
    if (g != Grade::Even) throw OddArgument("function of non-even argument: " + fn.str());
    if (pw == 0) return one(tab);
    if (pw < 0) throw Error("negative function power");
    if (arg.is_structural_zero()) {
        if (auto v = fn_value_at_zero(fn, 0)) {
            Coef c = Coef::one();
            for (int j = 0; j < pw; ++j) c *= *v;
            return constant(tab, c);
        }
    }
    Factor f;
    f.kind = Factor::Func;
    f.fn = fn;
    f.arg = std::make_shared<Expr>(arg);
    f.pow = pw;
    return Expr(tab, {Term{Coef::one(), {f}}});
}

Expr Expr::operator+(const Expr& o) const {
    std::vector<Term> ts = ts_;
    ts.insert(ts.end(), o.ts_.begin(), o.ts_.end());
    return collect_terms(tab_ ? tab_ : o.tab_, std::move(ts));
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator-() const {
    std::vector<Term> ts = ts_;
    for (Term& t : ts) t.c = -t.c;
    return Expr(tab_, std::move(ts));
}

Expr Expr::scaled(const Coef& q) const {
    if (q.is_zero()) return zero(tab_);
    std::vector<Term> ts = ts_;
    for (Term& t : ts) t.c = t.c * q;
    return Expr(tab_, std::move(ts));
}

Expr Expr::operator*(const Expr& o) const {
    const SymbolTable* tab = tab_ ? tab_ : o.tab_;
    std::vector<Term> ts;
    for (const Term& a : ts_)
        for (const Term& b : o.ts_)
            if (auto t = mul_term(tab, a, b)) ts.push_back(std::move(*t));
    return collect_terms(tab, std::move(ts));
}

Expr Expr::pow(int n) const {
    if (n < 0) throw Error("Expr::pow with negative exponent");
    Expr r = one(tab_);
    for (int j = 0; j < n; ++j) r = r * *this;
    return r;
}

Parity term_parity(const SymbolTable* tab, const Term& t) {
    int p = 0;
    for (const Factor& f : t.fs)
        if (factor_parity(tab, f) == Parity::Odd) p ^= (f.pow & 1);
    return Parity(p);
}

Grade Expr::grade_of() const {
    bool e = false, o = false;
    for (const Term& t : ts_)
        (term_parity(tab_, t) == Parity::Odd ? o : e) = true;
    if (e && o) return Grade::Mixed;
    return o ? Grade::Odd : Grade::Even;
}

std::optional<Parity> Expr::homogeneous_parity() const {
    switch (grade_of()) {
        case Grade::Even: return Parity::Even;
        case Grade::Odd: return Parity::Odd;
        default: return std::nullopt;
    }
}

int Expr::cmp(const Expr& o) const {
    size_t n = std::min(ts_.size(), o.ts_.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = cmp_term_key(tab_, ts_[i], o.ts_[i])) return c;
        if (int c = ts_[i].c.cmp(o.ts_[i].c)) return c;
    }
    if (ts_.size() != o.ts_.size()) return ts_.size() < o.ts_.size() ? -1 : 1;
    return 0;
}

// --- derivatives ---

static Expr derive_terms(const Expr& e, bool odd_op,
                         const std::function<Expr(const Factor&)>& dfac) {
    const SymbolTable* tab = e.table();
    std::vector<Term> out;
    Expr res = Expr::zero(tab);
    for (const Term& t : e.terms()) {
        int prefix_odd = 0;
        for (size_t k = 0; k < t.fs.size(); ++k) {
            const Factor& f = t.fs[k];
            Expr df = dfac(f);
            if (!df.is_structural_zero()) {
                Coef c = t.c;
                if (odd_op && (prefix_odd & 1)) c = -c;
                Term pre{c, std::vector<Factor>(t.fs.begin(), t.fs.begin() + k)};
                Term suf{Coef::one(), std::vector<Factor>(t.fs.begin() + k + 1, t.fs.end())};
                res = res + Expr::from_terms(tab, {pre}) * df * Expr::from_terms(tab, {suf});
            }
            if (factor_parity(tab, f) == Parity::Odd) prefix_odd ^= (f.pow & 1);
        }
    }
    return res;
}

static Expr d_factor_coord(const SymbolTable* tab, const Factor& f, int ci) {
    switch (f.kind) {
        case Factor::Coord: {
            if (tab->info(f.sym).coord_index != ci) return Expr::zero(tab);
            if (f.pow == 1) return Expr::one(tab);
            Factor g = f;
            g.pow -= 1;
            return Expr::from_terms(tab, {Term{Coef(f.pow), {g}}});
        }
        case Factor::Field: {
            const SymbolInfo& si = tab->info(f.sym);
            if (si.kind != SymbolInfo::Field) return Expr::zero(tab);
            if (!((si.depends >> ci) & 1)) return Expr::zero(tab);
            Deriv nd = f.d;
            Coef sgn = Coef::one();
            if (tab->coord_parity(ci) == Parity::Odd) {
                if (f.d[ci]) return Expr::zero(tab);
                int crossings = 0;
                for (int j = ci + 1; j < tab->coord_count(); ++j)
                    if (tab->coord_parity(j) == Parity::Odd && f.d[j]) ++crossings;
                if (crossings & 1) sgn = -sgn;
                nd[ci] = 1;
            } else {
                nd[ci] = uint8_t(nd[ci] + 1);
            }
            Factor df = Factor::field(f.sym, nd);
            if (f.pow == 1) return Expr::from_terms(tab, {Term{sgn, {df}}});
            Factor base = f;
            base.pow -= 1;
            return Expr::from_terms(tab, {Term{sgn * Coef(f.pow), {base, df}}});
        }
        default: {
            Expr dA = d_coord(*f.arg, ci);
            if (dA.is_structural_zero()) return Expr::zero(tab);
            auto [dc, dfn] = fn_derivative(f.fn);
            Expr out = dA * Expr::func(tab, dfn, *f.arg).scaled(dc);
            if (f.pow > 1) {
                Factor g = f;
                g.pow -= 1;
                out = Expr::from_terms(tab, {Term{Coef(f.pow), {g}}}) * out;
            }
            return out;
        }
    }
}

Expr d_coord(const Expr& e, int ci) {
    const SymbolTable* tab = e.table();
    bool odd_op = tab->coord_parity(ci) == Parity::Odd;
    return derive_terms(e, odd_op,
                        [tab, ci](const Factor& f) { return d_factor_coord(tab, f, ci); });
}

static Expr d_factor_sym(const SymbolTable* tab, const Factor& f, int sym) {
    switch (f.kind) {
        case Factor::Coord:
        case Factor::Field: {
            if (f.sym != sym) return Expr::zero(tab);
            if (f.kind == Factor::Field)
                for (int i = 0; i < kMaxCoords; ++i)
                    if (f.d[i]) return Expr::zero(tab);  // derived occurrences are independent
            if (f.pow == 1) return Expr::one(tab);
            Factor g = f;
            g.pow -= 1;
            return Expr::from_terms(tab, {Term{Coef(f.pow), {g}}});
        }
        default: {
            Expr dA = d_symbol(*f.arg, sym);
            if (dA.is_structural_zero()) return Expr::zero(tab);
            auto [dc, dfn] = fn_derivative(f.fn);
            Expr out = dA * Expr::func(tab, dfn, *f.arg).scaled(dc);
            if (f.pow > 1) {
                Factor g = f;
                g.pow -= 1;
                out = Expr::from_terms(tab, {Term{Coef(f.pow), {g}}}) * out;
            }
            return out;
        }
    }
}

Expr d_symbol(const Expr& e, int sym) {
    const SymbolTable* tab = e.table();
    bool odd_op = tab->info(sym).parity == Parity::Odd;
    return derive_terms(e, odd_op,
                        [tab, sym](const Factor& f) { return d_factor_sym(tab, f, sym); });
}

SuperOp superop_from_name(const std::string& n) {
    if (n == "dxp") return SuperOp::Dxp;
    if (n == "dxm") return SuperOp::Dxm;
    if (n == "dtp") return SuperOp::Dtp;
    if (n == "dtm") return SuperOp::Dtm;
    if (n == "Dp") return SuperOp::Dp;
    if (n == "Dm") return SuperOp::Dm;
    if (n == "Jp") return SuperOp::Jp;
    if (n == "Jm") return SuperOp::Jm;
    throw Error("unknown operator: " + n);
}

std::string superop_name(SuperOp op) {
    switch (op) {
        case SuperOp::Dxp: return "dxp";
        case SuperOp::Dxm: return "dxm";
        case SuperOp::Dtp: return "dtp";
        case SuperOp::Dtm: return "dtm";
        case SuperOp::Dp: return "Dp";
        case SuperOp::Dm: return "Dm";
        case SuperOp::Jp: return "Jp";
        default: return "Jm";
    }
}

static bool superop_odd(SuperOp op) {
    return op != SuperOp::Dxp && op != SuperOp::Dxm;
}

Expr apply_op(const Expr& e, SuperOp op) {
    const SymbolTable* tab = e.table();
    auto cidx = [&](const char* n) { return tab->info(tab->require(n)).coord_index; };
    auto csym = [&](const char* n) { return Expr::symbol(tab, tab->require(n)); };
    switch (op) {
        case SuperOp::Dxp: return d_coord(e, cidx("xp"));
        case SuperOp::Dxm: return d_coord(e, cidx("xm"));
        case SuperOp::Dtp: return d_coord(e, cidx("tp"));
        case SuperOp::Dtm: return d_coord(e, cidx("tm"));
        case SuperOp::Dp:
            return d_coord(e, cidx("tp")) - (csym("tp") * d_coord(e, cidx("xp"))).scaled(Coef::i());
        case SuperOp::Dm:
            return d_coord(e, cidx("tm")) - (csym("tm") * d_coord(e, cidx("xm"))).scaled(Coef::i());
        case SuperOp::Jp:
            return d_coord(e, cidx("tp")) + (csym("tp") * d_coord(e, cidx("xp"))).scaled(Coef::i());
        default:
            return d_coord(e, cidx("tm")) + (csym("tm") * d_coord(e, cidx("xm"))).scaled(Coef::i());
    }
}

Expr compose_check(SuperOp op1, SuperOp op2, const Expr& test, const Expr& claimed) {
    Expr a = apply_op(apply_op(test, op2), op1);
    Expr b = apply_op(apply_op(test, op1), op2);
    bool anti = superop_odd(op1) && superop_odd(op2);
    return (anti ? a + b : a - b) - claimed;
}

// --- substitution ---

Expr expr_int_pow(const Expr& base, int n) {
    if (n >= 0) return base.pow(n);
    const SymbolTable* tab = base.table();
    // invert: only constants and unit-constant monomials
    if (base.terms().size() != 1) throw Error("cannot invert a sum");
    Term t = base.terms()[0];
    t.c = t.c.inv();
    for (Factor& f : t.fs) {
        if (f.kind != Factor::Field || !tab->info(f.sym).unit)
            throw Error("cannot invert non-unit factor");
        f.pow = -f.pow;
    }
    Expr inv = Expr::from_terms(tab, {t});
    return inv.pow(-n);
}

Expr substitute(const Expr& e, const std::map<int, Expr>& images) {
    const SymbolTable* tab = e.table();
    for (auto& [sym, img] : images) {
        if (img.is_structural_zero()) continue;
        auto p = img.homogeneous_parity();
        if (!p || *p != tab->info(sym).parity)
            throw ParityMismatch("substitution changes parity of " + tab->info(sym).name);
    }
    Expr res = Expr::zero(tab);
    for (const Term& t : e.terms()) {
        Expr prod = Expr::constant(tab, t.c);
        for (const Factor& f : t.fs) {
            Expr fx;
            if (f.kind == Factor::Func) {
                Expr arg = substitute(*f.arg, images);
                fx = (arg == *f.arg) ? Expr::from_terms(tab, {Term{Coef::one(), {f}}})
                                     : Expr::func(tab, f.fn, arg, f.pow);
            } else if (images.count(f.sym)) {
                Expr img = images.at(f.sym);
                if (f.kind == Factor::Field)
                    for (int ci = 0; ci < tab->coord_count(); ++ci)
                        for (int k = 0; k < f.d[ci]; ++k) img = d_coord(img, ci);
                fx = expr_int_pow(img, f.pow);
            } else {
                fx = Expr::from_terms(tab, {Term{Coef::one(), {f}}});
            }
            prod = prod * fx;
            if (prod.is_structural_zero()) break;
        }
        res = res + prod;
    }
    return res;
}

// --- zero recognition ---

Expr zero_normal(const Expr& e) {
    const SymbolTable* tab = e.table();
    std::vector<Term> out;
    for (const Term& t : e.terms()) {
        Term base{t.c, {}};
        Expr expanded = Expr::one(tab);
        Expr exp_arg = Expr::zero(tab);
        for (const Factor& f : t.fs) {
            if (f.kind != Factor::Func) {
                base.fs.push_back(f);
                continue;
            }
            if (f.fn.kind == FnSym::Exp) {
                exp_arg = exp_arg + f.arg->scaled(Coef(f.pow));
                continue;
            }
            if (f.fn.kind == FnSym::Sin || f.fn.kind == FnSym::Cos) {
                Expr Ai = f.arg->scaled(Coef::i());
                Expr ep = Expr::func(tab, FnSym::exp(), Ai);
                Expr em = Expr::func(tab, FnSym::exp(), -Ai);
                Expr g = (f.fn.kind == FnSym::Sin)
                             ? (ep - em).scaled(Coef(Rat(0), Rat(-1, 2)))
                             : (ep + em).scaled(Coef::frac(1, 2));
                expanded = expanded * g.pow(f.pow);
                continue;
            }
            base.fs.push_back(f);  // user functions stay opaque
        }
        Expr piece = Expr::from_terms(tab, {base}) * expanded;
        for (Term pt : piece.terms()) {
            Expr asum = exp_arg;
            std::vector<Factor> keep;
            for (auto& pf : pt.fs) {
                if (pf.kind == Factor::Func && pf.fn.kind == FnSym::Exp)
                    asum = asum + pf.arg->scaled(Coef(pf.pow));
                else
                    keep.push_back(pf);
            }
            pt.fs = std::move(keep);
            if (!asum.is_structural_zero()) {
                Factor ef;
                ef.kind = Factor::Func;
                ef.fn = FnSym::exp();
                ef.arg = std::make_shared<Expr>(asum);
                ef.pow = 1;
                int s = 1;
                mul_into(tab, pt.fs, ef, s);
            }
            out.push_back(std::move(pt));
        }
    }
    return collect_terms(tab, std::move(out));
}

bool is_zero_strong(const Expr& e) {
    if (e.is_structural_zero()) return true;
    return zero_normal(e).is_structural_zero();
}

bool equal_strong(const Expr& a, const Expr& b) { return is_zero_strong(a - b); }

// --- rendering ---

static std::string factor_str(const SymbolTable* tab, const Factor& f) {
    std::string s;
    if (f.kind == Factor::Func) {
        s = f.fn.str() + "(" + f.arg->str() + ")";
    } else {
        s = tab->info(f.sym).name;
        if (f.kind == Factor::Field)
            for (int ci = 0; ci < tab->coord_count(); ++ci)
                for (int k = 0; k < f.d[ci]; ++k)
                    s = "d" + tab->info(tab->coord_id(ci)).name + "(" + s + ")";
    }
    if (f.pow != 1) s += "^" + std::to_string(f.pow);
    return s;
}

std::string Expr::str() const {
    if (ts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : ts_) {
        Coef c = t.c;
        bool neg = c.is_real() && c.re < 0;
        if (!neg && c.re == 0 && c.im < 0) neg = true;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;

        std::string cs = c.str();
        if (c.re != 0 && c.im != 0) cs = "(" + cs + ")";
        std::string body;
        for (size_t i = 0; i < t.fs.size(); ++i) {
            if (i) body += "*";
            body += factor_str(tab_, t.fs[i]);
        }
        if (body.empty()) {
            os << cs;
        } else if (cs == "1") {
            os << body;
        } else {
            os << cs << "*" << body;
        }
    }
    return os.str();
}

}  // namespace sgc
