#include "sgc/vectorfield.hpp"

#include "sgc/linalg.hpp"

#include <sstream>

namespace sgc {

SuperVectorField make_vector_field(const SymbolTable* tab, std::string name,
                                   std::map<int, Expr> comp) {
    SuperVectorField X;
    X.name = std::move(name);
    std::optional<Parity> par;
    for (auto it = comp.begin(); it != comp.end();) {
        if (it->second.is_structural_zero()) {
            it = comp.erase(it);
            continue;
        }
        for (const Term& t : it->second.terms())
            for (const Factor& f : t.fs) {
                if (f.kind == Factor::Func)
                    throw Error("vector field " + X.name + " has a non-polynomial coefficient");
                if (f.kind == Factor::Field)
                    for (int ci = 0; ci < kMaxCoords; ++ci)
                        if (f.d[ci])
                            throw Error("vector field " + X.name +
                                        " has a jet coefficient (derived field)");
            }
        auto cp = it->second.homogeneous_parity();
        if (!cp) throw ParityError("inhomogeneous coefficient in vector field " + X.name);
        Parity field_par = *cp ^ tab->info(it->first).parity;
        if (par && *par != field_par)
            throw ParityError("vector field " + X.name + " mixes parities");
        par = field_par;
        ++it;
    }
    X.parity = par.value_or(Parity::Even);
    X.comp = std::move(comp);
    return X;
}

Expr vf_apply(const SuperVectorField& X, const Expr& e) {
    const SymbolTable* tab = e.table();
    Expr acc = Expr::zero(tab);
    for (auto& [t, coef] : X.comp) acc = acc + coef * d_symbol(e, t);
    return acc;
}

SuperVectorField bracket(const SuperVectorField& X, const SuperVectorField& Y) {
    const SymbolTable* tab = nullptr;
    for (auto& [t, c] : X.comp) tab = c.table();
    for (auto& [t, c] : Y.comp) tab = c.table();
    std::map<int, Expr> comp;
    bool both_odd = X.parity == Parity::Odd && Y.parity == Parity::Odd;
    Coef s = both_odd ? Coef::one() : -Coef::one();
    auto add = [&](int t, const Expr& e) {
        if (e.is_structural_zero()) return;
        auto it = comp.find(t);
        if (it == comp.end())
            comp.emplace(t, e);
        else
            it->second = it->second + e;
    };
    for (auto& [t, yc] : Y.comp) add(t, vf_apply(X, yc));
    for (auto& [t, xc] : X.comp) add(t, vf_apply(Y, xc).scaled(s));
    if (!tab) return SuperVectorField{};
    return make_vector_field(tab, "[" + X.name + "," + Y.name + "]", std::move(comp));
}

bool vf_equal(const SuperVectorField& a, const SuperVectorField& b) {
    if (a.comp.size() != b.comp.size()) return false;
    auto ia = a.comp.begin();
    auto ib = b.comp.begin();
    for (; ia != a.comp.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

SuperVectorField vf_scale(const SuperVectorField& X, const Coef& c) {
    SuperVectorField r = X;
    if (c.is_zero()) {
        r.comp.clear();
        return r;
    }
    for (auto& [t, e] : r.comp) e = e.scaled(c);
    return r;
}

SuperVectorField vf_add(const SuperVectorField& a, const SuperVectorField& b) {
    SuperVectorField r = a;
    for (auto& [t, e] : b.comp) {
        auto it = r.comp.find(t);
        if (it == r.comp.end())
            r.comp.emplace(t, e);
        else {
            it->second = it->second + e;
            if (it->second.is_structural_zero()) r.comp.erase(it);
        }
    }
    return r;
}

std::vector<TableCheck> verify_table(const AlgebraPresentation& alg) {
    std::vector<TableCheck> out;
    auto find_rel = [&](int i, int j) -> const TableRel* {
        for (auto& r : alg.table)
            if (r.i == i && r.j == j) return &r;
        return nullptr;
    };
    int n = int(alg.basis.size());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i == j && alg.basis[i].parity == Parity::Even) continue;
            SuperVectorField br = bracket(alg.basis[i], alg.basis[j]);
            const TableRel* rel = find_rel(i, j);
            SuperVectorField want;
            if (rel)
                for (auto& [c, k] : rel->combo) want = vf_add(want, vf_scale(alg.basis[k], c));
            bool ok = vf_equal(br, want);
            std::string detail;
            if (!ok) {
                std::ostringstream os;
                os << "[" << alg.basis[i].name << "," << alg.basis[j].name << "] mismatch";
                detail = os.str();
            }
            out.push_back({i, j, rel != nullptr, ok, detail});
        }
    return out;
}

SuperVectorField project(const SuperVectorField& X, const OmegaSet& omega) {
    SuperVectorField r;
    r.name = "pi(" + X.name + ")";
    r.parity = X.parity;
    const SymbolTable* tab = nullptr;
    for (auto& [t, c] : X.comp) tab = c.table();
    for (auto& [t, c] : X.comp) {
        if (!omega.contains(t)) continue;
        for (const Term& term : c.terms())
            for (const Factor& f : term.fs) {
                if (f.kind == Factor::Func) continue;
                if (tab->info(f.sym).kind == SymbolInfo::Const) continue;
                if (!omega.contains(f.sym))
                    throw NonProjectable("coefficient of d" + tab->info(t).name + " in " +
                                         X.name + " depends on dropped " +
                                         tab->info(f.sym).name);
            }
        r.comp.emplace(t, c);
    }
    return r;
}

// --- exact span arithmetic ---

namespace {

SparseVec vf_vector(const SuperVectorField& X) {
    SparseVec v;
    for (auto& [t, c] : X.comp) {
        const SymbolTable* tab = c.table();
        SparseVec part = expr_to_vec(c, tab->info(t).name + "|");
        for (auto& [k, q] : part) {
            auto it = v.find(k);
            if (it == v.end())
                v.emplace(k, q);
            else
                it->second += q;
        }
    }
    return v;
}

}  // namespace

bool in_span(const SuperVectorField& X, const std::vector<SuperVectorField>& basis) {
    RowSpace rs;
    for (auto& b : basis) rs.insert(vf_vector(b));
    return rs.contains(vf_vector(X));
}

SpanResult span_compare(const std::vector<SuperVectorField>& A,
                        const std::vector<SuperVectorField>& B) {
    RowSpace ra, rb;
    for (auto& x : A) ra.insert(vf_vector(x));
    for (auto& x : B) rb.insert(vf_vector(x));
    SpanResult res;
    for (auto& x : A)
        if (!rb.contains(vf_vector(x))) res.only_first.push_back(x.name);
    for (auto& x : B)
        if (!ra.contains(vf_vector(x))) res.only_second.push_back(x.name);
    if (res.only_first.empty() && res.only_second.empty())
        res.kind = SpanResult::Equal;
    else if (res.only_second.empty())
        res.kind = SpanResult::SecondInFirst;  // span(B) strictly inside span(A)
    else if (res.only_first.empty())
        res.kind = SpanResult::FirstInSecond;
    else
        res.kind = SpanResult::Incomparable;
    return res;
}

}  // namespace sgc
