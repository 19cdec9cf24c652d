#pragma once

#include <map>
#include <string>

#include "sgc/expr.hpp"

namespace sgc {

// Sparse exact vectors keyed by canonical monomial strings.
using SparseVec = std::map<std::string, Coef>;

// Incremental row space over Q(i) in echelon form; rows keep a unique minimal
// leading key, which makes forward reduction a sound membership test.
struct RowSpace {
    std::map<std::string, SparseVec> rows;

    SparseVec reduce(SparseVec v) const {
        while (!v.empty()) {
            auto lead = v.begin();
            auto it = rows.find(lead->first);
            if (it == rows.end()) break;
            Coef c = lead->second;
            for (auto& [k, rc] : it->second) {
                auto vit = v.find(k);
                Coef nv = (vit == v.end() ? Coef::zero() : vit->second) - c * rc;
                if (nv.is_zero()) {
                    if (vit != v.end()) v.erase(vit);
                } else {
                    v[k] = nv;
                }
            }
        }
        return v;
    }
    bool insert(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        Coef inv = v.begin()->second.inv();
        SparseVec row;
        for (auto& [k, c] : v) row.emplace(k, c * inv);
        std::string lead = row.begin()->first;
        rows.emplace(std::move(lead), std::move(row));
        return true;
    }
    bool contains(SparseVec v) const { return reduce(std::move(v)).empty(); }
    int rank() const { return int(rows.size()); }
};

// Vector of an expression over its term monomials, optionally key-prefixed.
inline SparseVec expr_to_vec(const Expr& e, const std::string& prefix = "") {
    SparseVec v;
    const SymbolTable* tab = e.table();
    for (const Term& t : e.terms()) {
        Expr mono = Expr::from_terms(tab, {Term{Coef::one(), t.fs}});
        std::string key = prefix + mono.str();
        auto it = v.find(key);
        if (it == v.end())
            v.emplace(std::move(key), t.c);
        else
            it->second += t.c;
    }
    return v;
}

}  // namespace sgc
