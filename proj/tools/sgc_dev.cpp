// Authoring helper: recomputes commutator tables and ZCC residuals for a
// scenario file so the frozen .scn text can be kept in sync.
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "sgc/linalg.hpp"
#include "sgc/scenario.hpp"

using namespace sgc;

namespace {

SparseVec vec_of(const SymbolTable* tab, const SuperVectorField& X) {
    SparseVec v;
    for (auto& [t, c] : X.comp)
        for (auto& [k, q] : expr_to_vec(c, tab->info(t).name + "|")) v[k] += q;
    return v;
}

// exact decomposition of target over the basis; empty optional if outside
std::optional<std::vector<Coef>> solve_combo(const SymbolTable* tab,
                                             const std::vector<SuperVectorField>& basis,
                                             const SuperVectorField& target) {
    std::vector<SparseVec> cols;
    for (auto& b : basis) cols.push_back(vec_of(tab, b));
    SparseVec rhs = vec_of(tab, target);
    std::map<std::string, size_t> keyidx;
    for (auto& c : cols)
        for (auto& [k, q] : c) keyidx.emplace(k, keyidx.size());
    for (auto& [k, q] : rhs) keyidx.emplace(k, keyidx.size());
    size_t rows = keyidx.size(), n = cols.size();
    std::vector<std::vector<Coef>> M(rows, std::vector<Coef>(n + 1, Coef::zero()));
    for (size_t j = 0; j < n; ++j)
        for (auto& [k, q] : cols[j]) M[keyidx[k]][j] = q;
    for (auto& [k, q] : rhs) M[keyidx[k]][n] = q;
    size_t rank = 0;
    std::vector<int> piv;
    for (size_t c = 0; c < n && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && M[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[rank]);
        Coef inv = M[rank][c].inv();
        for (size_t k = c; k <= n; ++k) M[rank][k] = M[rank][k] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][c].is_zero()) continue;
            Coef f = M[r][c];
            for (size_t k = c; k <= n; ++k) M[r][k] = M[r][k] - f * M[rank][k];
        }
        piv.push_back(int(c));
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!M[r][n].is_zero()) return std::nullopt;
    std::vector<Coef> out(n, Coef::zero());
    for (size_t r = 0; r < rank; ++r) out[piv[r]] = M[r][n];
    return out;
}

std::string coef_str(const Coef& c) {
    std::string s = c.str();
    if (s == "1") return "";
    if (s == "-1") return "-";
    if (!c.is_real() && c.re != 0) return "(" + s + ")*";
    return s + "*";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: sgc-dev table|residual|render <scn> [nonlinear|linear]\n";
        return 2;
    }
    std::string cmd = argv[1];
    std::ifstream in(argv[2]);
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario s = parse_scenario(buf.str());
    const SymbolTable* tab = s.tab.get();

    if (cmd == "table") {
        const AlgebraPresentation& alg =
            (argc > 3 && std::string(argv[3]) == "linear") ? s.linear : s.nonlinear;
        for (size_t i = 0; i < alg.basis.size(); ++i)
            for (size_t j = i; j < alg.basis.size(); ++j) {
                if (i == j && alg.basis[i].parity == Parity::Even) continue;
                SuperVectorField br = bracket(alg.basis[i], alg.basis[j]);
                if (br.is_zero()) continue;
                bool both_odd = alg.basis[i].parity == Parity::Odd &&
                                alg.basis[j].parity == Parity::Odd;
                auto combo = solve_combo(tab, alg.basis, br);
                if (!combo) {
                    std::cout << "# NOT CLOSED: [" << alg.basis[i].name << ","
                              << alg.basis[j].name << "] = external element\n";
                    continue;
                }
                std::string text;
                for (size_t k = 0; k < combo->size(); ++k) {
                    if ((*combo)[k].is_zero()) continue;
                    if (!text.empty()) text += " + ";
                    text += coef_str((*combo)[k]) + alg.basis[k].name;
                }
                std::cout << "bracket " << (both_odd ? "{" : "[") << alg.basis[i].name << ","
                          << alg.basis[j].name << (both_odd ? "}" : "]") << " = "
                          << (text.empty() ? "0" : text) << "\n";
            }
        return 0;
    }
    if (cmd == "residual") {
        SuperMatrix r = compute_zcc(s.lp);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                std::cout << "(" << i + 1 << "," << j + 1 << ") = " << r.at(i, j).str() << "\n";
        return 0;
    }
    if (cmd == "render") {
        std::cout << render_scenario(s);
        return 0;
    }
    std::cerr << "unknown command\n";
    return 2;
}
