#include "sgc/scenario.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "sgc/parser.hpp"

namespace sgc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
    size_t h = s.find('#');
    return h == std::string::npos ? s : s.substr(0, h);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

Parity parse_parity(const std::string& w, int ln) {
    if (w == "even") return Parity::Even;
    if (w == "odd") return Parity::Odd;
    throw SyntaxError("expected parity, got '" + w + "'", ln, 1);
}

struct SectionLines {
    std::vector<std::pair<int, std::string>> header;
    std::map<std::string, std::vector<std::pair<int, std::string>>> sections;
};

SectionLines collect(const std::string& text) {
    SectionLines out;
    std::istringstream in(text);
    std::string raw, section;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw SyntaxError("malformed section header", ln, 1);
            section = line.substr(1, line.size() - 2);
            continue;
        }
        if (section.empty())
            out.header.emplace_back(ln, line);
        else
            out.sections[section].emplace_back(ln, line);
    }
    return out;
}

// first word and the rest
std::pair<std::string, std::string> word(const std::string& s) {
    size_t i = s.find_first_of(" \t");
    if (i == std::string::npos) return {s, ""};
    return {s.substr(0, i), trim(s.substr(i))};
}

std::vector<std::pair<Coef, std::string>> parse_combo(const std::string& text, int ln) {
    std::vector<std::pair<Coef, std::string>> out;
    if (trim(text) == "0") return out;
    // signed chunks, each  [coef *] name
    int depth = 0, sign = 1;
    std::string cur;
    std::vector<std::pair<int, std::string>> chunks;
    auto flush = [&](int s) {
        if (!trim(cur).empty()) chunks.emplace_back(sign, trim(cur));
        cur.clear();
        sign = s;
    };
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-')) {
            if (trim(cur).empty() && c == '-') {
                sign = -sign;
                continue;
            }
            flush(c == '-' ? -1 : 1);
            continue;
        }
        cur += c;
    }
    flush(1);
    for (auto& [s, chunk] : chunks) {
        auto parts = split_top(chunk, '*');
        std::string name = parts.back();
        Coef c = Coef(s);
        for (size_t i = 0; i + 1 < parts.size(); ++i) {
            const std::string& p = parts[i];
            if (p == "I") {
                c *= Coef::i();
                continue;
            }
            // rational literal
            size_t slash = p.find('/');
            try {
                Rat r(p);
                r.canonicalize();
                c *= Coef(r);
            } catch (...) {
                throw SyntaxError("bad coefficient '" + p + "' in bracket combination", ln, 1);
            }
            (void)slash;
        }
        out.emplace_back(c, name);
    }
    return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    sc.tab = std::make_unique<SymbolTable>();
    auto* tab = sc.tab.get();
    SectionLines all = collect(text);

    for (auto& [ln, line] : all.header) {
        auto [key, rest] = word(line);
        if (key == "name") {
            sc.name = rest;
        } else if (key == "coords") {
            for (auto& piece : split_top(rest, ',')) {
                auto [cn, pw] = word(piece);
                tab->declare_coord(cn, parse_parity(pw, ln));
            }
        } else {
            throw SyntaxError("unexpected header line '" + key + "'", ln, 1);
        }
    }
    if (sc.name.empty()) throw Error("scenario has no name");

    // --- symbols ---
    int auto_comp = 0;
    for (auto& [ln, line] : all.sections["symbols"]) {
        auto [kind, rest] = word(line);
        if (kind == "field") {
            auto [name, rest2] = word(rest);
            auto [pw, rest3] = word(rest2);
            Parity p = parse_parity(pw, ln);
            uint16_t dep = 0;
            std::string comps;
            for (auto& opt : split_top(rest3, ' ')) {
                if (opt.empty()) continue;
                if (opt.rfind("depends(", 0) == 0 && opt.back() == ')') {
                    for (auto& cn : split_top(opt.substr(8, opt.size() - 9), ','))
                        dep |= uint16_t(1) << tab->info(tab->require(cn)).coord_index;
                } else if (opt.rfind("components(", 0) == 0 && opt.back() == ')') {
                    comps = opt.substr(11, opt.size() - 12);
                } else {
                    throw SyntaxError("unknown field option '" + opt + "'", ln, 1);
                }
            }
            int id = tab->declare_field(name, p, dep);
            if (!comps.empty()) {
                std::array<std::string, 4> names;
                if (comps == "auto") {
                    for (int j = 0; j < 4; ++j)
                        names[j] = name + "_c" + std::to_string(j);
                    ++auto_comp;
                } else {
                    auto parts = split_top(comps, ',');
                    if (parts.size() != 4)
                        throw SyntaxError("components() needs four names", ln, 1);
                    for (int j = 0; j < 4; ++j) names[j] = parts[j];
                }
                const Parity pat[4] = {p, p ^ Parity::Odd, p ^ Parity::Odd, p};
                std::array<int, 4> ids{};
                uint16_t bos = 0;
                for (int ci = 0; ci < tab->coord_count(); ++ci)
                    if (tab->coord_parity(ci) == Parity::Even) bos |= uint16_t(1) << ci;
                for (int j = 0; j < 4; ++j) {
                    auto ex = tab->find(names[j]);
                    ids[j] = ex ? *ex : tab->declare_field(names[j], pat[j], bos);
                }
                tab->set_components(id, ids);
            }
        } else if (kind == "const") {
            auto [name, rest2] = word(rest);
            auto [pw, rest3] = word(rest2);
            bool unit = trim(rest3) == "unit";
            tab->declare_const(name, parse_parity(pw, ln), unit);
        } else {
            throw SyntaxError("unknown symbol kind '" + kind + "'", ln, 1);
        }
    }

    // --- equations ---
    for (auto& [ln, line] : all.sections["equations"]) {
        auto [kind, rest] = word(line);
        if (kind != "eq" && kind != "aux")
            throw SyntaxError("expected 'eq' or 'aux'", ln, 1);
        size_t colon = rest.find(':');
        if (colon == std::string::npos) throw SyntaxError("missing ':' in equation", ln, 1);
        std::string name = trim(rest.substr(0, colon));
        Expr e = parse_expr(rest.substr(colon + 1), tab, ln);
        if (!e.homogeneous_parity())
            throw ParityError("equation " + name + " is not parity-homogeneous");
        sc.sys.names.push_back(name);
        sc.sys.eqs.push_back(std::move(e));
        sc.sys.aux.push_back(kind == "aux");
    }

    // --- linear problem ---
    sc.lp.Mp = SuperMatrix::zero(tab);
    sc.lp.Mm = SuperMatrix::zero(tab);
    for (auto& [ln, line] : all.sections["linear-problem"]) {
        auto [key, rest] = word(line);
        if (key == "form") {
            if (rest == "classical")
                sc.lp.form = ZccForm::Classical;
            else if (rest == "bosonic-e")
                sc.lp.form = ZccForm::BosonicE;
            else if (rest == "fermionic")
                sc.lp.form = ZccForm::Fermionic;
            else
                throw SyntaxError("unknown zcc form '" + rest + "'", ln, 1);
        } else if (key == "frame-parity") {
            auto parts = split_top(rest, ' ');
            std::vector<std::string> ps;
            for (auto& p : parts)
                if (!p.empty()) ps.push_back(p);
            if (ps.size() != 3) throw SyntaxError("frame-parity needs three entries", ln, 1);
            for (int j = 0; j < 3; ++j) sc.lp.frame[j] = parse_parity(ps[j], ln);
        } else if (key == "vector") {
            auto parts = split_top(rest, ',');
            if (parts.size() != 3) throw SyntaxError("vector needs three entries", ln, 1);
            sc.lp.vectors.push_back(
                {parse_expr(parts[0], tab, ln), parse_expr(parts[1], tab, ln),
                 parse_expr(parts[2], tab, ln)});
        } else if (key == "M+" || key == "M-") {
            auto [rowtok, entries] = word(rest);
            if (rowtok.size() < 2 || rowtok.back() != ':')
                throw SyntaxError("expected 'M+ <row>: a, b, c'", ln, 1);
            int r = std::stoi(rowtok.substr(0, rowtok.size() - 1)) - 1;
            auto parts = split_top(entries, ',');
            if (r < 0 || r > 2 || parts.size() != 3)
                throw SyntaxError("matrix row needs three entries", ln, 1);
            SuperMatrix& M = key == "M+" ? sc.lp.Mp : sc.lp.Mm;
            for (int c = 0; c < 3; ++c) M.at(r, c) = parse_expr(parts[c], tab, ln);
        } else {
            throw SyntaxError("unknown linear-problem line '" + key + "'", ln, 1);
        }
    }
    validate_linear_problem(sc.lp);

    // --- algebras ---
    for (auto& [secname, alg] :
         std::initializer_list<std::pair<const char*, AlgebraPresentation*>>{
             {"algebra:nonlinear", &sc.nonlinear}, {"algebra:linear", &sc.linear}}) {
        alg->name = secname;
        std::vector<std::pair<int, std::string>> bracket_lines;
        for (auto& [ln, line] : all.sections[secname]) {
            auto [key, rest] = word(line);
            if (key == "gen") {
                size_t colon = rest.find(':');
                if (colon == std::string::npos)
                    throw SyntaxError("missing ':' in generator", ln, 1);
                std::string name = trim(rest.substr(0, colon));
                alg->basis.push_back(make_vector_field(
                    tab, name, parse_vector_field(rest.substr(colon + 1), tab, ln)));
            } else if (key == "bracket") {
                bracket_lines.emplace_back(ln, rest);
            } else {
                throw SyntaxError("unknown algebra line '" + key + "'", ln, 1);
            }
        }
        for (auto& [ln, rest] : bracket_lines) {
            char open = rest.empty() ? '\0' : rest[0];
            char close = open == '[' ? ']' : '}';
            if (open != '[' && open != '{')
                throw SyntaxError("bracket must start with [ or {", ln, 1);
            size_t end = rest.find(close);
            size_t eq = rest.find('=', end);
            if (end == std::string::npos || eq == std::string::npos)
                throw SyntaxError("malformed bracket line", ln, 1);
            auto names = split_top(rest.substr(1, end - 1), ',');
            if (names.size() != 2) throw SyntaxError("bracket needs two generators", ln, 1);
            TableRel rel;
            rel.i = alg->index_of(names[0]);
            rel.j = alg->index_of(names[1]);
            if (rel.i > rel.j) throw SyntaxError("list brackets with i <= j", ln, 1);
            bool both_odd = alg->basis[rel.i].parity == Parity::Odd &&
                            alg->basis[rel.j].parity == Parity::Odd;
            if (both_odd != (open == '{'))
                throw ParityError("bracket kind does not match generator parities (line " +
                                  std::to_string(ln) + ")");
            for (auto& [c, n] : parse_combo(rest.substr(eq + 1), ln))
                rel.combo.emplace_back(c, alg->index_of(n));
            alg->table.push_back(std::move(rel));
        }
    }

    // --- omega ---
    for (auto& [ln, line] : all.sections["omega"]) {
        auto [key, rest] = word(line);
        if (key != "retain") throw SyntaxError("expected 'retain'", ln, 1);
        for (auto& n : split_top(rest, ',')) sc.omega.retained.push_back(tab->require(n));
    }

    // --- certificates ---
    for (auto& [ln, line] : all.sections["certificates"]) {
        auto [key, rest] = word(line);
        if (key != "zcc") throw SyntaxError("expected 'zcc'", ln, 1);
        auto [rtok, rest2] = word(rest);
        auto [ctok, rest3] = word(rest2);
        if (ctok.empty() || ctok.back() != ':')
            throw SyntaxError("expected 'zcc <r> <c>: ...'", ln, 1);
        int r = std::stoi(rtok) - 1;
        int c = std::stoi(ctok.substr(0, ctok.size() - 1)) - 1;
        EntryCert ec;
        for (auto& piece : split_top(rest3, ';')) {
            size_t at = piece.rfind('@');
            if (at == std::string::npos)
                throw SyntaxError("certificate term needs '(mult) @ eq'", ln, 1);
            Expr mult = parse_expr(piece.substr(0, at), tab, ln);
            std::string eqname = trim(piece.substr(at + 1));
            ec.push_back({std::move(mult), sc.sys.index_of(eqname)});
        }
        sc.cert.entries[{r, c}] = std::move(ec);
    }

    // --- spectral ---
    auto specit = all.sections.find("spectral");
    if (specit != all.sections.end() && !specit->second.empty()) {
        SpectralSpec sp;
        sp.exp_Mp = SuperMatrix::zero(tab);
        sp.exp_Mm = SuperMatrix::zero(tab);
        for (auto& [ln, line] : specit->second) {
            auto [key, rest] = word(line);
            if (key == "insert") {
                auto [gen, rest2] = word(rest);
                auto [kindw, param] = word(rest2);
                sp.gen = gen;
                sp.odd = parse_parity(kindw, ln) == Parity::Odd;
                sp.param = trim(param);
            } else if (key == "expect") {
                auto [mtok, rest2] = word(rest);
                auto [rowtok, entries] = word(rest2);
                int r = std::stoi(rowtok.substr(0, rowtok.size() - 1)) - 1;
                auto parts = split_top(entries, ',');
                if (r < 0 || r > 2 || parts.size() != 3)
                    throw SyntaxError("expect row needs three entries", ln, 1);
                SuperMatrix& M = mtok == "M+" ? sp.exp_Mp : sp.exp_Mm;
                for (int c = 0; c < 3; ++c) M.at(r, c) = parse_expr(parts[c], tab, ln);
                sp.has_expected = true;
            } else if (key == "gauge-degree") {
                sp.gauge_degree = std::stoi(rest);
            } else if (key == "gauge-expect") {
                sp.expect_gauge = rest == "found";
            } else {
                throw SyntaxError("unknown spectral line '" + key + "'", ln, 1);
            }
        }
        sc.spectral = std::move(sp);
    }
    (void)auto_comp;
    return sc;
}

namespace {

std::string render_vf(const SymbolTable* tab, const SuperVectorField& X) {
    std::string out;
    for (auto& [t, c] : X.comp) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*d" + tab->info(t).name;
    }
    return out.empty() ? "0*dxp" : out;
}

std::string render_combo(const AlgebraPresentation& alg, const TableRel& rel) {
    if (rel.combo.empty()) return "0";
    std::string out;
    for (auto& [c, k] : rel.combo) {
        if (!out.empty()) out += " + ";
        std::string cs = c.str();
        if (cs == "1")
            out += alg.basis[k].name;
        else if (cs == "-1")
            out += "-" + alg.basis[k].name;
        else
            out += cs + "*" + alg.basis[k].name;
    }
    return out;
}

}  // namespace

std::string render_scenario(const Scenario& s) {
    const SymbolTable* tab = s.tab.get();
    std::ostringstream o;
    o << "name " << s.name << "\n";
    o << "coords ";
    for (int ci = 0; ci < tab->coord_count(); ++ci) {
        if (ci) o << ", ";
        o << tab->info(tab->coord_id(ci)).name << " "
          << (tab->coord_parity(ci) == Parity::Odd ? "odd" : "even");
    }
    o << "\n\n[symbols]\n";
    std::vector<bool> is_component(tab->size(), false);
    for (int id = 0; id < tab->size(); ++id)
        if (tab->info(id).has_components)
            for (int j = 0; j < 4; ++j) is_component[tab->info(id).components[j]] = true;
    for (int id = 0; id < tab->size(); ++id) {
        const SymbolInfo& si = tab->info(id);
        if (!si.name.empty() && si.name[0] == '_') continue;  // flow internals
        if (si.kind == SymbolInfo::Coord) continue;
        if (is_component[id]) continue;  // declared through components(...)
        if (si.kind == SymbolInfo::Const) {
            o << "const " << si.name << (si.parity == Parity::Odd ? " odd" : " even")
              << (si.unit ? " unit" : "") << "\n";
            continue;
        }
        o << "field " << si.name << (si.parity == Parity::Odd ? " odd" : " even")
          << " depends(";
        bool first = true;
        for (int ci = 0; ci < tab->coord_count(); ++ci)
            if ((si.depends >> ci) & 1) {
                if (!first) o << ",";
                o << tab->info(tab->coord_id(ci)).name;
                first = false;
            }
        o << ")";
        if (si.has_components) {
            o << " components(";
            for (int j = 0; j < 4; ++j)
                o << (j ? "," : "") << tab->info(si.components[j]).name;
            o << ")";
        }
        o << "\n";
    }
    o << "\n[equations]\n";
    for (size_t k = 0; k < s.sys.eqs.size(); ++k)
        o << (s.sys.aux[k] ? "aux " : "eq ") << s.sys.names[k] << ": " << s.sys.eqs[k].str()
          << "\n";
    o << "\n[linear-problem]\n";
    o << "form "
      << (s.lp.form == ZccForm::Classical
              ? "classical"
              : (s.lp.form == ZccForm::BosonicE ? "bosonic-e" : "fermionic"))
      << "\n";
    o << "frame-parity";
    for (int j = 0; j < 3; ++j) o << " " << (s.lp.frame[j] == Parity::Odd ? "odd" : "even");
    o << "\n";
    for (auto& v : s.lp.vectors)
        o << "vector " << v[0].str() << ", " << v[1].str() << ", " << v[2].str() << "\n";
    for (int r = 0; r < 3; ++r)
        o << "M+ " << r + 1 << ": " << s.lp.Mp.at(r, 0).str() << ", " << s.lp.Mp.at(r, 1).str()
          << ", " << s.lp.Mp.at(r, 2).str() << "\n";
    for (int r = 0; r < 3; ++r)
        o << "M- " << r + 1 << ": " << s.lp.Mm.at(r, 0).str() << ", " << s.lp.Mm.at(r, 1).str()
          << ", " << s.lp.Mm.at(r, 2).str() << "\n";
    for (auto& [secname, alg] :
         std::initializer_list<std::pair<const char*, const AlgebraPresentation*>>{
             {"algebra:nonlinear", &s.nonlinear}, {"algebra:linear", &s.linear}}) {
        o << "\n[" << secname << "]\n";
        for (auto& g : alg->basis) o << "gen " << g.name << ": " << render_vf(tab, g) << "\n";
        for (auto& rel : alg->table) {
            bool both_odd = alg->basis[rel.i].parity == Parity::Odd &&
                            alg->basis[rel.j].parity == Parity::Odd;
            o << "bracket " << (both_odd ? "{" : "[") << alg->basis[rel.i].name << ","
              << alg->basis[rel.j].name << (both_odd ? "}" : "]") << " = "
              << render_combo(*alg, rel) << "\n";
        }
    }
    o << "\n[omega]\nretain ";
    for (size_t k = 0; k < s.omega.retained.size(); ++k)
        o << (k ? ", " : "") << tab->info(s.omega.retained[k]).name;
    o << "\n";
    o << "\n[certificates]\n";
    for (auto& [rc, terms] : s.cert.entries) {
        o << "zcc " << rc.first + 1 << " " << rc.second + 1 << ": ";
        for (size_t k = 0; k < terms.size(); ++k) {
            if (k) o << " ; ";
            o << "(" << terms[k].mult.str() << ") @ " << s.sys.names[terms[k].eq];
        }
        o << "\n";
    }
    if (s.spectral) {
        const SpectralSpec& sp = *s.spectral;
        o << "\n[spectral]\n";
        o << "insert " << sp.gen << " " << (sp.odd ? "odd" : "even") << " " << sp.param << "\n";
        if (sp.has_expected) {
            for (int r = 0; r < 3; ++r)
                o << "expect M+ " << r + 1 << ": " << sp.exp_Mp.at(r, 0).str() << ", "
                  << sp.exp_Mp.at(r, 1).str() << ", " << sp.exp_Mp.at(r, 2).str() << "\n";
            for (int r = 0; r < 3; ++r)
                o << "expect M- " << r + 1 << ": " << sp.exp_Mm.at(r, 0).str() << ", "
                  << sp.exp_Mm.at(r, 1).str() << ", " << sp.exp_Mm.at(r, 2).str() << "\n";
        }
        o << "gauge-degree " << sp.gauge_degree << "\n";
        o << "gauge-expect " << (sp.expect_gauge ? "found" : "none") << "\n";
    }
    return o.str();
}

Scenario load_scenario(const std::string& name_or_path) {
    for (auto& n : builtin_scenario_names())
        if (n == name_or_path) return parse_scenario(builtin_scenario_text(n));
    std::ifstream in(name_or_path);
    if (!in) throw UnknownScenario("unknown scenario: " + name_or_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace sgc
