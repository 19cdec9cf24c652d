#include "sgc/parser.hpp"

#include <cctype>

namespace sgc {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line;

    Lexer(const std::string& text, int ln) : s(text), line(ln) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg, line, int(pos) + 1);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(uint8_t(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool peek_ident() { return std::isalpha(uint8_t(peek())) || peek() == '_'; }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(uint8_t(s[pos])) || s[pos] == '_')) ++pos;
        if (pos == start) fail("expected identifier");
        return s.substr(start, pos - start);
    }

    Rat number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(uint8_t(s[pos]))) ++pos;
        if (pos == start) fail("expected number");
        std::string num = s.substr(start, pos - start);
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit(uint8_t(s[pos]))) ++pos;
            if (pos == dstart) fail("expected denominator");
            Rat r(num + "/" + s.substr(dstart, pos - dstart));
            r.canonicalize();
            return r;
        }
        return Rat(num);
    }

    int exponent() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(uint8_t(s[pos]))) ++pos;
        if (pos == start) fail("expected integer exponent");
        int v = std::stoi(s.substr(start, pos - start));
        return neg ? -v : v;
    }
};

struct Parser {
    Lexer lx;
    const SymbolTable* tab;

    Parser(const std::string& text, const SymbolTable* t, int line) : lx(text, line), tab(t) {}

    Expr parse_sum() {
        bool neg = false;
        if (lx.eat('-')) neg = true;
        Expr acc = parse_product();
        if (neg) acc = -acc;
        while (true) {
            if (lx.eat('+'))
                acc = acc + parse_product();
            else if (lx.eat('-'))
                acc = acc - parse_product();
            else
                return acc;
        }
    }

    Expr parse_product() {
        Expr acc = parse_power();
        while (lx.eat('*')) acc = acc * parse_power();
        return acc;
    }

    Expr parse_power() {
        Expr a = parse_atom();
        if (lx.eat('^')) return expr_int_pow(a, lx.exponent());
        return a;
    }

    Expr parse_atom() {
        char c = lx.peek();
        if (c == '(') {
            lx.expect('(');
            Expr e = parse_sum();
            lx.expect(')');
            return e;
        }
        if (c == '-') {
            lx.expect('-');
            return -parse_atom();
        }
        if (std::isdigit(uint8_t(c))) return Expr::constant(tab, Coef(lx.number()));
        if (!lx.peek_ident()) lx.fail("unexpected character");
        std::string name = lx.ident();
        if (name == "I") return Expr::constant(tab, Coef::i());
        if (name == "exp" || name == "sin" || name == "cos") {
            lx.expect('(');
            Expr a = parse_sum();
            lx.expect(')');
            FnSym fn = name == "exp" ? FnSym::exp() : (name == "sin" ? FnSym::sin() : FnSym::cos());
            return Expr::func(tab, fn, a);
        }
        if (name == "Dp" || name == "Dm" || name == "Jp" || name == "Jm" || name == "dxp" ||
            name == "dxm" || name == "dtp" || name == "dtm") {
            if (lx.peek() == '(') {
                lx.expect('(');
                Expr a = parse_sum();
                lx.expect(')');
                return apply_op(a, superop_from_name(name));
            }
            // fall through: a bare dX token is not an expression
            lx.fail("operator " + name + " needs an argument");
        }
        auto id = tab->find(name);
        if (!id) throw UndeclaredSymbol("undeclared symbol: " + name + " (line " +
                                        std::to_string(lx.line) + ")");
        if (lx.peek() == '(') lx.fail(name + " is not a function");
        return Expr::symbol(tab, *id);
    }
};

// split "a + b - c" at depth 0 into signed chunks
std::vector<std::pair<int, std::string>> split_top(const std::string& s) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0, sign = 1;
    std::string cur;
    auto blank = [](const std::string& t) {
        return t.find_first_not_of(" \t") == std::string::npos;
    };
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-')) {
            size_t j = i;
            while (j > 0 && std::isspace(uint8_t(s[j - 1]))) --j;
            bool after_op =
                j > 0 && (s[j - 1] == '^' || s[j - 1] == '*' || s[j - 1] == '+' || s[j - 1] == '-');
            if (blank(cur)) {  // leading sign
                if (c == '-') sign = -sign;
                continue;
            }
            if (!after_op) {
                out.emplace_back(sign, cur);
                cur.clear();
                sign = (c == '-') ? -1 : 1;
                continue;
            }
        }
        cur += c;
    }
    out.emplace_back(sign, cur);
    return out;
}

}  // namespace

Expr parse_expr(const std::string& text, const SymbolTable* tab, int line) {
    Parser p(text, tab, line);
    Expr e = p.parse_sum();
    if (!p.lx.done()) p.lx.fail("trailing input");
    return e;
}

std::map<int, Expr> parse_vector_field(const std::string& text, const SymbolTable* tab,
                                       int line) {
    std::map<int, Expr> comps;
    for (auto& [sign, chunk] : split_top(text)) {
        // the last '*'-separated factor at depth 0 is the direction token
        int depth = 0;
        size_t cut = std::string::npos;
        for (size_t i = 0; i < chunk.size(); ++i) {
            if (chunk[i] == '(') ++depth;
            if (chunk[i] == ')') --depth;
            if (depth == 0 && chunk[i] == '*') cut = i;
        }
        std::string coef_text = cut == std::string::npos ? "1" : chunk.substr(0, cut);
        std::string dir = chunk.substr(cut == std::string::npos ? 0 : cut + 1);
        // trim
        auto trim = [](std::string& t) {
            size_t a = t.find_first_not_of(" \t");
            size_t b = t.find_last_not_of(" \t");
            t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
        };
        trim(dir);
        if (dir.size() < 2 || dir[0] != 'd')
            throw SyntaxError("vector field chunk must end in d<target>: " + chunk, line, 1);
        int target = tab->require(dir.substr(1));
        Expr coef = parse_expr(coef_text, tab, line);
        if (sign < 0) coef = -coef;
        auto it = comps.find(target);
        if (it == comps.end())
            comps.emplace(target, coef);
        else
            it->second = it->second + coef;
    }
    for (auto it = comps.begin(); it != comps.end();)
        it = it->second.is_structural_zero() ? comps.erase(it) : std::next(it);
    return comps;
}

}  // namespace sgc
