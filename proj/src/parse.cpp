#include "zk/parse.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "zk/error.hpp"

namespace zk {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line, col;

    Cursor(const std::string& t, int base_line, int base_col)
        : text(t), line(base_line), col(base_col) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }

    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }

    void advance() {
        if (done()) return;
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool eat(char c) {
        skip_ws();
        if (peek() != c) return false;
        advance();
        return true;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    std::string ident() {
        skip_ws();
        std::string out;
        while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            out += peek();
            advance();
        }
        return out;
    }

    Int integer() {
        skip_ws();
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            advance();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        std::string digits;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += peek();
            advance();
        }
        Int v(digits);
        return negative ? Int(-v) : v;
    }

    long small_int(const std::string& what, long lo, long hi) {
        Int v = integer();
        if (v < lo || v > hi) fail(what + " out of range");
        return v.get_si();
    }
};

// --- Laurent polynomial expressions -------------------------------------

LaurentPoly laurent_expr(Cursor& c, int m);

int laurent_var(Cursor& c, int m) {
    // returns -1 for X, j in [0, m) for Y{j+1}
    std::string name = c.ident();
    if (name == "X") return -1;
    if (name.size() >= 2 && name[0] == 'Y') {
        std::string idx = name.substr(1);
        if (!idx.empty() && idx.find_first_not_of("0123456789") == std::string::npos) {
            long j = std::stol(idx);
            if (j < 1 || j > m) c.fail("variable " + name + " out of range for m = " + std::to_string(m));
            return static_cast<int>(j - 1);
        }
    }
    c.fail("unknown variable '" + name + "'");
}

LaurentPoly laurent_atom(Cursor& c, int m) {
    c.skip_ws();
    char ch = c.peek();
    if (ch == '(') {
        c.advance();
        LaurentPoly inner = laurent_expr(c, m);
        c.expect(')');
        // exponent on a parenthesized expression: nonnegative only
        if (c.eat('^')) {
            long e = c.small_int("exponent", 0, 64);
            inner = inner.pow(static_cast<unsigned>(e));
        }
        return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        Int v = c.integer();
        LaurentPoly out = LaurentPoly::constant(m, Rat(v));
        if (c.eat('^')) {
            long e = c.small_int("exponent", 0, 64);
            Rat pw = rat_pow(Rat(v), e);
            out = LaurentPoly::constant(m, pw);
        }
        return out;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
        int var = laurent_var(c, m);
        int e = 1;
        if (c.eat('^')) e = static_cast<int>(c.small_int("exponent", -64, 64));
        std::vector<int> y(m, 0);
        int x = 0;
        if (var < 0)
            x = e;
        else
            y[static_cast<std::size_t>(var)] = e;
        return LaurentPoly::monomial(m, Rat(1), x, std::move(y));
    }
    c.fail("expected a term");
}

LaurentPoly laurent_factor(Cursor& c, int m) {
    c.skip_ws();
    bool negative = false;
    while (c.peek() == '-' || c.peek() == '+') {
        if (c.peek() == '-') negative = !negative;
        c.advance();
        c.skip_ws();
    }
    LaurentPoly out = laurent_atom(c, m);
    return negative ? -out : out;
}

LaurentPoly laurent_term(Cursor& c, int m) {
    LaurentPoly out = laurent_factor(c, m);
    while (c.eat('*')) out = out * laurent_factor(c, m);
    return out;
}

LaurentPoly laurent_expr(Cursor& c, int m) {
    LaurentPoly out = laurent_term(c, m);
    for (;;) {
        c.skip_ws();
        char ch = c.peek();
        if (ch == '+') {
            c.advance();
            out = out + laurent_term(c, m);
        } else if (ch == '-') {
            c.advance();
            out = out - laurent_term(c, m);
        } else {
            break;
        }
    }
    return out;
}

// --- cyclotomic denominators ---------------------------------------------

CycloFactor cyclo_factor(Cursor& c, int m) {
    c.expect('(');
    c.skip_ws();
    Int one = c.integer();
    if (one != 1) c.fail("cyclotomic factor must start with 1");
    c.expect('-');
    CycloFactor fac;
    fac.b.assign(m, 0);
    bool saw = false;
    for (;;) {
        c.skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(c.peek()))) break;
        int var = laurent_var(c, m);
        int e = 1;
        if (c.eat('^')) e = static_cast<int>(c.small_int("exponent", -64, 64));
        if (var < 0)
            fac.a += e;
        else
            fac.b[static_cast<std::size_t>(var)] += e;
        saw = true;
        if (!c.eat('*')) break;
    }
    if (!saw) c.fail("cyclotomic factor needs a monomial after '1 -'");
    c.expect(')');
    if (fac.is_degenerate())
        throw Error(ErrKind::DegenerateFactor,
                    "degenerate cyclotomic factor (a, b) = 0 at line " + std::to_string(c.line));
    return fac;
}

}  // namespace

LaurentPoly parse_laurent(const std::string& text, int m, int base_line, int base_col) {
    Cursor c(text, base_line, base_col);
    LaurentPoly out = laurent_expr(c, m);
    c.skip_ws();
    if (!c.done()) c.fail("unexpected trailing input");
    return out;
}

CycloRational parse_cyclo(const std::string& text, int m, int base_line, int base_col) {
    // split at the top-level '/'
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == '/' && depth == 0) {
            if (slash != std::string::npos)
                throw ParseError(base_line, base_col, "more than one top-level '/'");
            slash = i;
        }
    }
    if (slash == std::string::npos)
        return CycloRational::from_poly(parse_laurent(text, m, base_line, base_col));

    LaurentPoly num = parse_laurent(text.substr(0, slash), m, base_line, base_col);
    Cursor c(text, base_line, base_col);
    while (c.pos < slash + 1) c.advance();
    c.expect('(');
    FactorMultiset den;
    for (;;) {
        CycloFactor fac = cyclo_factor(c, m);
        int mult = 1;
        if (c.eat('^')) mult = static_cast<int>(c.small_int("multiplicity", 1, 64));
        den[fac] += mult;
        if (!c.eat('*')) break;
    }
    c.expect(')');
    c.skip_ws();
    if (!c.done()) c.fail("unexpected trailing input after the denominator");
    return CycloRational(std::move(num), std::move(den));
}

// --- varieties -------------------------------------------------------------

namespace {

IntPoly intpoly_expr(Cursor& c, const std::map<std::string, int>& vars, int n);

IntPoly intpoly_atom(Cursor& c, const std::map<std::string, int>& vars, int n) {
    c.skip_ws();
    char ch = c.peek();
    if (ch == '(') {
        c.advance();
        IntPoly inner = intpoly_expr(c, vars, n);
        c.expect(')');
        if (c.eat('^')) inner = inner.pow(static_cast<unsigned>(c.small_int("exponent", 0, 64)));
        return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        Int v = c.integer();
        IntPoly out = IntPoly::constant(n, v);
        if (c.eat('^')) out = out.pow(static_cast<unsigned>(c.small_int("exponent", 0, 64)));
        return out;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string name = c.ident();
        auto it = vars.find(name);
        if (it == vars.end()) c.fail("undeclared variable '" + name + "'");
        IntPoly out = IntPoly::variable(n, it->second);
        if (c.eat('^')) out = out.pow(static_cast<unsigned>(c.small_int("exponent", 0, 64)));
        return out;
    }
    c.fail("expected a term");
}

IntPoly intpoly_factor(Cursor& c, const std::map<std::string, int>& vars, int n) {
    c.skip_ws();
    bool negative = false;
    while (c.peek() == '-' || c.peek() == '+') {
        if (c.peek() == '-') negative = !negative;
        c.advance();
        c.skip_ws();
    }
    IntPoly out = intpoly_atom(c, vars, n);
    return negative ? -out : out;
}

IntPoly intpoly_term(Cursor& c, const std::map<std::string, int>& vars, int n) {
    IntPoly out = intpoly_factor(c, vars, n);
    while (c.eat('*')) out = out * intpoly_factor(c, vars, n);
    return out;
}

IntPoly intpoly_expr(Cursor& c, const std::map<std::string, int>& vars, int n) {
    IntPoly out = intpoly_term(c, vars, n);
    for (;;) {
        c.skip_ws();
        char ch = c.peek();
        if (ch == '+') {
            c.advance();
            out = out + intpoly_term(c, vars, n);
        } else if (ch == '-') {
            c.advance();
            out = out - intpoly_term(c, vars, n);
        } else {
            break;
        }
    }
    return out;
}

ConstructibleSet inline_system(Cursor& c) {
    // "vars x,y ; eq <poly> ; ineq <poly> ; ..." (the keyword vars is consumed)
    std::map<std::string, int> vars;
    std::vector<std::string> names;
    for (;;) {
        std::string name = c.ident();
        if (name.empty()) c.fail("expected a variable name");
        if (vars.count(name)) c.fail("duplicate variable '" + name + "'");
        vars[name] = static_cast<int>(names.size());
        names.push_back(name);
        if (!c.eat(',')) break;
    }
    const int n = static_cast<int>(names.size());
    AffineSystem sys;
    sys.nvars = n;
    while (c.eat(';')) {
        std::string kw = c.ident();
        if (kw == "eq")
            sys.equations.push_back(intpoly_expr(c, vars, n));
        else if (kw == "ineq")
            sys.inequations.push_back(intpoly_expr(c, vars, n));
        else
            c.fail("expected 'eq' or 'ineq', got '" + kw + "'");
    }
    c.skip_ws();
    if (!c.done()) c.fail("unexpected trailing input in the variety");
    return cs_from_system(std::move(sys));
}

ConstructibleSet builtin_expr(Cursor& c) {
    std::string name = c.ident();
    if (name == "point") return cs_point();
    if (name == "affine" || name == "torus") {
        c.expect('(');
        long n = c.small_int("dimension", 0, 16);
        c.expect(')');
        return name == "affine" ? cs_affine(static_cast<int>(n)) : cs_torus(static_cast<int>(n));
    }
    if (name == "product" || name == "union" || name == "difference") {
        c.expect('(');
        std::vector<ConstructibleSet> args;
        args.push_back(builtin_expr(c));
        while (c.eat(',')) args.push_back(builtin_expr(c));
        c.expect(')');
        if (name == "difference") {
            if (args.size() != 2)
                throw Error(ErrKind::ArityError, "difference takes exactly two arguments (line " +
                                                     std::to_string(c.line) + ")");
            return cs_difference(args[0], args[1]);
        }
        if (args.size() < 2)
            throw Error(ErrKind::ArityError,
                        name + " takes at least two arguments (line " + std::to_string(c.line) + ")");
        ConstructibleSet acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i)
            acc = name == "product" ? cs_product(acc, args[i]) : cs_disjoint_union(acc, args[i]);
        return acc;
    }
    c.fail("unknown variety '" + name + "'");
}

}  // namespace

ConstructibleSet parse_constructible(const std::string& text, int base_line, int base_col) {
    Cursor c(text, base_line, base_col);
    c.skip_ws();
    // distinguish the inline form by its leading keyword
    Cursor probe = c;
    std::string first = probe.ident();
    if (first == "vars") {
        c.ident();  // consume "vars"
        return inline_system(c);
    }
    ConstructibleSet out = builtin_expr(c);
    c.skip_ws();
    if (!c.done()) c.fail("unexpected trailing input in the variety");
    return out;
}

// --- formula files -----------------------------------------------------------

namespace {

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    std::string out = hash == std::string::npos ? line : line.substr(0, hash);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
}

std::pair<std::string, std::string> keyword_rest(const std::string& line, int lineno) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::string kw = line.substr(start, i - start);
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (kw.empty()) throw ParseError(lineno, 1, "empty directive");
    return {kw, line.substr(i)};
}

}  // namespace

LocalMapFormula parse_formula_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    int m = -1;
    std::set<std::uint64_t> excluded;
    std::vector<FormulaTerm> terms;

    struct PendingTerm {
        std::optional<ConstructibleSet> set;
        std::optional<CycloRational> w;
        std::optional<long long> chi;
        int line = 0;
    };
    std::optional<PendingTerm> pending;

    auto flush = [&]() {
        if (!pending) return;
        if (!pending->set) throw ParseError(pending->line, 1, "term lacks a variety");
        if (!pending->w) throw ParseError(pending->line, 1, "term lacks a W");
        ConstructibleSet set = std::move(*pending->set);
        if (pending->chi) set.user_chi = *pending->chi;
        terms.push_back(FormulaTerm{std::move(set), std::move(*pending->w)});
        pending.reset();
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto [kw, rest] = keyword_rest(line, lineno);

        if (kw == "m") {
            if (m >= 0) throw ParseError(lineno, 1, "duplicate m directive");
            Cursor c(rest, lineno, 1);
            m = static_cast<int>(c.small_int("m", 0, 16));
        } else if (kw == "exclude") {
            Cursor c(rest, lineno, 1);
            c.skip_ws();
            while (!c.done()) {
                excluded.insert(static_cast<std::uint64_t>(c.small_int("prime", 2, 1'000'000'000)));
                c.skip_ws();
            }
        } else if (kw == "term") {
            flush();
            pending = PendingTerm{};
            pending->line = lineno;
        } else if (kw == "variety") {
            if (!pending) throw ParseError(lineno, 1, "variety outside a term block");
            pending->set = parse_constructible(rest, lineno, 1);
        } else if (kw == "chi") {
            if (!pending) throw ParseError(lineno, 1, "chi outside a term block");
            Cursor c(rest, lineno, 1);
            pending->chi = c.small_int("chi", -1'000'000'000, 1'000'000'000);
        } else if (kw == "W") {
            if (!pending) throw ParseError(lineno, 1, "W outside a term block");
            if (m < 0) throw ParseError(lineno, 1, "W before the m directive");
            pending->w = parse_cyclo(rest, m, lineno, 1);
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + kw + "'");
        }
    }
    flush();
    if (m < 0) throw ParseError(1, 1, "missing m directive");
    return LocalMapFormula(std::move(terms), m, std::move(excluded));
}

LocalMapFormula parse_formula_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::ParseError, "cannot open formula file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_formula_text(buf.str());
}

AlgebraPresentation parse_algebra_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    AlgebraPresentation alg;
    bool saw_d = false;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto [kw, rest] = keyword_rest(line, lineno);

        if (kw == "d") {
            Cursor c(rest, lineno, 1);
            alg.d = static_cast<int>(c.small_int("d", 1, 8));
            alg.sc.assign(static_cast<std::size_t>(alg.d) * alg.d * alg.d, 0);
            saw_d = true;
        } else if (kw == "mode") {
            Cursor c(rest, lineno, 1);
            std::string mode = c.ident();
            if (mode == "subalgebra")
                alg.mode = ClosureMode::Subalgebra;
            else if (mode == "ideal")
                alg.mode = ClosureMode::Ideal;
            else if (mode == "submodule")
                alg.mode = ClosureMode::Submodule;
            else
                throw ParseError(lineno, 1, "unknown mode '" + mode + "'");
        } else if (kw == "prod") {
            if (!saw_d) throw ParseError(lineno, 1, "prod before d");
            Cursor c(rest, lineno, 1);
            long i = c.small_int("basis index", 1, alg.d);
            long j = c.small_int("basis index", 1, alg.d);
            c.skip_ws();
            if (!(c.eat('-') && c.eat('>'))) c.fail("expected '->'");
            for (int k = 0; k < alg.d; ++k) {
                long v = c.small_int("structure constant", -1'000'000, 1'000'000);
                alg.sc[((i - 1) * alg.d + (j - 1)) * alg.d + k] = v;
            }
        } else if (kw == "gen") {
            if (!saw_d) throw ParseError(lineno, 1, "gen before d");
            Cursor c(rest, lineno, 1);
            std::vector<long long> g;
            for (int k = 0; k < alg.d * alg.d; ++k)
                g.push_back(c.small_int("generator entry", -1'000'000, 1'000'000));
            alg.generators.push_back(std::move(g));
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_d) throw ParseError(1, 1, "missing d directive");
    return alg;
}

AlgebraPresentation parse_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::ParseError, "cannot open algebra file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra_text(buf.str());
}

}  // namespace zk
