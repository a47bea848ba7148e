#include "hyperlift/lang.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "hyperlift/error.hpp"

namespace hyperlift {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Int, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int col = 1;
};

std::vector<Token> tokenize(std::string_view src) {
    static const char* const kTwoChar[] = {":=", "..", "[]", "->", "<=", ">=", "==", "!=", "&&", "||"};
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::SyntaxError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    };

    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(i, j - i));
            if (t.text.size() > 15) fail("integer literal too large");
            t.value = std::stoll(t.text);
            advance(j - i);
        } else {
            t.kind = Tok::Sym;
            for (const char* two : kTwoChar) {
                if (src.substr(i, 2) == two) {
                    t.text = two;
                    break;
                }
            }
            if (t.text.empty()) {
                static const std::string kOne = ":;{}(),+-*<>=!";
                if (kOne.find(c) == std::string::npos) fail(std::string("unexpected character '") + c + "'");
                t.text = std::string(1, c);
            }
            advance(t.text.size());
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

const std::set<std::string, std::less<>> kKeywords = {
    "var", "low", "lowin", "lowout", "skip", "assume", "havoc", "if", "else", "while",
    "true", "false", "rel", "in", "and", "or", "not"};

// ---------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    ProgramFile program() {
        std::vector<StateSpace::Variable> vars;
        std::vector<std::string> low, low_in, low_out;
        while (peek().kind == Tok::Ident &&
               (peek().text == "var" || peek().text == "low" || peek().text == "lowin" || peek().text == "lowout")) {
            const std::string kw = take().text;
            if (kw == "var") {
                StateSpace::Variable v;
                v.name = identifier();
                expect(":");
                v.lo = signed_int();
                expect("..");
                v.hi = signed_int();
                expect(";");
                for (const auto& w : vars) {
                    if (w.name == v.name) fail_at(prev(), "variable '" + v.name + "' declared twice");
                }
                if (v.lo > v.hi) fail_at(prev(), "empty range for '" + v.name + "'");
                vars.push_back(std::move(v));
            } else {
                auto& list = kw == "low" ? low : kw == "lowin" ? low_in : low_out;
                do {
                    list.push_back(identifier());
                } while (accept(","));
                expect(";");
            }
        }
        if (vars.empty()) fail_at(peek(), "expected at least one `var` declaration");
        for (const auto& v : vars) declared_.insert(v.name);
        for (const auto* list : {&low, &low_in, &low_out}) {
            for (const auto& name : *list) {
                if (!declared_.count(name)) {
                    throw Error(ErrorKind::UndeclaredVariable, "low variable '" + name + "' is not declared");
                }
            }
        }

        ProgramFile p{StateSpace(std::move(vars)), std::move(low), std::move(low_in), std::move(low_out), {}};
        p.body = statement();
        if (peek().kind != Tok::End) fail_at(peek(), "unexpected '" + peek().text + "' after program");
        return p;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool is_sym(std::string_view s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
    bool is_kw(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }
    bool accept(std::string_view s) {
        if (is_sym(s)) {
            take();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
        throw Error(ErrorKind::SyntaxError, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
    }
    void expect(std::string_view s) {
        if (!accept(s)) {
            const Token& t = peek();
            fail_at(t, "expected '" + std::string(s) + "' but found " +
                           (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'"));
        }
    }
    void expect_kw(std::string_view s) {
        if (!is_kw(s)) fail_at(peek(), "expected '" + std::string(s) + "'");
        take();
    }
    std::string identifier() {
        const Token& t = peek();
        if (t.kind != Tok::Ident || kKeywords.count(t.text)) fail_at(t, "expected identifier");
        return take().text;
    }
    std::string variable_ref() {
        const Token& t = peek();
        std::string name = identifier();
        if (!declared_.count(name)) {
            throw Error(ErrorKind::UndeclaredVariable, std::to_string(t.line) + ":" + std::to_string(t.col) +
                                                           ": '" + name + "' is not declared");
        }
        return name;
    }
    std::int64_t signed_int() {
        const bool neg = accept("-");
        if (peek().kind != Tok::Int) fail_at(peek(), "expected integer");
        const std::int64_t v = take().value;
        return neg ? -v : v;
    }

    // stmt := seq ('[]' stmt)?
    Ast statement() {
        Ast left = sequence();
        if (accept("[]")) return Ast::choice(std::move(left), statement());
        return left;
    }

    bool at_statement_end() const { return peek().kind == Tok::End || is_sym("}") || is_sym(")") || is_sym("[]"); }

    // seq := prim (';' seq?)?
    Ast sequence() {
        Ast left = primary_statement();
        if (accept(";")) {
            if (at_statement_end()) return left;
            return Ast::seq(std::move(left), sequence());
        }
        return left;
    }

    Ast primary_statement() {
        const Token& t = peek();
        if (accept("(")) {
            Ast inner = statement();
            expect(")");
            return inner;
        }
        if (t.kind != Tok::Ident) fail_at(t, "expected a statement");
        if (is_kw("skip")) {
            take();
            return Ast::skip();
        }
        if (is_kw("assume")) {
            take();
            return Ast::make_atom(AssumeB{bool_expr()});
        }
        if (is_kw("havoc")) {
            take();
            return Ast::make_atom(Havoc{variable_ref()});
        }
        if (is_kw("if")) {
            take();
            BoolExpr b = bool_expr();
            Ast then_branch = block();
            Ast else_branch = Ast::skip();
            if (is_kw("else")) {
                take();
                else_branch = block();
            }
            return Ast::if_else(std::move(b), std::move(then_branch), std::move(else_branch));
        }
        if (is_kw("while")) {
            take();
            BoolExpr b = bool_expr();
            return Ast::while_loop(std::move(b), block());
        }
        if (is_kw("rel")) {
            take();
            return Ast::make_atom(rel_literal());
        }
        std::string name = variable_ref();
        if (accept(":=")) return Ast::make_atom(Assign{std::move(name), int_expr()});
        if (accept(":")) {
            expect_kw("in");
            IntExpr lo = int_expr();
            expect("..");
            IntExpr hi = int_expr();
            return Ast::make_atom(NondetAssign{std::move(name), std::move(lo), std::move(hi)});
        }
        fail_at(peek(), "expected ':=' or ':in' after '" + name + "'");
    }

    Ast block() {
        expect("{");
        if (accept("}")) return Ast::skip();
        Ast c = statement();
        expect("}");
        return c;
    }

    Assignment state_literal() {
        expect("{");
        Assignment a;
        if (!is_sym("}")) {
            do {
                std::string name = variable_ref();
                expect("=");
                a[name] = signed_int();
            } while (accept(","));
        }
        expect("}");
        return a;
    }

    RelLiteral rel_literal() {
        RelLiteral r;
        expect("{");
        if (!is_sym("}")) {
            do {
                Assignment from = state_literal();
                expect("->");
                Assignment to = state_literal();
                r.pairs.emplace_back(std::move(from), std::move(to));
            } while (accept(","));
        }
        expect("}");
        return r;
    }

    // Boolean expressions: or < and < not < primary.
    BoolExpr bool_expr() {
        BoolExpr left = bool_and();
        while (accept("||") || (is_kw("or") && (take(), true))) left = BoolExpr::either(std::move(left), bool_and());
        return left;
    }
    BoolExpr bool_and() {
        BoolExpr left = bool_not();
        while (accept("&&") || (is_kw("and") && (take(), true))) left = BoolExpr::both(std::move(left), bool_not());
        return left;
    }
    BoolExpr bool_not() {
        if (accept("!") || (is_kw("not") && (take(), true))) return BoolExpr::negation(bool_not());
        return bool_primary();
    }
    static bool is_cmp(const Token& t) {
        return t.kind == Tok::Sym && (t.text == "<" || t.text == "<=" || t.text == ">" || t.text == ">=" ||
                                      t.text == "=" || t.text == "==" || t.text == "!=");
    }
    static bool is_arith(const Token& t) {
        return t.kind == Tok::Sym && (t.text == "+" || t.text == "-" || t.text == "*");
    }
    BoolExpr bool_primary() {
        if (is_kw("true")) {
            take();
            return BoolExpr::constant(true);
        }
        if (is_kw("false")) {
            take();
            return BoolExpr::constant(false);
        }
        if (is_sym("(")) {
            // Either a parenthesised condition or a comparison whose left
            // operand starts with '('.
            const std::size_t saved = pos_;
            try {
                take();
                BoolExpr inner = bool_expr();
                expect(")");
                if (!is_cmp(peek()) && !is_arith(peek())) return inner;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SyntaxError) throw;
            }
            pos_ = saved;
        }
        IntExpr a = int_expr();
        if (!is_cmp(peek())) fail_at(peek(), "expected comparison operator");
        const std::string op = take().text;
        IntExpr b = int_expr();
        CmpOp c = op == "<"    ? CmpOp::Lt
                  : op == "<=" ? CmpOp::Le
                  : op == ">"  ? CmpOp::Gt
                  : op == ">=" ? CmpOp::Ge
                  : op == "!=" ? CmpOp::Ne
                               : CmpOp::Eq;
        return BoolExpr::compare(c, std::move(a), std::move(b));
    }

    // Integer expressions: additive < multiplicative < unary.
    IntExpr int_expr() {
        IntExpr left = int_term();
        for (;;) {
            if (accept("+")) {
                left = IntExpr::binary(IntExpr::Op::Add, std::move(left), int_term());
            } else if (accept("-")) {
                left = IntExpr::binary(IntExpr::Op::Sub, std::move(left), int_term());
            } else {
                return left;
            }
        }
    }
    IntExpr int_term() {
        IntExpr left = int_unary();
        while (accept("*")) left = IntExpr::binary(IntExpr::Op::Mul, std::move(left), int_unary());
        return left;
    }
    IntExpr int_unary() {
        if (accept("-")) {
            if (peek().kind == Tok::Int) return IntExpr::constant(-take().value);
            return IntExpr::negate(int_unary());
        }
        if (peek().kind == Tok::Int) return IntExpr::constant(take().value);
        if (accept("(")) {
            IntExpr e = int_expr();
            expect(")");
            return e;
        }
        if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) return IntExpr::variable(variable_ref());
        fail_at(peek(), peek().kind == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string, std::less<>> declared_;
};

// ---------------------------------------------------------------- printer

int int_prec(const IntExpr& e) {
    switch (e.op) {
    case IntExpr::Op::Add:
    case IntExpr::Op::Sub: return 1;
    case IntExpr::Op::Mul: return 2;
    case IntExpr::Op::Neg: return 3;
    default: return e.value < 0 ? 3 : 4;
    }
}

void print_int(std::ostream& os, const IntExpr& e, int min_prec) {
    const int p = int_prec(e);
    const bool paren = p < min_prec;
    if (paren) os << '(';
    switch (e.op) {
    case IntExpr::Op::Const: os << e.value; break;
    case IntExpr::Op::Var: os << e.var; break;
    case IntExpr::Op::Neg:
        os << "-(";
        print_int(os, e.args[0], 0);
        os << ')';
        break;
    default: {
        const char* sym = e.op == IntExpr::Op::Add ? " + " : e.op == IntExpr::Op::Sub ? " - " : " * ";
        print_int(os, e.args[0], p);
        os << sym;
        print_int(os, e.args[1], p + 1);
    }
    }
    if (paren) os << ')';
}

const char* cmp_text(CmpOp c) {
    switch (c) {
    case CmpOp::Eq: return " = ";
    case CmpOp::Ne: return " != ";
    case CmpOp::Lt: return " < ";
    case CmpOp::Le: return " <= ";
    case CmpOp::Gt: return " > ";
    case CmpOp::Ge: return " >= ";
    }
    return " ? ";
}

int bool_prec(const BoolExpr& b) {
    switch (b.op) {
    case BoolExpr::Op::Or: return 1;
    case BoolExpr::Op::And: return 2;
    case BoolExpr::Op::Not: return 3;
    default: return 4;
    }
}

void print_bool(std::ostream& os, const BoolExpr& b, int min_prec) {
    const int p = bool_prec(b);
    const bool paren = p < min_prec;
    if (paren) os << '(';
    switch (b.op) {
    case BoolExpr::Op::True: os << "true"; break;
    case BoolExpr::Op::False: os << "false"; break;
    case BoolExpr::Op::Cmp:
        print_int(os, b.operands[0], 0);
        os << cmp_text(b.cmp);
        print_int(os, b.operands[1], 0);
        break;
    case BoolExpr::Op::Not:
        os << '!';
        print_bool(os, b.args[0], 3);
        break;
    default:
        print_bool(os, b.args[0], p);
        os << (b.op == BoolExpr::Op::And ? " && " : " || ");
        print_bool(os, b.args[1], p + 1);
    }
    if (paren) os << ')';
}

void print_assignment(std::ostream& os, const Assignment& a) {
    os << '{';
    bool first = true;
    for (const auto& [k, v] : a) {
        if (!first) os << ',';
        first = false;
        os << k << '=' << v;
    }
    os << '}';
}

void print_atom(std::ostream& os, const AtomDef& a) {
    std::visit(
        [&](const auto& atom) {
            using T = std::decay_t<decltype(atom)>;
            if constexpr (std::is_same_v<T, Assign>) {
                os << atom.var << " := ";
                print_int(os, atom.value, 0);
            } else if constexpr (std::is_same_v<T, AssumeB>) {
                os << "assume ";
                print_bool(os, atom.cond, 0);
            } else if constexpr (std::is_same_v<T, NondetAssign>) {
                os << atom.var << " :in ";
                print_int(os, atom.lo, 0);
                os << "..";
                print_int(os, atom.hi, 0);
            } else if constexpr (std::is_same_v<T, Havoc>) {
                os << "havoc " << atom.var;
            } else {
                os << "rel {";
                for (std::size_t i = 0; i < atom.pairs.size(); ++i) {
                    if (i) os << ", ";
                    print_assignment(os, atom.pairs[i].first);
                    os << " -> ";
                    print_assignment(os, atom.pairs[i].second);
                }
                os << '}';
            }
        },
        a);
}

int stmt_prec(const Ast& c) {
    switch (c.kind) {
    case Ast::Kind::Choice: return 1;
    case Ast::Kind::Seq: return 2;
    default: return 3;
    }
}

void print_stmt(std::ostream& os, const Ast& c, int min_prec, int indent);

void print_block(std::ostream& os, const Ast& c, int indent) {
    os << "{\n" << std::string(static_cast<std::size_t>(indent + 2), ' ');
    print_stmt(os, c, 0, indent + 2);
    os << '\n' << std::string(static_cast<std::size_t>(indent), ' ') << '}';
}

void print_stmt(std::ostream& os, const Ast& c, int min_prec, int indent) {
    const int p = stmt_prec(c);
    const bool paren = p < min_prec;
    if (paren) os << '(';
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    switch (c.kind) {
    case Ast::Kind::Skip: os << "skip"; break;
    case Ast::Kind::Atom: print_atom(os, c.atom); break;
    case Ast::Kind::Seq:
        // Right-associative: a parenthesised left operand keeps its grouping.
        print_stmt(os, c.first(), p + 1, indent);
        os << ";\n" << pad;
        print_stmt(os, c.second(), p, indent);
        break;
    case Ast::Kind::Choice:
        print_stmt(os, c.first(), p + 1, indent);
        os << " [] ";
        print_stmt(os, c.second(), p, indent);
        break;
    case Ast::Kind::If:
        os << "if ";
        print_bool(os, c.cond, 0);
        os << ' ';
        print_block(os, c.first(), indent);
        os << " else ";
        print_block(os, c.second(), indent);
        break;
    case Ast::Kind::While:
        os << "while ";
        print_bool(os, c.cond, 0);
        os << ' ';
        print_block(os, c.body(), indent);
        break;
    }
    if (paren) os << ')';
}

void dump_int(std::ostream& os, const IntExpr& e) {
    switch (e.op) {
    case IntExpr::Op::Const: os << e.value; return;
    case IntExpr::Op::Var: os << e.var; return;
    case IntExpr::Op::Neg: os << "(neg "; dump_int(os, e.args[0]); os << ')'; return;
    default:
        os << '(' << (e.op == IntExpr::Op::Add ? '+' : e.op == IntExpr::Op::Sub ? '-' : '*') << ' ';
        dump_int(os, e.args[0]);
        os << ' ';
        dump_int(os, e.args[1]);
        os << ')';
    }
}

void dump_bool(std::ostream& os, const BoolExpr& b) {
    switch (b.op) {
    case BoolExpr::Op::True: os << "true"; return;
    case BoolExpr::Op::False: os << "false"; return;
    case BoolExpr::Op::Cmp: {
        std::string op = cmp_text(b.cmp);
        os << '(' << op.substr(1, op.size() - 2) << ' ';
        dump_int(os, b.operands[0]);
        os << ' ';
        dump_int(os, b.operands[1]);
        os << ')';
        return;
    }
    case BoolExpr::Op::Not: os << "(not "; dump_bool(os, b.args[0]); os << ')'; return;
    default:
        os << (b.op == BoolExpr::Op::And ? "(and " : "(or ");
        dump_bool(os, b.args[0]);
        os << ' ';
        dump_bool(os, b.args[1]);
        os << ')';
    }
}

void dump_stmt(std::ostream& os, const Ast& c) {
    switch (c.kind) {
    case Ast::Kind::Skip: os << "skip"; return;
    case Ast::Kind::Atom:
        std::visit(
            [&](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, Assign>) {
                    os << "(:= " << atom.var << ' ';
                    dump_int(os, atom.value);
                    os << ')';
                } else if constexpr (std::is_same_v<T, AssumeB>) {
                    os << "(assume ";
                    dump_bool(os, atom.cond);
                    os << ')';
                } else if constexpr (std::is_same_v<T, NondetAssign>) {
                    os << "(:in " << atom.var << ' ';
                    dump_int(os, atom.lo);
                    os << ' ';
                    dump_int(os, atom.hi);
                    os << ')';
                } else if constexpr (std::is_same_v<T, Havoc>) {
                    os << "(havoc " << atom.var << ')';
                } else {
                    os << "(rel";
                    for (const auto& [from, to] : atom.pairs) {
                        os << ' ';
                        print_assignment(os, from);
                        os << "->";
                        print_assignment(os, to);
                    }
                    os << ')';
                }
            },
            c.atom);
        return;
    case Ast::Kind::Seq:
    case Ast::Kind::Choice:
        os << (c.kind == Ast::Kind::Seq ? "(seq " : "(choice ");
        dump_stmt(os, c.first());
        os << ' ';
        dump_stmt(os, c.second());
        os << ')';
        return;
    case Ast::Kind::If:
        os << "(if ";
        dump_bool(os, c.cond);
        os << ' ';
        dump_stmt(os, c.first());
        os << ' ';
        dump_stmt(os, c.second());
        os << ')';
        return;
    case Ast::Kind::While:
        os << "(while ";
        dump_bool(os, c.cond);
        os << ' ';
        dump_stmt(os, c.body());
        os << ')';
        return;
    }
}

std::size_t require_var(const StateSpace& space, const std::string& name) {
    auto idx = space.index_of(name);
    if (!idx) throw Error(ErrorKind::UndeclaredVariable, "'" + name + "' is not declared");
    return *idx;
}

void collect_lint(const Ast& c, const StateSpace& space, std::vector<std::string>& out) {
    switch (c.kind) {
    case Ast::Kind::Atom:
        if (const auto* a = std::get_if<Assign>(&c.atom)) {
            const std::size_t var = require_var(space, a->var);
            std::size_t stuck = 0;
            for (std::uint32_t s = 0; s < space.size(); ++s) {
                if (!space.in_range(var, eval_int(a->value, space, State{s}))) ++stuck;
            }
            if (stuck) {
                std::ostringstream os;
                print_atom(os, c.atom);
                out.push_back("'" + os.str() + "' has no successor from " + std::to_string(stuck) + " of " +
                              std::to_string(space.size()) + " states");
            }
        }
        return;
    case Ast::Kind::Skip: return;
    default:
        for (const auto& child : c.children) collect_lint(child, space, out);
    }
}

}  // namespace

ProgramFile parse_program(std::string_view text) { return Parser(text).program(); }

std::string to_source(const Ast& c) {
    std::ostringstream os;
    print_stmt(os, c, 0, 0);
    return os.str();
}

std::string to_source(const BoolExpr& b) {
    std::ostringstream os;
    print_bool(os, b, 0);
    return os.str();
}

std::string to_source(const IntExpr& e) {
    std::ostringstream os;
    print_int(os, e, 0);
    return os.str();
}

std::string to_source(const ProgramFile& p) {
    std::ostringstream os;
    for (const auto& v : p.space.variables()) os << "var " << v.name << ": " << v.lo << ".." << v.hi << ";\n";
    auto list = [&](const char* kw, const std::vector<std::string>& names) {
        if (names.empty()) return;
        os << kw << ' ';
        for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
        os << ";\n";
    };
    list("low", p.low);
    list("lowin", p.low_in);
    list("lowout", p.low_out);
    os << to_source(p.body) << '\n';
    return os.str();
}

std::string dump_tree(const Ast& c) {
    std::ostringstream os;
    dump_stmt(os, c);
    return os.str();
}

std::int64_t eval_int(const IntExpr& e, const StateSpace& space, State s) {
    switch (e.op) {
    case IntExpr::Op::Const: return e.value;
    case IntExpr::Op::Var: return space.value(s, require_var(space, e.var));
    case IntExpr::Op::Neg: return -eval_int(e.args[0], space, s);
    case IntExpr::Op::Add: return eval_int(e.args[0], space, s) + eval_int(e.args[1], space, s);
    case IntExpr::Op::Sub: return eval_int(e.args[0], space, s) - eval_int(e.args[1], space, s);
    case IntExpr::Op::Mul: return eval_int(e.args[0], space, s) * eval_int(e.args[1], space, s);
    }
    return 0;
}

bool eval_bool_at(const BoolExpr& b, const StateSpace& space, State s) {
    switch (b.op) {
    case BoolExpr::Op::True: return true;
    case BoolExpr::Op::False: return false;
    case BoolExpr::Op::Not: return !eval_bool_at(b.args[0], space, s);
    case BoolExpr::Op::And: return eval_bool_at(b.args[0], space, s) && eval_bool_at(b.args[1], space, s);
    case BoolExpr::Op::Or: return eval_bool_at(b.args[0], space, s) || eval_bool_at(b.args[1], space, s);
    case BoolExpr::Op::Cmp: {
        const auto x = eval_int(b.operands[0], space, s);
        const auto y = eval_int(b.operands[1], space, s);
        switch (b.cmp) {
        case CmpOp::Eq: return x == y;
        case CmpOp::Ne: return x != y;
        case CmpOp::Lt: return x < y;
        case CmpOp::Le: return x <= y;
        case CmpOp::Gt: return x > y;
        case CmpOp::Ge: return x >= y;
        }
    }
    }
    return false;
}

StateSet eval_bool(const BoolExpr& b, const StateSpace& space) {
    StateSet out(space.size());
    for (std::uint32_t s = 0; s < space.size(); ++s) {
        if (eval_bool_at(b, space, State{s})) out.insert(State{s});
    }
    return out;
}

Rel elaborate_atom(const AtomDef& a, const StateSpace& space) {
    const std::size_t n = space.size();
    Rel r(n);
    std::visit(
        [&](const auto& atom) {
            using T = std::decay_t<decltype(atom)>;
            if constexpr (std::is_same_v<T, Assign>) {
                const std::size_t var = require_var(space, atom.var);
                for (std::uint32_t s = 0; s < n; ++s) {
                    const auto v = eval_int(atom.value, space, State{s});
                    if (space.in_range(var, v)) r.insert(State{s}, space.with_value(State{s}, var, v));
                }
            } else if constexpr (std::is_same_v<T, AssumeB>) {
                r = Rel::coreflexive(eval_bool(atom.cond, space));
            } else if constexpr (std::is_same_v<T, NondetAssign>) {
                const std::size_t var = require_var(space, atom.var);
                for (std::uint32_t s = 0; s < n; ++s) {
                    const auto lo = std::max(eval_int(atom.lo, space, State{s}), space.variables()[var].lo);
                    const auto hi = std::min(eval_int(atom.hi, space, State{s}), space.variables()[var].hi);
                    for (auto v = lo; v <= hi; ++v) r.insert(State{s}, space.with_value(State{s}, var, v));
                }
            } else if constexpr (std::is_same_v<T, Havoc>) {
                const std::size_t var = require_var(space, atom.var);
                const auto& decl = space.variables()[var];
                for (std::uint32_t s = 0; s < n; ++s) {
                    for (auto v = decl.lo; v <= decl.hi; ++v) r.insert(State{s}, space.with_value(State{s}, var, v));
                }
            } else {
                for (const auto& [from, to] : atom.pairs) {
                    try {
                        r.insert(space.encode(from), space.encode(to));
                    } catch (const Error& e) {
                        if (e.kind() == ErrorKind::UnknownVariable) {
                            throw Error(ErrorKind::UndeclaredVariable, e.what());
                        }
                        throw;
                    }
                }
            }
        },
        a);
    return r;
}

bool is_choice_free(const Ast& c) {
    if (c.kind == Ast::Kind::Choice) return false;
    for (const auto& child : c.children) {
        if (!is_choice_free(child)) return false;
    }
    return true;
}

bool atoms_deterministic(const Ast& c, const StateSpace& space) {
    if (c.kind == Ast::Kind::Atom) return is_partial_function(elaborate_atom(c.atom, space));
    for (const auto& child : c.children) {
        if (!atoms_deterministic(child, space)) return false;
    }
    return true;
}

std::vector<std::string> lint_stuck_assignments(const Ast& c, const StateSpace& space) {
    std::vector<std::string> out;
    collect_lint(c, space, out);
    return out;
}

}  // namespace hyperlift
