#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hyperlift/relation.hpp"
#include "hyperlift/state.hpp"

namespace hyperlift {

struct IntExpr {
    enum class Op { Const, Var, Add, Sub, Mul, Neg };

    Op op = Op::Const;
    std::int64_t value = 0;
    std::string var;
    std::vector<IntExpr> args;

    static IntExpr constant(std::int64_t v) { return IntExpr{Op::Const, v, {}, {}}; }
    static IntExpr variable(std::string name) { return IntExpr{Op::Var, 0, std::move(name), {}}; }
    static IntExpr binary(Op op, IntExpr a, IntExpr b) { return IntExpr{op, 0, {}, {std::move(a), std::move(b)}}; }
    static IntExpr negate(IntExpr a) { return IntExpr{Op::Neg, 0, {}, {std::move(a)}}; }

    bool operator==(const IntExpr&) const = default;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct BoolExpr {
    enum class Op { True, False, Cmp, And, Or, Not };

    Op op = Op::True;
    CmpOp cmp = CmpOp::Eq;
    std::vector<IntExpr> operands;  // Cmp
    std::vector<BoolExpr> args;     // And, Or, Not

    static BoolExpr constant(bool v) { return BoolExpr{v ? Op::True : Op::False, CmpOp::Eq, {}, {}}; }
    static BoolExpr compare(CmpOp c, IntExpr a, IntExpr b) {
        return BoolExpr{Op::Cmp, c, {std::move(a), std::move(b)}, {}};
    }
    static BoolExpr both(BoolExpr a, BoolExpr b) { return BoolExpr{Op::And, CmpOp::Eq, {}, {std::move(a), std::move(b)}}; }
    static BoolExpr either(BoolExpr a, BoolExpr b) { return BoolExpr{Op::Or, CmpOp::Eq, {}, {std::move(a), std::move(b)}}; }
    static BoolExpr negation(BoolExpr a) { return BoolExpr{Op::Not, CmpOp::Eq, {}, {std::move(a)}}; }

    bool operator==(const BoolExpr&) const = default;
};

struct Assign {
    std::string var;
    IntExpr value;
    bool operator==(const Assign&) const = default;
};
struct AssumeB {
    BoolExpr cond;
    bool operator==(const AssumeB&) const = default;
};
/// var :in lo..hi
struct NondetAssign {
    std::string var;
    IntExpr lo;
    IntExpr hi;
    bool operator==(const NondetAssign&) const = default;
};
struct Havoc {
    std::string var;
    bool operator==(const Havoc&) const = default;
};
/// An atom given directly by its pairs of (complete) states.
struct RelLiteral {
    std::vector<std::pair<Assignment, Assignment>> pairs;
    bool operator==(const RelLiteral&) const = default;
};

using AtomDef = std::variant<Assign, AssumeB, NondetAssign, Havoc, RelLiteral>;

/// Commands: atm | skip | c;d | c [] d | if b {c} else {d} | while b {c}.
struct Ast {
    enum class Kind { Atom, Skip, Seq, Choice, If, While };

    Kind kind = Kind::Skip;
    AtomDef atom;
    BoolExpr cond;
    std::vector<Ast> children;

    static Ast skip() { return Ast{}; }
    static Ast make_atom(AtomDef a) { return Ast{Kind::Atom, std::move(a), {}, {}}; }
    static Ast seq(Ast c, Ast d) { return Ast{Kind::Seq, {}, {}, {std::move(c), std::move(d)}}; }
    static Ast choice(Ast c, Ast d) { return Ast{Kind::Choice, {}, {}, {std::move(c), std::move(d)}}; }
    static Ast if_else(BoolExpr b, Ast c, Ast d) { return Ast{Kind::If, {}, std::move(b), {std::move(c), std::move(d)}}; }
    static Ast while_loop(BoolExpr b, Ast body) { return Ast{Kind::While, {}, std::move(b), {std::move(body)}}; }

    const Ast& first() const { return children[0]; }
    const Ast& second() const { return children[1]; }
    const Ast& body() const { return children[0]; }

    bool operator==(const Ast&) const = default;
};

/// A parsed `.imp` file: declarations plus a command.
struct ProgramFile {
    StateSpace space;
    std::vector<std::string> low;      // `low a, b;`
    std::vector<std::string> low_in;   // `lowin ...;` (defaults to low)
    std::vector<std::string> low_out;  // `lowout ...;` (defaults to low)
    Ast body;

    const std::vector<std::string>& input_low() const { return low_in.empty() ? low : low_in; }
    const std::vector<std::string>& output_low() const { return low_out.empty() ? low : low_out; }
};

/// Parses a program. Throws Error(SyntaxError) with line:column, or
/// Error(UndeclaredVariable).
ProgramFile parse_program(std::string_view text);

/// Re-parseable concrete syntax.
std::string to_source(const Ast& c);
std::string to_source(const BoolExpr& b);
std::string to_source(const IntExpr& e);
std::string to_source(const ProgramFile& p);
/// Parenthesised tree form, e.g. `(while (< x 4) (:= x (+ x 1)))`.
std::string dump_tree(const Ast& c);

std::int64_t eval_int(const IntExpr& e, const StateSpace& space, State s);
bool eval_bool_at(const BoolExpr& b, const StateSpace& space, State s);
/// The states satisfying b.
StateSet eval_bool(const BoolExpr& b, const StateSpace& space);

/// Relation denoted by an atom. Assignments whose result leaves the declared
/// range have no successor.
Rel elaborate_atom(const AtomDef& a, const StateSpace& space);

bool is_choice_free(const Ast& c);
/// Every atom of c elaborates to a partial function over `space`.
bool atoms_deterministic(const Ast& c, const StateSpace& space);

/// Assignments whose value can leave the declared range (a stuck atom), as
/// human-readable lint lines.
std::vector<std::string> lint_stuck_assignments(const Ast& c, const StateSpace& space);

}  // namespace hyperlift
