#include <doctest.h>

#include "hyperlift/error.hpp"
#include "hyperlift/harness.hpp"
#include "hyperlift/lang.hpp"
#include "hyperlift/semantics.hpp"
#include "util.hpp"

using namespace hyperlift;

namespace {

ErrorKind parse_error(const std::string& text) {
    try {
        parse_program(text);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("parsing the worked loop") {
    const auto prog = testutil::program("var x:0..7; while x<4 { x := x+1 }");
    REQUIRE(prog.body.kind == Ast::Kind::While);
    CHECK(prog.body.body().kind == Ast::Kind::Atom);
    CHECK(std::holds_alternative<Assign>(prog.body.body().atom));
    CHECK(prog.space.size() == 8);
}

TEST_CASE("choice binds looser than sequencing") {
    const auto prog = testutil::program("var x:0..7; x:=x+3 [] x:=x+5");
    REQUIRE(prog.body.kind == Ast::Kind::Choice);
    CHECK(prog.body.first().kind == Ast::Kind::Atom);
    const auto mixed = testutil::program("var x:0..7; x:=1; x:=2 [] x:=3");
    REQUIRE(mixed.body.kind == Ast::Kind::Choice);
    CHECK(mixed.body.first().kind == Ast::Kind::Seq);
    const auto right = testutil::program("var x:0..7; x:=1; x:=2; x:=3");
    REQUIRE(right.body.kind == Ast::Kind::Seq);
    CHECK(right.body.second().kind == Ast::Kind::Seq);
}

TEST_CASE("declarations, comments and low lists") {
    const auto prog = testutil::program(R"(
        // two bits
        var hi: 0..1;
        var lo: 0..1;
        low lo;
        lowin lo, hi;
        if hi = 1 { lo := 1 } else { skip }
    )");
    CHECK(prog.low == std::vector<std::string>{"lo"});
    CHECK(prog.input_low() == std::vector<std::string>{"lo", "hi"});
    CHECK(prog.output_low() == std::vector<std::string>{"lo"});
    CHECK(prog.body.kind == Ast::Kind::If);
}

TEST_CASE("syntax and declaration errors") {
    CHECK(parse_error("var x: 0..7; x := +") == ErrorKind::SyntaxError);
    CHECK(parse_error("var x: 0..7; y := 1") == ErrorKind::UndeclaredVariable);
    CHECK(parse_error("var x: 0..7; low y; skip") == ErrorKind::UndeclaredVariable);
    CHECK(parse_error("var x: 0..7; while x < 4 { x := x + 1") == ErrorKind::SyntaxError);
    try {
        parse_program("var x: 0..7;\nx := +");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("2:") != std::string::npos);
    }
}

TEST_CASE("atom elaboration") {
    const StateSpace sp({{"x", 0, 7}});
    const Rel inc = elaborate_atom(Assign{"x", IntExpr::binary(IntExpr::Op::Add, IntExpr::variable("x"), IntExpr::constant(1))}, sp);
    for (std::uint32_t i = 0; i < 7; ++i) CHECK(inc.successors(State{i}) == testutil::set_of(8, {i + 1}));
    CHECK(inc.successors(State{7}).empty());

    const Rel assume = elaborate_atom(AssumeB{BoolExpr::compare(CmpOp::Lt, IntExpr::variable("x"), IntExpr::constant(4))}, sp);
    CHECK(assume == Rel::coreflexive(testutil::set_of(8, {0, 1, 2, 3})));

    const StateSpace bit({{"x", 0, 1}});
    const Rel havoc = elaborate_atom(Havoc{"x"}, bit);
    CHECK(havoc.pair_count() == 4);

    const Rel nd = elaborate_atom(NondetAssign{"x", IntExpr::constant(5), IntExpr::constant(9)}, sp);
    CHECK(nd.successors(State{0}) == testutil::set_of(8, {5, 6, 7}));

    CHECK_THROWS_AS(elaborate_atom(Assign{"y", IntExpr::constant(0)}, sp), Error);
}

TEST_CASE("determinism and choice predicates") {
    const auto loop = testutil::program("var x:0..7; while x<4 { x := x+1 }");
    CHECK(is_choice_free(loop.body));
    CHECK(atoms_deterministic(loop.body, loop.space));
    CHECK_FALSE(is_choice_free(testutil::program("var x:0..7; x:=1 [] x:=2").body));
    CHECK_FALSE(atoms_deterministic(testutil::program("var x:0..7; x :in 0..1").body, loop.space));
    CHECK(atoms_deterministic(testutil::program("var x:0..7; x :in x..x").body, loop.space));
}

TEST_CASE("boolean evaluation") {
    const StateSpace sp({{"x", 0, 7}});
    CHECK(eval_bool(BoolExpr::compare(CmpOp::Lt, IntExpr::variable("x"), IntExpr::constant(4)), sp) ==
          testutil::set_of(8, {0, 1, 2, 3}));
    CHECK(eval_bool(BoolExpr::constant(true), sp) == StateSet::full(8));
    const auto prog = testutil::program("var hi: 0..1; var lo: 0..1; assume hi = 1 && lo = 0");
    CHECK(eval_bool(std::get<AssumeB>(prog.body.atom).cond, prog.space).count() == 1);
}

TEST_CASE("booleans are total: b and not b split the space") {
    GenConfig cfg;
    cfg.seed = 23;
    for (std::size_t i = 0; i < 200; ++i) {
        const auto prog = gen_program(for_trial(cfg, i));
        if (prog.body.kind != Ast::Kind::If && prog.body.kind != Ast::Kind::While) continue;
        const StateSet b = eval_bool(prog.body.cond, prog.space);
        const StateSet nb = eval_bool(BoolExpr::negation(prog.body.cond), prog.space);
        CHECK((b | nb) == StateSet::full(prog.space.size()));
        CHECK((b & nb).empty());
    }
}

TEST_CASE("pretty printing round trips") {
    GenConfig cfg;
    cfg.seed = 1234;
    for (std::size_t i = 0; i < 1000; ++i) {
        const auto prog = gen_program(for_trial(cfg, i));
        const std::string text = to_source(prog);
        ProgramFile back;
        REQUIRE_NOTHROW(back = parse_program(text));
        CHECK(back.body == prog.body);
        CHECK(back.space == prog.space);
    }
    const auto tricky = testutil::program("var x: -3..3; x := -(x - -2) * 2; if !(x < 0 || x >= 2) { skip } else { x := 0 }");
    CHECK(parse_program(to_source(tricky)).body == tricky.body);
}

TEST_CASE("stuck assignments are linted") {
    const auto prog = testutil::program("var x: 0..7; x := x + 1");
    CHECK_FALSE(lint_stuck_assignments(prog.body, prog.space).empty());
    const auto safe = testutil::program("var x: 0..7; x := 7 - x");
    CHECK(lint_stuck_assignments(safe.body, safe.space).empty());
}
