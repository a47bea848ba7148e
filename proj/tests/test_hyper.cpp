#include <doctest.h>

#include <functional>
#include <random>

#include "hyperlift/error.hpp"
#include "hyperlift/harness.hpp"
#include "hyperlift/hyper.hpp"
#include "hyperlift/semantics.hpp"
#include "util.hpp"

using namespace hyperlift;

namespace {

const char* kLoop = "var x: 0..7; while x < 4 { x := x + 1 }";

struct Fixture {
    ProgramFile prog;
    explicit Fixture(const char* text) : prog(parse_program(text)) {}
    FamilySet f(const std::string& text) const { return parse_family(text, prog.space); }
};

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("bottom h-transformer") {
    const StateSpace sp({{"x", 0, 7}});
    CHECK(pbot(FamilySet::empty(8)).is_empty());
    CHECK(pbot(parse_family("[[{x=2},{x=5}]]", sp)) == parse_family("[[]]", sp));
    CHECK(pbot(parse_family("ssc[[{x=2},{x=5}]]", sp)) == parse_family("[[]]", sp));
}

TEST_CASE("inner join, singleton join and hyper-conditional") {
    Fixture fx("var x: 0..7; x := x + 1; x := x + 2; skip");
    const Ast& inc1 = fx.prog.body.first();
    const Ast& inc2 = fx.prog.body.second().first();
    const Ast& skip = fx.prog.body.second().second();
    HEval ev(fx.prog.space);
    const FamilySet q = fx.f("[[{x=0}]]");
    CHECK(ev.ijoin_apply(inc1, inc2, q) == fx.f("[[],[{x=1}],[{x=2}],[{x=1},{x=2}]]"));
    CHECK(ev.otimes_apply(inc1, inc2, q) == fx.f("[[{x=1},{x=2}]]"));
    CHECK(ev.ijoin_apply(inc1, inc2, FamilySet::empty(8)).is_empty());
    CHECK(ev.otimes_apply(inc1, inc2, FamilySet::empty(8)).is_empty());

    // The singleton join does not keep subset closure.
    const FamilySet closed = ev.otimes_apply(inc1, inc2, fx.f("ssc[[{x=0}]]"));
    CHECK(closed == fx.f("[[],[{x=1},{x=2}]]"));
    CHECK_FALSE(closed.is_subset_closed());

    const BoolExpr b = BoolExpr::compare(CmpOp::Lt, IntExpr::variable("x"), IntExpr::constant(4));
    const FamilySet h = ev.hycond_apply(b, inc1, skip, fx.f("[[{x=2},{x=5}]]"));
    CHECK(h == fx.f("[[],[{x=3}],[{x=5}],[{x=3},{x=5}]]"));
    CHECK(h.is_subset_closed());
}

TEST_CASE("hyper-conditional with a true guard") {
    Fixture fx("var x: 0..3; x := 3 - x; skip");
    HEval ev(fx.prog.space);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        const FamilySet q = random_downset(4, rng);
        CHECK(ev.hycond_apply(BoolExpr::constant(true), fx.prog.body.first(), fx.prog.body.second(), q) ==
              ev.eval(fx.prog.body.first(), q));
    }
}

TEST_CASE("hyper-conditional is monotone in the query") {
    Fixture fx("var x: 0..4; x := x + 1 [] x := 0; x := 4 - x");
    const BoolExpr b = BoolExpr::compare(CmpOp::Ge, IntExpr::variable("x"), IntExpr::constant(2));
    HEval ev(fx.prog.space);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        const FamilySet q = random_family(5, rng);
        const FamilySet bigger = family_union(q, random_family(5, rng));
        CHECK(family_le(ev.hycond_apply(b, fx.prog.body.first(), fx.prog.body.second(), q),
                        ev.hycond_apply(b, fx.prog.body.first(), fx.prog.body.second(), bigger)));
    }
}

TEST_CASE("happly basics") {
    Fixture fx(kLoop);
    HEval ev(fx.prog.space);
    const FamilySet q = fx.f("ssc[[{x=2},{x=5}]]");
    CHECK(ev.happly(Ast::skip(), q) == q);
    CHECK(ev.happly(fx.prog.body.body(), fx.f("[[]]")) == fx.f("[[]]"));
    const FamilySet r = ev.happly(fx.prog.body, q);
    CHECK(r == fx.f("ssc[[{x=4},{x=5}]]"));
    CHECK(r.contains(testutil::set_of(8, {4, 5})));
    CHECK(r.maximal() == std::vector<StateSet>{testutil::set_of(8, {4, 5})});
}

TEST_CASE("the query contract") {
    Fixture fx(kLoop);
    HEval strict(fx.prog.space);
    CHECK(kind_of([&] { strict.happly(fx.prog.body, fx.f("[[{x=2},{x=5}]]")); }) == ErrorKind::NonSubsetClosedQuery);
    CHECK(kind_of([&] { strict.happly(fx.prog.body, FamilySet::empty(8)); }) == ErrorKind::NonSubsetClosedQuery);
    HEval::Options loose;
    loose.strict_ssc = false;
    HEval lenient(fx.prog.space, loose);
    CHECK(lenient.happly(fx.prog.body, fx.f("[[{x=2},{x=5}]]")) == fx.f("ssc[[{x=4},{x=5}]]"));
    CHECK(lenient.stats().warnings.size() == 1);
    CHECK(kind_of([&] { strict.happly(fx.prog.body, FamilySet::empty(4)); }) == ErrorKind::SpaceMismatch);
}

TEST_CASE("loop iterates of the three variants at {{2,5}}") {
    Fixture fx(kLoop);
    const FamilySet q = fx.f("[[{x=2},{x=5}]]");
    const auto naive = loop_iterates(fx.prog.body.cond, fx.prog.body.body(), fx.prog.space, q, 4, LoopVariant::NaiveK);
    REQUIRE(naive.size() == 5);
    CHECK(naive[0] == fx.f("[[]]"));
    CHECK(naive[1] == fx.f("[[],[{x=5}]]"));
    CHECK(naive[2] == fx.f("[[],[{x=5}]]"));
    CHECK(naive[3] == fx.f("[[],[{x=4}],[{x=5}]]"));
    CHECK(naive[4] == naive[3]);

    const auto otimes = loop_iterates(fx.prog.body.cond, fx.prog.body.body(), fx.prog.space, q, 3, LoopVariant::OtimesK);
    CHECK(otimes[0] == fx.f("[[]]"));
    CHECK(otimes[1] == fx.f("[[{x=5}]]"));
    CHECK_FALSE(family_le(otimes[0], otimes[1]));
    CHECK_FALSE(family_le(otimes[1], otimes[0]));
    CHECK(otimes[3] == fx.f("[[{x=4},{x=5}]]"));

    const auto closed = loop_iterates(fx.prog.body.cond, fx.prog.body.body(), fx.prog.space, fx.f("ssc[[{x=2},{x=5}]]"), 6,
                                     LoopVariant::Paper);
    for (std::size_t i = 1; i < closed.size(); ++i) CHECK(family_le(closed[i - 1], closed[i]));
    CHECK(closed.back() == fx.f("ssc[[{x=4},{x=5}]]"));
}

TEST_CASE("the naive loop semantics disagrees with the lifted one") {
    Fixture fx(kLoop);
    const FamilySet q = fx.f("[[{x=2},{x=5}]]");
    CHECK(happly(fx.prog.body, fx.prog.space, q, LoopVariant::NaiveK) == fx.f("[[],[{x=4}],[{x=5}]]"));
    CHECK(happly(fx.prog.body, fx.prog.space, q, LoopVariant::OtimesK) == fx.f("[[{x=4},{x=5}]]"));
    CHECK(lift_apply(sem_tr(fx.prog.body, fx.prog.space), q) == fx.f("[[{x=4},{x=5}]]"));
}

TEST_CASE("demand-driven fixpoints") {
    Fixture fx("var x: 0..7; while false { x := x + 1 }; while true { skip }; while x < 4 { x := x + 1 }");
    const Ast& never = fx.prog.body.first();
    const Ast& forever = fx.prog.body.second().first();
    const Ast& count = fx.prog.body.second().second();
    HEval ev(fx.prog.space);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
        const FamilySet q = random_family(8, rng);
        CHECK(ev.lfp_demand(never, q) == ssc(q));
    }
    CHECK(ev.lfp_demand(forever, fx.f("ssc[[{x=2},{x=5}]]")) == fx.f("[[]]"));
    CHECK(ev.lfp_demand(count, fx.f("ssc[[{x=2},{x=5}]]")) == fx.f("ssc[[{x=4},{x=5}]]"));
    CHECK(ev.lfp_kleene(count, fx.f("ssc[[{x=2},{x=5}]]")) == fx.f("ssc[[{x=4},{x=5}]]"));
    CHECK(kind_of([&] { ev.lfp_demand(fx.prog.body, fx.f("[[]]")); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("hyper refinement") {
    Fixture fx("var x: 0..7; x := x + 3; (x := x + 3 [] x := x + 5); x := x + 5");
    const Ast& three = fx.prog.body.first();
    const Ast& either = fx.prog.body.second().first();
    const Ast& five = fx.prog.body.second().second();
    const auto battery = standard_query_battery(8);
    CHECK(hrefines(three, three, fx.prog.space, battery));
    CHECK(hrefines(three, either, fx.prog.space, battery));
    CHECK_FALSE(hrefines(five, three, fx.prog.space, battery));
    CHECK_FALSE(hrefines(five, three, fx.prog.space, {fx.f("ssc[[{x=0}]]")}));
    CHECK(kind_of([&] { hrefines(three, three, fx.prog.space, {fx.f("[[{x=0}]]")}); }) ==
          ErrorKind::NonSubsetClosedQuery);
}

TEST_CASE("the engine matches the literal definition on random programs") {
    // All three: choice, nondeterministic atoms and non-closed queries.
    GenConfig cfg;
    cfg.seed = 31;
    cfg.max_states = 4;
    for (std::size_t i = 0; i < 150; ++i) {
        const auto prog = gen_program(for_trial(cfg, i));
        const std::size_t n = prog.space.size();
        HEval::Options opts;
        opts.strict_ssc = false;
        opts.cross_check_kleene = true;
        HEval ev(prog.space, opts);
        oracle::Hyper lit(prog.space);
        std::vector<FamilySet> queries = enumerate_downsets(n);
        std::mt19937_64 rng(i);
        for (int k = 0; k < 10; ++k) queries.push_back(random_family(n, rng));
        for (const auto& q : queries) {
            const auto got = testutil::masks(ev.happly(prog.body, q));
            const auto expect = lit.eval(prog.body, testutil::masks(q));
            CHECK(got == expect);
        }
        CHECK(ev.stats().kleene_mismatches == 0);
    }
}

TEST_CASE("deterministic programs preserve subset closure") {
    GenConfig cfg;
    cfg.seed = 41;
    cfg.allow_choice = false;
    cfg.max_states = 6;
    for (std::size_t i = 0; i < 100; ++i) {
        const auto prog = gen_program(for_trial(cfg, i));
        HEval ev(prog.space);
        std::mt19937_64 rng(i);
        for (int k = 0; k < 10; ++k) {
            CHECK(ev.happly(prog.body, random_downset(prog.space.size(), rng)).is_subset_closed());
        }
    }
}

TEST_CASE("nondeterministic atoms whose relation passes PSC preserve subset closure") {
    // Syntactically nondeterministic, relationally functional.
    Fixture fx("var x: 0..3; var y: 0..1; x :in x..x; y :in 1..y; while x < 3 { x :in x+1..x+1 }; havoc y; assume y = 0");
    HEval ev(fx.prog.space);
    const std::size_t n = fx.prog.space.size();
    REQUIRE_FALSE(atoms_deterministic(fx.prog.body, fx.prog.space));
    std::vector<const Ast*> atoms;
    std::function<void(const Ast&)> collect = [&](const Ast& c) {
        if (c.kind == Ast::Kind::Atom) atoms.push_back(&c);
        for (const auto& ch : c.children) collect(ch);
    };
    collect(fx.prog.body);
    std::mt19937_64 rng(5);
    for (const Ast* a : atoms) {
        const Rel r = elaborate_atom(a->atom, fx.prog.space);
        if (!psc_check(Transformer::image_of(r)).holds) continue;
        for (int k = 0; k < 30; ++k) CHECK(ev.happly(*a, random_downset(n, rng)).is_subset_closed());
    }
    const Ast prefix = Ast::seq(fx.prog.body.first(), Ast::seq(fx.prog.body.second().first(), fx.prog.body.second().second().first()));
    for (int k = 0; k < 50; ++k) CHECK(ev.happly(prefix, random_downset(n, rng)).is_subset_closed());
}

TEST_CASE("lifted conditionals are refined by the hyper-conditional, with choice") {
    GenConfig cfg;
    cfg.seed = 51;
    cfg.max_states = 5;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < 200 && checked < 60; ++i) {
        const auto prog = gen_program(for_trial(cfg, i));
        if (prog.body.kind != Ast::Kind::If) continue;
        ++checked;
        HEval ev(prog.space);
        const Transformer t = sem_tr(prog.body, prog.space);
        std::mt19937_64 rng(i);
        for (int k = 0; k < 10; ++k) {
            const FamilySet q = random_downset(prog.space.size(), rng);
            CHECK(family_le(lift_apply(t, q), ev.happly(prog.body, q)));
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("direct-image lift: down-set fast path equals explicit mapping") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 300; ++i) {
        const Rel r = i % 2 ? random_partial_function(6, 0.2, rng) : random_relation(6, 0.2, rng);
        const FamilySet q = random_downset(6, rng);
        oracle::Family expect;
        for (const auto& p : q.members()) expect.insert(dirimg(r, p).bits());
        CHECK(testutil::masks(lift_rel(r, q)) == expect);
        CHECK(lift_rel(r, q) == lift_rel(r, FamilySet::explicit_of(6, q.members())));
    }
}

TEST_CASE("expansion past the bound is a query blow-up") {
    Fixture fx("var x: 0..15; x := x [] x := 0");
    HEval::Options opts;
    opts.expansion_bound = 8;
    HEval ev(fx.prog.space, opts);
    CHECK(kind_of([&] { ev.otimes_apply(fx.prog.body.first(), fx.prog.body.second(), fx.f("ssc[[{x=0},{x=1},{x=2},{x=3},{x=4}]]")); }) ==
          ErrorKind::QueryBlowup);
}

TEST_CASE("variant names") {
    CHECK(parse_loop_variant("naive") == LoopVariant::NaiveK);
    CHECK(parse_loop_variant("otimes-k") == LoopVariant::OtimesK);
    CHECK(parse_loop_variant("paper") == LoopVariant::Paper);
    CHECK_FALSE(parse_loop_variant("other"));
    CHECK(to_string(LoopVariant::NaiveK) == "naive-k");
}
