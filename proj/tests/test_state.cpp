#include <doctest.h>

#include "hyperlift/error.hpp"
#include "hyperlift/family.hpp"
#include "hyperlift/state.hpp"
#include "util.hpp"

using namespace hyperlift;

namespace {

StateSpace two_bits() { return StateSpace({{"hi", 0, 1}, {"lo", 0, 1}}); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("encoding is mixed radix with the first variable most significant") {
    const StateSpace x({{"x", 0, 7}});
    CHECK(x.encode({{"x", 2}}).id == 2);
    CHECK(two_bits().encode({{"hi", 1}, {"lo", 0}}).id == 2);
    CHECK(two_bits().size() == 4);
}

TEST_CASE("encode and decode round trip on every state") {
    const StateSpace sp({{"a", -2, 1}, {"b", 3, 5}, {"c", 0, 3}});
    REQUIRE(sp.size() == 48);
    for (std::uint32_t s = 0; s < sp.size(); ++s) {
        const auto values = sp.decode(State{s});
        Assignment a;
        for (std::size_t i = 0; i < values.size(); ++i) a[sp.variables()[i].name] = values[i];
        CHECK(sp.encode(a).id == s);
    }
}

TEST_CASE("encoding errors") {
    const StateSpace x({{"x", 0, 7}});
    CHECK(kind_of([&] { x.encode({{"x", 9}}); }) == ErrorKind::ValueOutOfRange);
    CHECK(kind_of([&] { x.encode({{"x", 1}, {"y", 0}}); }) == ErrorKind::UnknownVariable);
    CHECK(kind_of([&] { two_bits().encode({{"hi", 1}}); }) == ErrorKind::MissingVariable);
    CHECK(kind_of([&] { StateSpace({{"x", 0, 64}}); }) == ErrorKind::SpaceTooLarge);
    CHECK(kind_of([&] { StateSpace({{"x", 0, 1}, {"x", 0, 1}}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { StateSpace({{"x", 3, 1}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("a 64-state space fits") {
    const StateSpace sp({{"x", 0, 63}});
    CHECK(StateSet::full(sp.size()).count() == 64);
    CHECK(StateSet::full(64).complement().empty());
}

TEST_CASE("state set algebra") {
    const auto p = testutil::set_of(8, {2, 5});
    const auto q = testutil::set_of(8, {5, 6});
    CHECK((p | q) == testutil::set_of(8, {2, 5, 6}));
    CHECK((p & q) == testutil::set_of(8, {5}));
    CHECK((p - q) == testutil::set_of(8, {2}));
    CHECK(p.complement().count() == 6);
    CHECK(testutil::set_of(8, {5}).subset_of(p));
    int n = 0;
    std::uint64_t last = 0;
    for_each_subset(p, [&](const StateSet& s) {
        if (n) CHECK(s.bits() > last);
        last = s.bits();
        ++n;
    });
    CHECK(n == 4);
}

TEST_CASE("ssc and subset closure") {
    const StateSpace sp({{"x", 0, 7}});
    const auto q = testutil::fam("[[{x=2},{x=5}]]", sp);
    CHECK_FALSE(q.is_subset_closed());
    const auto closed = ssc(q);
    CHECK(closed.is_down_set());
    CHECK(testutil::masks(closed) == oracle::Family{0, 1u << 2, 1u << 5, (1u << 2) | (1u << 5)});
    CHECK(ssc(FamilySet::empty(8)).is_empty());
    CHECK(FamilySet::empty(8).is_subset_closed());
    CHECK(ssc(closed) == closed);

    const auto two = testutil::fam("[[{x=0},{x=1}],[{x=1},{x=2}]]", sp);
    const auto c2 = ssc(two);
    for (std::uint64_t m = 0; m < 256; ++m) {
        const bool expect = (m & ~std::uint64_t{3}) == 0 || (m & ~std::uint64_t{6}) == 0;
        CHECK(c2.contains(StateSet::from_bits(8, m)) == expect);
    }
}

TEST_CASE("ssc is idempotent, extensive and monotone on 3 states") {
    // Every family over 3 states, as a bit mask over the 8 subsets.
    for (unsigned f = 0; f < 256; ++f) {
        oracle::Family ff;
        for (unsigned m = 0; m < 8; ++m) {
            if (f >> m & 1) ff.insert(m);
        }
        const auto fs = testutil::family(3, ff);
        const auto closed = ssc(fs);
        CHECK(family_le(fs, closed));
        CHECK(ssc(closed) == closed);
        CHECK(closed.is_subset_closed());
        CHECK(fs.canonical() == fs);
        for (unsigned g = f; g < 256; g = (g + 1) | f) {
            oracle::Family gg;
            for (unsigned m = 0; m < 8; ++m) {
                if (g >> m & 1) gg.insert(m);
            }
            CHECK(family_le(closed, ssc(testutil::family(3, gg))));
            if (g == 255) break;
        }
    }
}

TEST_CASE("powerset family") {
    const auto p = testutil::set_of(8, {2, 5});
    CHECK(powerset_family(p).members().size() == 4);
    CHECK(powerset_family(StateSet(8)).members().size() == 1);
    CHECK(powerset_members(testutil::set_of(8, {0, 1, 2})).size() == 8);
    CHECK(powerset_family(p) == ssc(FamilySet::explicit_of(8, {p})));
    const auto big = StateSet::full(40);
    CHECK(kind_of([&] { powerset_family(big).members(); }) == ErrorKind::ExpansionTooLarge);
}

TEST_CASE("family order and equality across forms") {
    const StateSpace sp({{"x", 0, 7}});
    CHECK(family_le(testutil::fam("[[],[{x=5}]]", sp), testutil::fam("[[],[{x=4}],[{x=5}]]", sp)));
    CHECK_FALSE(family_le(testutil::fam("[[{x=4},{x=5}]]", sp), testutil::fam("[[],[{x=4}],[{x=5}]]", sp)));
    CHECK(testutil::fam("ssc[[{x=2},{x=5}]]", sp) == testutil::fam("[[],[{x=2}],[{x=5}],[{x=2},{x=5}]]", sp));
    CHECK(family_le(testutil::fam("ssc[[{x=2}]]", sp), testutil::fam("[[],[{x=2}],[{x=5}]]", sp)));
    CHECK_FALSE(family_le(testutil::fam("ssc[[{x=2},{x=5}]]", sp), testutil::fam("[[],[{x=2}],[{x=5}]]", sp)));
}

TEST_CASE("union product: down-set fast path agrees with expansion") {
    oracle::Family a{0b0011, 0b0100};
    oracle::Family b{0b1000, 0b0001};
    const auto fa = ssc(testutil::family(4, a));
    const auto fb = ssc(testutil::family(4, b));
    const auto fast = union_product(fa, fb);
    CHECK(fast.is_down_set());
    CHECK(testutil::masks(fast) == oracle::union_product(testutil::masks(fa), testutil::masks(fb)));
    const auto slow = union_product(FamilySet::explicit_of(4, fa.members()), FamilySet::explicit_of(4, fb.members()));
    CHECK(slow == fast);
}
