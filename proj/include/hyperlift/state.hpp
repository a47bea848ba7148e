#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlift {

inline constexpr std::size_t kMaxStates = 64;

/// Index of a state in a StateSpace, in [0, size).
struct State {
    std::uint32_t id = 0;
    auto operator<=>(const State&) const = default;
};

/// Named assignment of values, used when encoding states from text.
using Assignment = std::map<std::string, std::int64_t, std::less<>>;

/// A finite set of program states defined by variables with inclusive
/// integer ranges. States are mixed-radix encoded: declaration order, the
/// first declared variable is the most significant digit.
class StateSpace {
public:
    struct Variable {
        std::string name;
        std::int64_t lo = 0;
        std::int64_t hi = 0;

        std::int64_t width() const { return hi - lo + 1; }
        bool operator==(const Variable&) const = default;
    };

    StateSpace() = default;
    explicit StateSpace(std::vector<Variable> vars, std::size_t cap = kMaxStates);

    std::size_t size() const { return size_; }
    const std::vector<Variable>& variables() const { return vars_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    State encode(const Assignment& assignment) const;
    std::vector<std::int64_t> decode(State s) const;

    std::int64_t value(State s, std::size_t var) const {
        return vars_[var].lo + static_cast<std::int64_t>((s.id / strides_[var]) % vars_[var].width());
    }
    /// `s` with variable `var` set to `v`; `v` must be in range.
    State with_value(State s, std::size_t var, std::int64_t v) const;
    bool in_range(std::size_t var, std::int64_t v) const { return v >= vars_[var].lo && v <= vars_[var].hi; }

    bool operator==(const StateSpace& other) const { return vars_ == other.vars_; }

private:
    std::vector<Variable> vars_;
    std::vector<std::uint64_t> strides_;
    std::size_t size_ = 0;
};

/// A subset of a state universe {0, ..., universe-1}, universe <= 64.
/// Bits at or above `universe` are always clear.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t universe) : universe_(static_cast<std::uint8_t>(universe)) {
        assert(universe <= kMaxStates);
    }

    static StateSet from_bits(std::size_t universe, std::uint64_t bits) {
        StateSet s(universe);
        s.bits_ = bits & full_mask(universe);
        return s;
    }
    static StateSet full(std::size_t universe) { return from_bits(universe, ~std::uint64_t{0}); }
    static StateSet singleton(std::size_t universe, State s) {
        StateSet r(universe);
        r.insert(s);
        return r;
    }

    std::size_t universe() const { return universe_; }
    std::uint64_t bits() const { return bits_; }
    std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    bool empty() const { return bits_ == 0; }

    bool contains(State s) const { return s.id < universe_ && ((bits_ >> s.id) & 1u) != 0; }
    void insert(State s) {
        assert(s.id < universe_);
        bits_ |= std::uint64_t{1} << s.id;
    }
    void erase(State s) { bits_ &= ~(std::uint64_t{1} << s.id); }

    bool subset_of(const StateSet& other) const { return (bits_ & ~other.bits_) == 0; }
    StateSet complement() const { return from_bits(universe_, ~bits_); }

    StateSet operator|(const StateSet& o) const { return with_bits(bits_ | o.bits_); }
    StateSet operator&(const StateSet& o) const { return with_bits(bits_ & o.bits_); }
    StateSet operator-(const StateSet& o) const { return with_bits(bits_ & ~o.bits_); }
    StateSet& operator|=(const StateSet& o) { bits_ |= o.bits_; return *this; }
    StateSet& operator&=(const StateSet& o) { bits_ &= o.bits_; return *this; }

    /// Calls f(State) for each member in increasing order.
    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
            f(State{static_cast<std::uint32_t>(std::countr_zero(b))});
        }
    }
    std::vector<State> members() const;

    /// Total order: by bit pattern, then universe.
    auto operator<=>(const StateSet& o) const {
        if (auto c = bits_ <=> o.bits_; c != 0) return c;
        return universe_ <=> o.universe_;
    }
    bool operator==(const StateSet&) const = default;

    static std::uint64_t full_mask(std::size_t universe) {
        return universe >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe) - 1;
    }

private:
    StateSet with_bits(std::uint64_t b) const {
        assert(b == (b & full_mask(universe_)));
        StateSet s(universe_);
        s.bits_ = b;
        return s;
    }

    std::uint64_t bits_ = 0;
    std::uint8_t universe_ = 0;
};

/// Calls f(StateSet) for every subset of p, starting with the empty set.
template <class F>
void for_each_subset(const StateSet& p, F&& f) {
    const std::uint64_t mask = p.bits();
    std::uint64_t sub = 0;
    do {
        f(StateSet::from_bits(p.universe(), sub));
        sub = (sub - mask) & mask;
    } while (sub != 0);
}

}  // namespace hyperlift
