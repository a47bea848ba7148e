#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hyperlift/state.hpp"

namespace hyperlift {

/// A binary relation on a state universe of `size()` states, stored as one
/// successor set per state.
class Rel {
public:
    Rel() = default;
    explicit Rel(std::size_t universe);

    static Rel identity(std::size_t universe);
    static Rel coreflexive(const StateSet& p);
    static Rel from_pairs(std::size_t universe, const std::vector<std::pair<State, State>>& pairs);

    std::size_t size() const { return rows_.size(); }
    const StateSet& successors(State s) const { return rows_[s.id]; }
    bool contains(State from, State to) const { return rows_[from.id].contains(to); }
    void insert(State from, State to) { rows_[from.id].insert(to); }
    std::size_t pair_count() const;
    bool empty() const;
    std::vector<std::pair<State, State>> pairs() const;

    /// States with at least one successor.
    StateSet domain() const;
    bool subset_of(const Rel& other) const;

    bool operator==(const Rel&) const = default;

private:
    std::vector<StateSet> rows_;
};

/// Forward composition: x (r;s) y iff x r z and z s y for some z.
Rel compose(const Rel& r, const Rel& s);
Rel rel_union(const Rel& r, const Rel& s);
Rel converse(const Rel& r);
Rel intersection(const Rel& r, const Rel& s);

/// Direct image { y | x in p, x r y }.
StateSet dirimg(const Rel& r, const StateSet& p);

/// Every state has at most one successor.
bool is_partial_function(const Rel& r);

}  // namespace hyperlift
