#include "hyperlift/relation.hpp"

#include <algorithm>

#include "hyperlift/error.hpp"

namespace hyperlift {

namespace {

void check_same(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorKind::SpaceMismatch,
                    "relations over " + std::to_string(a) + " and " + std::to_string(b) + " states");
    }
}

}  // namespace

Rel::Rel(std::size_t universe) : rows_(universe, StateSet(universe)) {
    if (universe > kMaxStates) throw Error(ErrorKind::SpaceTooLarge, "relation universe above 64");
}

Rel Rel::identity(std::size_t universe) {
    Rel r(universe);
    for (std::uint32_t i = 0; i < universe; ++i) r.insert(State{i}, State{i});
    return r;
}

Rel Rel::coreflexive(const StateSet& p) {
    Rel r(p.universe());
    p.for_each([&](State s) { r.insert(s, s); });
    return r;
}

Rel Rel::from_pairs(std::size_t universe, const std::vector<std::pair<State, State>>& pairs) {
    Rel r(universe);
    for (const auto& [a, b] : pairs) {
        if (a.id >= universe || b.id >= universe) {
            throw Error(ErrorKind::ValueOutOfRange, "pair outside the state universe");
        }
        r.insert(a, b);
    }
    return r;
}

std::size_t Rel::pair_count() const {
    std::size_t n = 0;
    for (const auto& row : rows_) n += row.count();
    return n;
}

bool Rel::empty() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const StateSet& s) { return s.empty(); });
}

std::vector<std::pair<State, State>> Rel::pairs() const {
    std::vector<std::pair<State, State>> out;
    for (std::uint32_t i = 0; i < rows_.size(); ++i) {
        rows_[i].for_each([&](State t) { out.emplace_back(State{i}, t); });
    }
    return out;
}

StateSet Rel::domain() const {
    StateSet d(size());
    for (std::uint32_t i = 0; i < rows_.size(); ++i) {
        if (!rows_[i].empty()) d.insert(State{i});
    }
    return d;
}

bool Rel::subset_of(const Rel& other) const {
    check_same(size(), other.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!rows_[i].subset_of(other.rows_[i])) return false;
    }
    return true;
}

Rel compose(const Rel& r, const Rel& s) {
    check_same(r.size(), s.size());
    Rel out(r.size());
    for (std::uint32_t i = 0; i < r.size(); ++i) {
        StateSet row(r.size());
        r.successors(State{i}).for_each([&](State z) { row |= s.successors(z); });
        row.for_each([&](State y) { out.insert(State{i}, y); });
    }
    return out;
}

Rel rel_union(const Rel& r, const Rel& s) {
    check_same(r.size(), s.size());
    Rel out = r;
    for (const auto& [a, b] : s.pairs()) out.insert(a, b);
    return out;
}

Rel converse(const Rel& r) {
    Rel out(r.size());
    for (const auto& [a, b] : r.pairs()) out.insert(b, a);
    return out;
}

Rel intersection(const Rel& r, const Rel& s) {
    check_same(r.size(), s.size());
    Rel out(r.size());
    for (const auto& [a, b] : r.pairs()) {
        if (s.contains(a, b)) out.insert(a, b);
    }
    return out;
}

StateSet dirimg(const Rel& r, const StateSet& p) {
    check_same(r.size(), p.universe());
    StateSet out(r.size());
    p.for_each([&](State x) { out |= r.successors(x); });
    return out;
}

bool is_partial_function(const Rel& r) {
    for (std::uint32_t i = 0; i < r.size(); ++i) {
        if (r.successors(State{i}).count() > 1) return false;
    }
    return true;
}

}  // namespace hyperlift
