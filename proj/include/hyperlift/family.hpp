#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "hyperlift/state.hpp"

namespace hyperlift {

/// Upper bound on the number of members produced by explicit expansion of a
/// down-set, unless a caller passes its own.
inline constexpr std::size_t kDefaultExpansionBound = std::size_t{1} << 16;

/// A finite family of state sets (an element of the powerset of the powerset
/// of states).
///
/// Two forms are kept:
///   Explicit  the members themselves, strictly increasing under StateSet's
///             total order;
///   DownSet   a nonempty antichain of pairwise incomparable sets, denoting
///             every subset of some antichain element.
/// The empty family is always Explicit. `canonical()` picks DownSet exactly
/// when the family is nonempty and subset closed, which makes structural
/// equality of canonical values coincide with equality of denoted families.
class FamilySet {
public:
    enum class Form { Explicit, DownSet };

    FamilySet() = default;
    static FamilySet empty(std::size_t universe);
    static FamilySet explicit_of(std::size_t universe, std::vector<StateSet> members);
    /// Down-closure of `generators`; non-maximal generators are dropped.
    static FamilySet down_set(std::size_t universe, std::vector<StateSet> generators);

    std::size_t universe() const { return universe_; }
    Form form() const { return form_; }
    bool is_down_set() const { return form_ == Form::DownSet; }

    /// Members (Explicit) or antichain (DownSet).
    const std::vector<StateSet>& elements() const { return elems_; }

    bool is_empty() const { return elems_.empty(); }
    bool contains(const StateSet& p) const;
    /// The inclusion-maximal members.
    std::vector<StateSet> maximal() const;
    /// Every member, in increasing order. Throws ExpansionTooLarge when the
    /// family has more than `bound` members.
    std::vector<StateSet> members(std::size_t bound = kDefaultExpansionBound) const;

    bool is_subset_closed() const;
    FamilySet canonical() const;

    /// Structural order on canonical values, usable as a map key.
    std::strong_ordering key_compare(const FamilySet& o) const;

private:
    FamilySet(std::size_t universe, Form form, std::vector<StateSet> elems)
        : elems_(std::move(elems)), universe_(universe), form_(form) {}

    std::vector<StateSet> elems_;
    std::size_t universe_ = 0;
    Form form_ = Form::Explicit;
};

/// Orders FamilySets by canonical structure (callers canonicalise first).
struct FamilyKeyLess {
    bool operator()(const FamilySet& a, const FamilySet& b) const { return a.key_compare(b) < 0; }
};

/// { p | exists q in f. p subset of q }.
FamilySet ssc(const FamilySet& f);
bool is_subset_closed(const FamilySet& f);
/// Every subset of p, as a DownSet with antichain {p}.
FamilySet powerset_family(const StateSet& p);
/// Explicit list of the subsets of p; ExpansionTooLarge past `bound`.
std::vector<StateSet> powerset_members(const StateSet& p, std::size_t bound = kDefaultExpansionBound);

bool family_le(const FamilySet& f, const FamilySet& g);
bool family_eq(const FamilySet& f, const FamilySet& g);
inline bool operator==(const FamilySet& f, const FamilySet& g) { return family_eq(f, g); }

FamilySet family_union(const FamilySet& f, const FamilySet& g);
/// { r | s : r in f, s in g }.
FamilySet union_product(const FamilySet& f, const FamilySet& g,
                        std::size_t bound = kDefaultExpansionBound);

/// Inclusion-maximal elements of `sets`, sorted and deduplicated.
std::vector<StateSet> maximal_elements(std::vector<StateSet> sets);

}  // namespace hyperlift
