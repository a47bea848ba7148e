#include "hyperlift/family.hpp"

#include <algorithm>

#include "hyperlift/error.hpp"

namespace hyperlift {

namespace {

void check_universe(std::size_t universe, const std::vector<StateSet>& sets) {
    for (const auto& s : sets) {
        if (s.universe() != universe) {
            throw Error(ErrorKind::SpaceMismatch, "state set over " + std::to_string(s.universe()) +
                                                      " states in a family over " + std::to_string(universe));
        }
    }
}

void sort_unique(std::vector<StateSet>& sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

void check_same(const FamilySet& f, const FamilySet& g) {
    if (f.universe() != g.universe()) {
        throw Error(ErrorKind::SpaceMismatch, "families over different state universes");
    }
}

}  // namespace

std::vector<StateSet> maximal_elements(std::vector<StateSet> sets) {
    sort_unique(sets);
    std::stable_sort(sets.begin(), sets.end(),
                     [](const StateSet& a, const StateSet& b) { return a.count() > b.count(); });
    std::vector<StateSet> kept;
    for (const auto& s : sets) {
        const bool dominated =
            std::any_of(kept.begin(), kept.end(), [&](const StateSet& k) { return s.subset_of(k); });
        if (!dominated) kept.push_back(s);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

FamilySet FamilySet::empty(std::size_t universe) { return FamilySet(universe, Form::Explicit, {}); }

FamilySet FamilySet::explicit_of(std::size_t universe, std::vector<StateSet> members) {
    check_universe(universe, members);
    sort_unique(members);
    return FamilySet(universe, Form::Explicit, std::move(members));
}

FamilySet FamilySet::down_set(std::size_t universe, std::vector<StateSet> generators) {
    check_universe(universe, generators);
    if (generators.empty()) return empty(universe);
    return FamilySet(universe, Form::DownSet, maximal_elements(std::move(generators)));
}

bool FamilySet::contains(const StateSet& p) const {
    if (form_ == Form::Explicit) return std::binary_search(elems_.begin(), elems_.end(), p);
    return std::any_of(elems_.begin(), elems_.end(), [&](const StateSet& a) { return p.subset_of(a); });
}

std::vector<StateSet> FamilySet::maximal() const {
    if (form_ == Form::DownSet) return elems_;
    return maximal_elements(elems_);
}

std::vector<StateSet> FamilySet::members(std::size_t bound) const {
    if (form_ == Form::Explicit) {
        if (elems_.size() > bound) {
            throw Error(ErrorKind::ExpansionTooLarge, std::to_string(elems_.size()) + " members exceed bound");
        }
        return elems_;
    }
    std::vector<StateSet> out;
    for (const auto& a : elems_) {
        if (a.count() >= 63 || (std::size_t{1} << a.count()) > bound) {
            throw Error(ErrorKind::ExpansionTooLarge,
                        "powerset of a " + std::to_string(a.count()) + "-element set exceeds bound");
        }
        for_each_subset(a, [&](const StateSet& s) { out.push_back(s); });
        sort_unique(out);
        if (out.size() > bound) {
            throw Error(ErrorKind::ExpansionTooLarge, "down-set expansion exceeds bound");
        }
    }
    return out;
}

bool FamilySet::is_subset_closed() const {
    if (form_ == Form::DownSet) return true;
    // Closed under removing one element implies closed under all subsets.
    for (const auto& m : elems_) {
        bool ok = true;
        m.for_each([&](State s) {
            if (!ok) return;
            StateSet smaller = m;
            smaller.erase(s);
            ok = std::binary_search(elems_.begin(), elems_.end(), smaller);
        });
        if (!ok) return false;
    }
    return true;
}

FamilySet FamilySet::canonical() const {
    if (form_ == Form::Explicit && !elems_.empty() && is_subset_closed()) {
        return FamilySet(universe_, Form::DownSet, maximal_elements(elems_));
    }
    return *this;
}

std::strong_ordering FamilySet::key_compare(const FamilySet& o) const {
    if (auto c = universe_ <=> o.universe_; c != 0) return c;
    if (auto c = form_ <=> o.form_; c != 0) return c;
    return std::lexicographical_compare_three_way(elems_.begin(), elems_.end(), o.elems_.begin(),
                                                  o.elems_.end());
}

FamilySet ssc(const FamilySet& f) {
    if (f.is_down_set() || f.is_empty()) return f;
    return FamilySet::down_set(f.universe(), f.elements());
}

bool is_subset_closed(const FamilySet& f) { return f.is_subset_closed(); }

FamilySet powerset_family(const StateSet& p) { return FamilySet::down_set(p.universe(), {p}); }

std::vector<StateSet> powerset_members(const StateSet& p, std::size_t bound) {
    return powerset_family(p).members(bound);
}

bool family_le(const FamilySet& f, const FamilySet& g) {
    check_same(f, g);
    if (!f.is_down_set()) {
        return std::all_of(f.elements().begin(), f.elements().end(),
                           [&](const StateSet& p) { return g.contains(p); });
    }
    if (g.is_down_set()) {
        return std::all_of(f.elements().begin(), f.elements().end(),
                           [&](const StateSet& p) { return g.contains(p); });
    }
    // DownSet below Explicit: every subset of every generator must be listed.
    for (const auto& a : f.elements()) {
        if (a.count() >= 63 || (std::size_t{1} << a.count()) > g.elements().size()) return false;
        bool ok = true;
        for_each_subset(a, [&](const StateSet& s) { ok = ok && g.contains(s); });
        if (!ok) return false;
    }
    return true;
}

bool family_eq(const FamilySet& f, const FamilySet& g) {
    check_same(f, g);
    return f.canonical().key_compare(g.canonical()) == 0;
}

FamilySet family_union(const FamilySet& f, const FamilySet& g) {
    check_same(f, g);
    if (f.is_empty()) return g.canonical();
    if (g.is_empty()) return f.canonical();
    if (f.is_down_set() && g.is_down_set()) {
        auto gens = f.elements();
        gens.insert(gens.end(), g.elements().begin(), g.elements().end());
        return FamilySet::down_set(f.universe(), std::move(gens));
    }
    auto all = f.members();
    auto more = g.members();
    all.insert(all.end(), more.begin(), more.end());
    return FamilySet::explicit_of(f.universe(), std::move(all)).canonical();
}

FamilySet union_product(const FamilySet& f, const FamilySet& g, std::size_t bound) {
    check_same(f, g);
    if (f.is_empty() || g.is_empty()) return FamilySet::empty(f.universe());
    std::vector<StateSet> out;
    if (f.is_down_set() && g.is_down_set()) {
        for (const auto& a : f.elements())
            for (const auto& b : g.elements()) out.push_back(a | b);
        return FamilySet::down_set(f.universe(), std::move(out));
    }
    const auto fm = f.members(bound);
    const auto gm = g.members(bound);
    out.reserve(std::min(fm.size() * gm.size(), bound));
    for (const auto& a : fm) {
        for (const auto& b : gm) out.push_back(a | b);
        if (out.size() > 4 * bound) sort_unique(out);
    }
    auto result = FamilySet::explicit_of(f.universe(), std::move(out));
    if (result.elements().size() > bound) {
        throw Error(ErrorKind::ExpansionTooLarge, "union product exceeds bound");
    }
    return result.canonical();
}

}  // namespace hyperlift
