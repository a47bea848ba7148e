#include "hyperlift/hyperprops.hpp"

#include <algorithm>
#include <map>

#include "hyperlift/error.hpp"
#include "hyperlift/hyper.hpp"
#include "hyperlift/semantics.hpp"

namespace hyperlift {

namespace {

void check_views(const Rel& r, const LowView& in, const LowView& out) {
    if (r.size() != in.space().size() || r.size() != out.space().size()) {
        throw Error(ErrorKind::SpaceMismatch, "relation and views over different universes");
    }
}

}  // namespace

LowView::LowView(StateSpace space, std::vector<std::string> low_vars)
    : space_(std::move(space)), low_vars_(std::move(low_vars)) {
    std::vector<std::size_t> idx;
    for (const auto& name : low_vars_) {
        const auto i = space_.index_of(name);
        if (!i) throw Error(ErrorKind::UnknownVariable, "low variable '" + name + "' is not declared");
        idx.push_back(*i);
    }
    std::map<std::vector<std::int64_t>, std::size_t> by_values;
    class_index_.resize(space_.size());
    for (std::uint32_t s = 0; s < space_.size(); ++s) {
        std::vector<std::int64_t> key;
        for (std::size_t i : idx) key.push_back(space_.value(State{s}, i));
        auto [it, fresh] = by_values.emplace(std::move(key), classes_.size());
        if (fresh) classes_.emplace_back(space_.size());
        classes_[it->second].insert(State{s});
        class_index_[s] = it->second;
    }
}

Rel LowView::relation() const {
    Rel r(space_.size());
    for (const auto& c : classes_) {
        c.for_each([&](State a) { c.for_each([&](State b) { r.insert(a, b); }); });
    }
    return r;
}

FamilySet LowView::agreement_family() const { return FamilySet::down_set(space_.size(), classes_); }

bool agr(const StateSet& p, const LowView& v) {
    return std::any_of(v.classes().begin(), v.classes().end(), [&](const StateSet& c) { return p.subset_of(c); });
}

NiResult ni_relational(const Rel& r, const LowView& in, const LowView& out) {
    check_views(r, in, out);
    const std::size_t n = r.size();
    for (std::uint32_t s = 0; s < n; ++s) {
        for (std::uint32_t t = s; t < n; ++t) {
            if (!in.related(State{s}, State{t})) continue;
            std::optional<NiWitness> found;
            r.successors(State{s}).for_each([&](State s2) {
                if (found) return;
                r.successors(State{t}).for_each([&](State t2) {
                    if (!found && !out.related(s2, t2)) found = NiWitness{State{s}, s2, State{t}, t2};
                });
            });
            if (found) return NiResult{false, found};
        }
    }
    return NiResult{true, std::nullopt};
}

PossResult ni_possibilistic(const Rel& r, const LowView& in, const LowView& out) {
    check_views(r, in, out);
    const std::size_t n = r.size();
    for (std::uint32_t s = 0; s < n; ++s) {
        // Output classes reachable from s.
        std::vector<char> reach(out.classes().size());
        r.successors(State{s}).for_each([&](State s2) { reach[out.class_of(s2)] = 1; });
        for (std::uint32_t t = 0; t < n; ++t) {
            if (!in.related(State{s}, State{t})) continue;
            std::optional<PossWitness> found;
            r.successors(State{t}).for_each([&](State t2) {
                if (!found && !reach[out.class_of(t2)]) found = PossWitness{State{s}, State{t}, t2};
            });
            if (found) return PossResult{false, found};
        }
    }
    return PossResult{true, std::nullopt};
}

HyperResult ni_hyper(const Transformer& phi, const LowView& in, const LowView& out) {
    if (phi.universe() != in.space().size() || phi.universe() != out.space().size()) {
        throw Error(ErrorKind::SpaceMismatch, "transformer and views over different universes");
    }
    for (const auto& cls : in.classes()) {
        const StateSet img = phi.apply(cls);
        if (!agr(img, out)) return HyperResult{false, HyperWitness{cls, img}};
    }
    return HyperResult{true, std::nullopt};
}

HyperResult ni_hyper(const Ast& c, const LowView& in, const LowView& out) {
    return ni_hyper(sem_tr(c, in.space()), in, out);
}

bool ni_hyper_lifted(const Ast& c, const LowView& in, const LowView& out) {
    HEval ev(in.space());
    return family_le(ev.happly(c, in.agreement_family()), out.agreement_family());
}

HyperpropertyOracle deterministic_ni(LowView v) {
    return HyperpropertyOracle{"deterministic noninterference",
                               [v = std::move(v)](const Rel& r) { return ni_relational(r, v).holds; }, true};
}

HyperpropertyOracle possibilistic_ni(LowView v) {
    return HyperpropertyOracle{"possibilistic noninterference",
                               [v = std::move(v)](const Rel& r) { return ni_possibilistic(r, v).holds; }, false};
}

RefinementVerdict refinement_preserves(const HyperpropertyOracle& h, const Rel& spec, const Rel& impl) {
    if (spec.size() != impl.size()) throw Error(ErrorKind::SpaceMismatch, "relations over different universes");
    if (!impl.subset_of(spec)) throw Error(ErrorKind::NotARefinement, "implementation has pairs the spec lacks");
    RefinementVerdict v;
    v.spec_member = h.member(spec);
    v.impl_member = h.member(impl);
    v.preserved = !v.spec_member || v.impl_member;
    v.closure_claim_refuted = h.subset_closed && !v.preserved;
    return v;
}

}  // namespace hyperlift
