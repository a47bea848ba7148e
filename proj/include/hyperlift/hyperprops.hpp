#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperlift/family.hpp"
#include "hyperlift/lang.hpp"
#include "hyperlift/relation.hpp"
#include "hyperlift/state.hpp"
#include "hyperlift/transformer.hpp"

namespace hyperlift {

/// The indistinguishability relation induced by a set of observable
/// variables: two states are related when every low variable agrees.
class LowView {
public:
    /// Throws UnknownVariable for names not in `space`.
    LowView(StateSpace space, std::vector<std::string> low_vars);

    const StateSpace& space() const { return space_; }
    const std::vector<std::string>& low_vars() const { return low_vars_; }
    /// The equivalence classes, ordered by smallest member.
    const std::vector<StateSet>& classes() const { return classes_; }
    std::size_t class_of(State s) const { return class_index_[s.id]; }
    bool related(State a, State b) const { return class_of(a) == class_of(b); }
    /// The relation itself.
    Rel relation() const;
    /// Every set whose members pairwise agree: the down-set generated by the
    /// classes.
    FamilySet agreement_family() const;

private:
    StateSpace space_;
    std::vector<std::string> low_vars_;
    std::vector<StateSet> classes_;
    std::vector<std::size_t> class_index_;
};

/// p lies inside a single class.
bool agr(const StateSet& p, const LowView& v);

/// s R s2, t R t2 and s ~ t, but not s2 ~ t2.
struct NiWitness {
    State s, s2, t, t2;
};
struct NiResult {
    bool holds = true;
    std::optional<NiWitness> witness;
};
NiResult ni_relational(const Rel& r, const LowView& in, const LowView& out);
inline NiResult ni_relational(const Rel& r, const LowView& v) { return ni_relational(r, v, v); }

/// s ~ t and t R t2, but no successor of s is ~ t2.
struct PossWitness {
    State s, t, t2;
};
struct PossResult {
    bool holds = true;
    std::optional<PossWitness> witness;
};
/// Checks  ~in ; R  contained in  R ; ~out.
PossResult ni_possibilistic(const Rel& r, const LowView& in, const LowView& out);
inline PossResult ni_possibilistic(const Rel& r, const LowView& v) { return ni_possibilistic(r, v, v); }

/// An input class whose image does not agree.
struct HyperWitness {
    StateSet input;
    StateSet image;
};
struct HyperResult {
    bool holds = true;
    std::optional<HyperWitness> witness;
};
/// Every agreeing set is mapped to an agreeing set. Checking the classes
/// suffices because phi is monotone.
HyperResult ni_hyper(const Transformer& phi, const LowView& in, const LowView& out);
HyperResult ni_hyper(const Ast& c, const LowView& in, const LowView& out);
inline HyperResult ni_hyper(const Ast& c, const LowView& v) { return ni_hyper(c, v, v); }
/// Same question one level up: happly(c, A_in) contained in A_out.
bool ni_hyper_lifted(const Ast& c, const LowView& in, const LowView& out);
inline bool ni_hyper_lifted(const Ast& c, const LowView& v) { return ni_hyper_lifted(c, v, v); }

/// A hyperproperty given by a membership test on program denotations.
struct HyperpropertyOracle {
    std::string name;
    std::function<bool(const Rel&)> member;
    /// Claimed, not verified; refinement_preserves may falsify it.
    bool subset_closed = false;
};

HyperpropertyOracle deterministic_ni(LowView v);
HyperpropertyOracle possibilistic_ni(LowView v);

struct RefinementVerdict {
    bool spec_member = false;
    bool impl_member = false;
    /// The implementation keeps the property whenever the specification has it.
    bool preserved = true;
    /// The oracle claims subset closure but the pair refutes it.
    bool closure_claim_refuted = false;
};

/// `impl` must be contained in `spec` (NotARefinement otherwise).
RefinementVerdict refinement_preserves(const HyperpropertyOracle& h, const Rel& spec, const Rel& impl);

}  // namespace hyperlift
