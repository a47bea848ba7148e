#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hyperlift/relation.hpp"
#include "hyperlift/state.hpp"

namespace hyperlift {

/// Largest universe for which a transformer may be tabulated (2^16 entries).
inline constexpr std::size_t kMaxTableStates = 16;
/// Largest universe for the brute-force checks (PSC, monotonicity, ...).
inline constexpr std::size_t kMaxBruteForceStates = 10;

/// A monotone map from state sets to state sets over one universe.
///
/// Leaves are the direct image of a relation or an explicit table over all
/// 2^n inputs; interior nodes record the operators used to build program
/// denotations (composition, pointwise join, guard filters and the least
/// fixpoint of a loop functional). Evaluation is by structure, so a
/// transformer built from operators never has to be tabulated.
class Transformer {
public:
    Transformer() = default;

    static Transformer image_of(Rel r);
    /// `entries[bits]` is the image of the set with that bit pattern.
    /// Throws SpaceTooLarge above kMaxTableStates and InvalidArgument when
    /// `check_monotone` is set and the table is not monotone.
    static Transformer table(std::size_t universe, std::vector<StateSet> entries, bool check_monotone = true);
    static Transformer identity(std::size_t universe);
    /// The constant-empty transformer.
    static Transformer bottom(std::size_t universe);
    /// p |-> p & guard.
    static Transformer filter(const StateSet& guard);
    /// Least fixpoint of  phi |-> filter(guard);body;phi  join  filter(~guard).
    static Transformer loop(const StateSet& guard, Transformer body);

    std::size_t universe() const { return universe_; }
    StateSet apply(const StateSet& p) const;
    StateSet operator()(const StateSet& p) const { return apply(p); }

    /// The underlying relation when this is a direct-image leaf.
    const Rel* relation() const;
    /// Explicit table of all 2^n images (SpaceTooLarge above kMaxTableStates).
    Transformer tabulate() const;
    bool is_table() const;

    struct Node;

private:
    explicit Transformer(std::shared_ptr<const Node> node, std::size_t universe)
        : node_(std::move(node)), universe_(universe) {}
    friend Transformer join(const Transformer&, const Transformer&);
    friend Transformer compose(const Transformer&, const Transformer&);

    std::shared_ptr<const Node> node_;
    std::size_t universe_ = 0;
};

/// Pointwise union.
Transformer join(const Transformer& phi, const Transformer& psi);
/// Forward composition: phi first, then psi.
Transformer compose(const Transformer& phi, const Transformer& psi);

/// s R t iff t in phi{s}.
Rel rel_recover(const Transformer& phi);

/// { x | phi{x} nonempty }.
StateSet dom(const Transformer& phi);
/// phi(empty) = empty and phi(p) = union of phi{x} over x in p, for all p.
bool is_univ_disjunctive(const Transformer& phi);
bool is_monotone(const Transformer& phi);
/// phi1 below phi2 at every argument.
bool transformer_le(const Transformer& a, const Transformer& b);
bool transformer_eq(const Transformer& a, const Transformer& b);

struct PscWitness {
    StateSet q;  // a query ...
    StateSet r;  // ... and a subset of its image that no subset of q maps onto
};

struct PscResult {
    bool holds = true;
    std::optional<PscWitness> witness;
};

/// Checks: for all q and r subset of phi q there is s subset of q with
/// phi s = r. Queries are visited in increasing bit order, so the witness is
/// the first failing q together with its smallest unreachable r.
PscResult psc_check(const Transformer& phi);

}  // namespace hyperlift
