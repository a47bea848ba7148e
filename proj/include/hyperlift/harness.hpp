#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hyperlift/family.hpp"
#include "hyperlift/lang.hpp"
#include "hyperlift/relation.hpp"

namespace hyperlift {

using Rng = std::mt19937_64;

struct GenConfig {
    std::uint64_t seed = 1;
    int max_depth = 3;
    std::size_t max_vars = 2;
    /// Largest number of values of one variable.
    std::int64_t max_range = 8;
    /// Exact number of states, or 0 for any size up to max_states.
    std::size_t states = 0;
    std::size_t max_states = 10;
    bool allow_choice = true;
    bool allow_nondet_atoms = true;
    bool allow_loops = true;
};

/// The configuration for trial `index` of a battery: same settings, seed
/// derived from cfg.seed and the index.
GenConfig for_trial(const GenConfig& cfg, std::size_t index);

/// A random well-formed program. Most loops have the shape
/// `while x < k { c; x := x + 1 }` so they usually terminate; a few have
/// arbitrary guards. Deterministic given cfg.
ProgramFile gen_program(const GenConfig& cfg);
/// A random space of exactly `states` states with at most `max_vars`
/// variables, each ranging over 0..w-1.
StateSpace gen_space(std::size_t states, std::size_t max_vars, Rng& rng);

/// Each state gets each successor with probability `density`.
Rel random_relation(std::size_t universe, double density, Rng& rng);
/// Each state gets no successor with probability `undefined`, else one.
Rel random_partial_function(std::size_t universe, double undefined, Rng& rng);
StateSet random_state_set(std::size_t universe, Rng& rng);
/// A random nonempty subset-closed family.
FamilySet random_downset(std::size_t universe, Rng& rng);
/// A random explicit family (usually not subset closed).
FamilySet random_family(std::size_t universe, Rng& rng);

/// Largest universe accepted by enumerate_downsets.
inline constexpr std::size_t kMaxDownsetEnumeration = 5;
/// Calls `f` once for every nonempty subset-closed family over `universe`
/// states, by enumerating antichains. SpaceTooLarge above 5 states.
void enumerate_downsets(std::size_t universe, const std::function<void(const FamilySet&)>& f);
std::vector<FamilySet> enumerate_downsets(std::size_t universe);

/// Down-sets used when a test needs "all queries" but the space is too large
/// to enumerate: every down-set for up to 4 states, otherwise the powersets
/// of the empty set, each singleton, the whole space, and a few fixed
/// random ones.
std::vector<FamilySet> standard_query_battery(std::size_t universe);

struct DiffReport {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::size_t failures = 0;
    /// Program text, input and both values for the first failure.
    std::optional<std::string> first_witness;
    /// Cases where the relaxed comparison held strictly (containment mode).
    std::size_t strict_cases = 0;
    std::optional<std::string> first_strict;
    std::size_t loop_solves = 0;
    std::size_t kleene_checks = 0;
    std::size_t kleene_mismatches = 0;

    bool ok() const { return failures == 0 && kleene_mismatches == 0; }
    std::string summary() const;
};

/// dirimg(sem_rel c, p) = sem_tr(c)(p) for every p, over `trials` programs.
DiffReport diff_prop1(const GenConfig& cfg, std::size_t trials);

struct Thm1Options {
    /// Queries per program; 0 means every down-set (only up to 5 states).
    std::size_t queries = 0;
    /// Compare lift(sem_tr c)(Q) contained in happly(c, Q) instead of
    /// equality, counting strict cases. Used when choice is enabled.
    bool containment = false;
    bool cross_check_kleene = true;
};

/// happly(c, Q) = { sem_tr(c)(p) | p in Q } over `trials` programs and
/// subset-closed queries.
DiffReport diff_thm1(const GenConfig& cfg, std::size_t trials, const Thm1Options& opts = {});

struct Thm1Mismatch {
    std::string program;
    std::string query;
    std::string hyper;
    std::string lifted;
};

/// Looks for a non-subset-closed query at which the hyper semantics
/// (evaluated without the contract check) differs from the lifted
/// transformer semantics.
std::optional<Thm1Mismatch> search_nonclosed_thm1(const GenConfig& cfg, std::size_t trials);

struct RelationSearch {
    std::size_t examined = 0;
    std::size_t found = 0;
    std::optional<Rel> first;
};

/// Every relation over `universe` states (at most 4) whose direct image
/// satisfies PSC although it is not a partial function.
RelationSearch search_psc_nonfunctions(std::size_t universe);

struct JoinSearch {
    std::size_t examined = 0;
    std::optional<std::pair<Rel, Rel>> counterexample;
};

/// Pairs of relations with PSC direct images (over at most 3 states) whose
/// pointwise join fails PSC. With `disjoint_domains` only pairs with
/// disjoint domains are tried.
JoinSearch search_psc_join(std::size_t universe, bool disjoint_domains);

}  // namespace hyperlift
