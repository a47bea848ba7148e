#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlift/family.hpp"
#include "hyperlift/lang.hpp"
#include "hyperlift/transformer.hpp"

namespace hyperlift {

/// Semantics used for `while` at the family level.
///   Paper    least fixpoint of  Phi |-> ([c] ; Phi) <b> [skip]
///   NaiveK   least fixpoint of  Phi |-> [b];[c];Phi  join  [not b]  (outer join)
///   OtimesK  the iterates of the same functional with the singleton-query
///            join in place of the outer join, taken where they stabilise
enum class LoopVariant { Paper, NaiveK, OtimesK };

std::string_view to_string(LoopVariant v);
std::optional<LoopVariant> parse_loop_variant(std::string_view text);

/// A map on families of state sets.
using HTransformer = std::function<FamilySet(const FamilySet&)>;

/// The image of the bottom transformer: empty for the empty family, {{}}
/// otherwise.
FamilySet pbot(const FamilySet& q);

/// { phi p | p in q }.
FamilySet lift_apply(const Transformer& phi, const FamilySet& q, std::size_t bound = kDefaultExpansionBound);
/// { r[p] | p in q }. Down-sets stay symbolic when r is a partial function.
FamilySet lift_rel(const Rel& r, const FamilySet& q, std::size_t bound = kDefaultExpansionBound);
HTransformer lift(Transformer phi);

/// Inner join: { r | s : p in q, r in Phi(pow p), s in Psi(pow p) }.
FamilySet ijoin(const HTransformer& phi, const HTransformer& psi, const FamilySet& q);
/// Singleton-query join: { r | s : p in q, r in Phi{p}, s in Psi{p} }.
FamilySet otimes(const HTransformer& phi, const HTransformer& psi, const FamilySet& q,
                 std::size_t bound = kDefaultExpansionBound);
/// Hyper-conditional:
///   { r | s : p in q, r in Phi(pow(p & guard)), s in Psi(pow(p - guard)) }.
FamilySet hycond(const StateSet& guard, const HTransformer& phi, const HTransformer& psi, const FamilySet& q);
/// Pointwise (outer) join: Phi q union Psi q.
FamilySet outer_join(const HTransformer& phi, const HTransformer& psi, const FamilySet& q);

/// Evaluates the family-level semantics of commands over one state space.
///
/// Loops are solved on demand: starting from the query, the queries each
/// loop equation depends on are discovered (one per generator of the query
/// for the Paper variant) and the resulting finite system is solved by
/// chaotic iteration from the bottom value. Solved loop values are memoised
/// per (loop node, query), so the commands passed in must outlive the
/// evaluator. One HEval must not be used from several threads at once.
class HEval {
public:
    struct Options {
        LoopVariant variant = LoopVariant::Paper;
        /// Reject (rather than warn about) queries outside the nonempty
        /// subset-closed families when evaluating with the Paper variant.
        bool strict_ssc = true;
        std::size_t expansion_bound = kDefaultExpansionBound;
        /// Re-solve every loop with plain Kleene iteration and count
        /// disagreements in Stats.
        bool cross_check_kleene = false;
    };

    struct Stats {
        std::size_t loop_solves = 0;
        std::size_t reachable_queries = 0;
        std::size_t kleene_checks = 0;
        std::size_t kleene_mismatches = 0;
        std::vector<std::string> warnings;
    };

    explicit HEval(StateSpace space) : HEval(std::move(space), Options{}) {}
    HEval(StateSpace space, Options options);

    /// Top-level evaluation; enforces the query contract.
    FamilySet happly(const Ast& c, const FamilySet& q);
    /// Evaluation without the top-level contract check.
    FamilySet eval(const Ast& c, const FamilySet& q);

    FamilySet ijoin_apply(const Ast& c, const Ast& d, const FamilySet& q);
    FamilySet otimes_apply(const Ast& c, const Ast& d, const FamilySet& q);
    FamilySet hycond_apply(const BoolExpr& b, const Ast& c, const Ast& d, const FamilySet& q);

    /// Values at q of the iterates 0..k of the loop functional of the
    /// configured variant, starting from the bottom h-transformer.
    std::vector<FamilySet> loop_iterates(const Ast& loop, const FamilySet& q, std::size_t k);
    /// Least fixpoint at q by demand-driven chaotic iteration.
    FamilySet lfp_demand(const Ast& loop, const FamilySet& q);
    /// Limit at q of plain Kleene iteration, every iterate computed on all
    /// reachable queries, with every member of a query used as generator.
    FamilySet lfp_kleene(const Ast& loop, const FamilySet& q);

    const StateSpace& space() const { return space_; }
    const Options& options() const { return options_; }
    const Stats& stats() const { return stats_; }

private:
    struct Term {
        std::size_t dep;
        FamilySet combine;
    };
    struct Node {
        FamilySet query;
        std::vector<Term> terms;
        FamilySet extra;
    };
    struct Graph {
        std::vector<Node> nodes;
        std::vector<std::vector<std::size_t>> dependents;
    };
    using QueryMap = std::map<FamilySet, FamilySet, FamilyKeyLess>;

    const Rel& atom_rel(const Ast& atom);
    bool atom_is_function(const Ast& atom);
    const StateSet& guard(const Ast& node);
    HTransformer bind(const Ast& c);

    FamilySet loop_value(const Ast& loop, const FamilySet& q);
    FamilySet body_image(const Ast& loop, const FamilySet& input);
    Graph build_graph(const Ast& loop, const FamilySet& root, bool all_members);
    FamilySet rhs(const Node& node, const std::vector<FamilySet>& values) const;
    std::vector<FamilySet> solve_chaotic(const Graph& g);
    std::vector<FamilySet> solve_jacobi(const Graph& g, std::size_t max_rounds,
                                        std::vector<FamilySet>* root_trace = nullptr);
    std::size_t change_budget(std::size_t nodes) const;

    StateSpace space_;
    Options options_;
    Stats stats_;
    std::map<const Ast*, Rel> atoms_;
    std::map<const Ast*, bool> atom_functional_;
    std::map<const Ast*, StateSet> guards_;
    std::map<const Ast*, QueryMap> loop_memo_;
    std::map<const Ast*, QueryMap> kleene_memo_;
    std::map<const Ast*, QueryMap> body_memo_;
};

/// Convenience wrapper: a fresh evaluator for one evaluation.
FamilySet happly(const Ast& c, const StateSpace& space, const FamilySet& q,
                 LoopVariant variant = LoopVariant::Paper, bool strict_ssc = true);

/// Iterates 0..k at q of the loop `while b { c }`.
std::vector<FamilySet> loop_iterates(const BoolExpr& b, const Ast& c, const StateSpace& space, const FamilySet& q,
                                     std::size_t k, LoopVariant variant);

/// happly(c, q) is contained in happly(d, q) for every query. Queries must be
/// subset closed (NonSubsetClosedQuery otherwise).
bool hrefines(const Ast& c, const Ast& d, const StateSpace& space, const std::vector<FamilySet>& queries);

}  // namespace hyperlift
