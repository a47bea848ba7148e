#include "hyperlift/hyper.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "hyperlift/error.hpp"

namespace hyperlift {

namespace {

FamilySet image_family(const Rel& r, bool functional, const FamilySet& q, std::size_t bound) {
    const std::size_t n = r.size();
    if (q.universe() != n) throw Error(ErrorKind::SpaceMismatch, "query and relation over different universes");
    if (q.is_down_set() && functional) {
        // Every subset of r[a] is the image of a subset of a.
        std::vector<StateSet> gens;
        gens.reserve(q.elements().size());
        for (const auto& a : q.elements()) gens.push_back(dirimg(r, a));
        return FamilySet::down_set(n, std::move(gens));
    }
    std::vector<StateSet> out;
    for (const auto& p : q.members(bound)) out.push_back(dirimg(r, p));
    return FamilySet::explicit_of(n, std::move(out)).canonical();
}

FamilySet singleton_family(const StateSet& p) { return FamilySet::explicit_of(p.universe(), {p}); }

template <class F>
auto blowup_guard(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ExpansionTooLarge) throw;
        throw Error(ErrorKind::QueryBlowup, e.what());
    }
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
    return a * b;
}

}  // namespace

std::string_view to_string(LoopVariant v) {
    switch (v) {
        case LoopVariant::Paper: return "paper";
        case LoopVariant::NaiveK: return "naive-k";
        case LoopVariant::OtimesK: return "otimes-k";
    }
    return "?";
}

std::optional<LoopVariant> parse_loop_variant(std::string_view text) {
    if (text == "paper") return LoopVariant::Paper;
    if (text == "naive-k" || text == "naive") return LoopVariant::NaiveK;
    if (text == "otimes-k" || text == "otimes") return LoopVariant::OtimesK;
    return std::nullopt;
}

FamilySet pbot(const FamilySet& q) {
    if (q.is_empty()) return FamilySet::empty(q.universe());
    return powerset_family(StateSet(q.universe()));
}

FamilySet lift_rel(const Rel& r, const FamilySet& q, std::size_t bound) {
    return image_family(r, is_partial_function(r), q, bound);
}

FamilySet lift_apply(const Transformer& phi, const FamilySet& q, std::size_t bound) {
    if (const Rel* r = phi.relation()) return lift_rel(*r, q, bound);
    if (q.universe() != phi.universe()) {
        throw Error(ErrorKind::SpaceMismatch, "query and transformer over different universes");
    }
    std::vector<StateSet> out;
    for (const auto& p : q.members(bound)) out.push_back(phi.apply(p));
    return FamilySet::explicit_of(q.universe(), std::move(out)).canonical();
}

HTransformer lift(Transformer phi) {
    return [phi = std::move(phi)](const FamilySet& q) { return lift_apply(phi, q); };
}

FamilySet ijoin(const HTransformer& phi, const HTransformer& psi, const FamilySet& q) {
    // Monotonicity lets a down-set be represented by its maximal elements.
    FamilySet acc = FamilySet::empty(q.universe());
    for (const auto& p : q.elements()) {
        const FamilySet below = powerset_family(p);
        acc = family_union(acc, union_product(phi(below), psi(below)));
    }
    return acc;
}

FamilySet otimes(const HTransformer& phi, const HTransformer& psi, const FamilySet& q, std::size_t bound) {
    FamilySet acc = FamilySet::empty(q.universe());
    for (const auto& p : q.members(bound)) {
        const FamilySet one = singleton_family(p);
        acc = family_union(acc, union_product(phi(one), psi(one), bound));
    }
    return acc;
}

FamilySet hycond(const StateSet& guard, const HTransformer& phi, const HTransformer& psi, const FamilySet& q) {
    FamilySet acc = FamilySet::empty(q.universe());
    for (const auto& p : q.elements()) {
        acc = family_union(acc, union_product(phi(powerset_family(p & guard)), psi(powerset_family(p - guard))));
    }
    return acc;
}

FamilySet outer_join(const HTransformer& phi, const HTransformer& psi, const FamilySet& q) {
    return family_union(phi(q), psi(q));
}

HEval::HEval(StateSpace space, Options options) : space_(std::move(space)), options_(options) {}

const Rel& HEval::atom_rel(const Ast& atom) {
    auto it = atoms_.find(&atom);
    if (it == atoms_.end()) {
        Rel r = elaborate_atom(atom.atom, space_);
        atom_functional_[&atom] = is_partial_function(r);
        it = atoms_.emplace(&atom, std::move(r)).first;
    }
    return it->second;
}

bool HEval::atom_is_function(const Ast& atom) {
    atom_rel(atom);
    return atom_functional_.at(&atom);
}

const StateSet& HEval::guard(const Ast& node) {
    auto it = guards_.find(&node);
    if (it == guards_.end()) it = guards_.emplace(&node, eval_bool(node.cond, space_)).first;
    return it->second;
}

HTransformer HEval::bind(const Ast& c) {
    return [this, &c](const FamilySet& q) { return eval(c, q); };
}

FamilySet HEval::happly(const Ast& c, const FamilySet& q) {
    if (q.universe() != space_.size()) {
        throw Error(ErrorKind::SpaceMismatch, "query over " + std::to_string(q.universe()) + " states, space has " +
                                                  std::to_string(space_.size()));
    }
    if (options_.variant == LoopVariant::Paper && (q.is_empty() || !q.is_subset_closed())) {
        const std::string msg = q.is_empty() ? "query is the empty family" : "query is not subset closed";
        if (options_.strict_ssc) throw Error(ErrorKind::NonSubsetClosedQuery, msg);
        stats_.warnings.push_back(msg);
    }
    return blowup_guard([&] { return eval(c, q.canonical()); });
}

FamilySet HEval::eval(const Ast& c, const FamilySet& q) {
    switch (c.kind) {
        case Ast::Kind::Skip: return q.canonical();
        case Ast::Kind::Atom: return image_family(atom_rel(c), atom_is_function(c), q, options_.expansion_bound);
        case Ast::Kind::Seq: return eval(c.second(), eval(c.first(), q));
        case Ast::Kind::Choice: return ijoin(bind(c.first()), bind(c.second()), q);
        case Ast::Kind::If: return hycond(guard(c), bind(c.first()), bind(c.second()), q);
        case Ast::Kind::While: return loop_value(c, q.canonical());
    }
    throw Error(ErrorKind::InvalidArgument, "unknown command kind");
}

FamilySet HEval::ijoin_apply(const Ast& c, const Ast& d, const FamilySet& q) {
    return blowup_guard([&] { return ijoin(bind(c), bind(d), q); });
}

FamilySet HEval::otimes_apply(const Ast& c, const Ast& d, const FamilySet& q) {
    return blowup_guard([&] { return otimes(bind(c), bind(d), q, options_.expansion_bound); });
}

FamilySet HEval::hycond_apply(const BoolExpr& b, const Ast& c, const Ast& d, const FamilySet& q) {
    const StateSet g = eval_bool(b, space_);
    return blowup_guard([&] { return hycond(g, bind(c), bind(d), q); });
}

FamilySet HEval::body_image(const Ast& loop, const FamilySet& input) {
    auto& memo = body_memo_[&loop];
    const FamilySet key = input.canonical();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    FamilySet out = eval(loop.body(), key);
    memo.emplace(key, out);
    return out;
}

HEval::Graph HEval::build_graph(const Ast& loop, const FamilySet& root, bool all_members) {
    const std::size_t n = space_.size();
    const StateSet& g = guard(loop);
    const StateSet not_g = g.complement();
    const Rel keep = Rel::coreflexive(g);
    const Rel leave = Rel::coreflexive(not_g);
    const std::size_t bound = options_.expansion_bound;

    Graph graph;
    std::map<FamilySet, std::size_t, FamilyKeyLess> index;
    auto intern = [&](const FamilySet& f) {
        FamilySet key = f.canonical();
        auto [it, fresh] = index.emplace(key, graph.nodes.size());
        if (fresh) graph.nodes.push_back(Node{std::move(key), {}, FamilySet::empty(n)});
        return it->second;
    };
    intern(root);
    // Dependencies depend only on the query, never on the unknowns, so the
    // graph is fixed before solving.
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        const FamilySet q = graph.nodes[i].query;
        std::vector<Term> terms;
        FamilySet extra = FamilySet::empty(n);
        switch (options_.variant) {
            case LoopVariant::Paper: {
                const std::vector<StateSet> gens = all_members ? q.members(bound) : q.elements();
                for (const auto& p : gens) {
                    const std::size_t dep = intern(body_image(loop, powerset_family(p & g)));
                    terms.push_back(Term{dep, powerset_family(p - g)});
                }
                break;
            }
            case LoopVariant::NaiveK: {
                const std::size_t dep = intern(body_image(loop, image_family(keep, true, q, bound)));
                terms.push_back(Term{dep, powerset_family(StateSet(n))});
                extra = image_family(leave, true, q, bound);
                break;
            }
            case LoopVariant::OtimesK: {
                for (const auto& p : q.members(bound)) {
                    const std::size_t dep = intern(body_image(loop, singleton_family(p & g)));
                    terms.push_back(Term{dep, singleton_family(p - g)});
                }
                break;
            }
        }
        graph.nodes[i].terms = std::move(terms);
        graph.nodes[i].extra = std::move(extra);
    }
    graph.dependents.assign(graph.nodes.size(), {});
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        for (const auto& t : graph.nodes[i].terms) {
            auto& ds = graph.dependents[t.dep];
            if (std::find(ds.begin(), ds.end(), i) == ds.end()) ds.push_back(i);
        }
    }
    return graph;
}

FamilySet HEval::rhs(const Node& node, const std::vector<FamilySet>& values) const {
    FamilySet acc = node.extra;
    for (const auto& t : node.terms) {
        acc = family_union(acc, union_product(values[t.dep], t.combine, options_.expansion_bound));
    }
    return acc.canonical();
}

std::size_t HEval::change_budget(std::size_t nodes) const {
    // A strictly increasing chain of families over n states has at most
    // 2^n + 1 elements.
    const std::size_t n = space_.size();
    const std::size_t height = n >= 63 ? std::numeric_limits<std::size_t>::max() : (std::size_t{1} << n) + 1;
    return saturating_mul(height, std::max<std::size_t>(nodes, 1));
}

std::vector<FamilySet> HEval::solve_chaotic(const Graph& g) {
    const std::size_t count = g.nodes.size();
    std::vector<FamilySet> values;
    values.reserve(count);
    for (const auto& node : g.nodes) values.push_back(pbot(node.query));
    std::deque<std::size_t> work;
    std::vector<char> queued(count, 1);
    for (std::size_t i = count; i-- > 0;) work.push_back(i);
    const std::size_t budget = change_budget(count);
    std::size_t changes = 0;
    while (!work.empty()) {
        const std::size_t i = work.front();
        work.pop_front();
        queued[i] = 0;
        FamilySet next = rhs(g.nodes[i], values);
        if (next.key_compare(values[i]) == 0) continue;
        values[i] = std::move(next);
        if (++changes > budget) {
            throw Error(ErrorKind::IterationBudgetExceeded,
                        "loop equations still changing after " + std::to_string(budget) + " updates");
        }
        for (std::size_t d : g.dependents[i]) {
            if (!queued[d]) {
                queued[d] = 1;
                work.push_back(d);
            }
        }
    }
    return values;
}

std::vector<FamilySet> HEval::solve_jacobi(const Graph& g, std::size_t max_rounds, std::vector<FamilySet>* root_trace) {
    std::vector<FamilySet> values;
    values.reserve(g.nodes.size());
    for (const auto& node : g.nodes) values.push_back(pbot(node.query));
    if (root_trace) root_trace->push_back(values[0]);
    for (std::size_t round = 0; round < max_rounds; ++round) {
        std::vector<FamilySet> next;
        next.reserve(values.size());
        bool stable = true;
        for (const auto& node : g.nodes) {
            next.push_back(rhs(node, values));
            if (next.back().key_compare(values[next.size() - 1]) != 0) stable = false;
        }
        values = std::move(next);
        if (root_trace) {
            root_trace->push_back(values[0]);
        } else if (stable) {
            return values;
        }
    }
    if (root_trace) return values;
    throw Error(ErrorKind::IterationBudgetExceeded,
                "Kleene iteration did not stabilise within " + std::to_string(max_rounds) + " rounds");
}

FamilySet HEval::loop_value(const Ast& loop, const FamilySet& q) {
    auto& memo = loop_memo_[&loop];
    if (auto it = memo.find(q); it != memo.end()) return it->second;
    ++stats_.loop_solves;
    const Graph g = build_graph(loop, q, false);
    stats_.reachable_queries += g.nodes.size();
    FamilySet result;
    if (options_.variant == LoopVariant::OtimesK) {
        const auto values = solve_jacobi(g, change_budget(g.nodes.size()));
        for (std::size_t i = 0; i < g.nodes.size(); ++i) memo.emplace(g.nodes[i].query, values[i]);
        result = values[0];
    } else {
        const auto values = solve_chaotic(g);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) memo.emplace(g.nodes[i].query, values[i]);
        result = values[0];
        if (options_.cross_check_kleene) {
            ++stats_.kleene_checks;
            if (lfp_kleene(loop, q).key_compare(result) != 0) ++stats_.kleene_mismatches;
        }
    }
    return result;
}

std::vector<FamilySet> HEval::loop_iterates(const Ast& loop, const FamilySet& q, std::size_t k) {
    if (loop.kind != Ast::Kind::While) throw Error(ErrorKind::InvalidArgument, "loop_iterates needs a while loop");
    return blowup_guard([&] {
        const Graph g = build_graph(loop, q, true);
        std::vector<FamilySet> trace;
        solve_jacobi(g, k, &trace);
        return trace;
    });
}

FamilySet HEval::lfp_demand(const Ast& loop, const FamilySet& q) {
    if (loop.kind != Ast::Kind::While) throw Error(ErrorKind::InvalidArgument, "lfp_demand needs a while loop");
    return blowup_guard([&] { return loop_value(loop, q.canonical()); });
}

FamilySet HEval::lfp_kleene(const Ast& loop, const FamilySet& q) {
    if (loop.kind != Ast::Kind::While) throw Error(ErrorKind::InvalidArgument, "lfp_kleene needs a while loop");
    auto& memo = kleene_memo_[&loop];
    const FamilySet key = q.canonical();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    FamilySet result = blowup_guard([&] {
        const Graph g = build_graph(loop, key, true);
        return solve_jacobi(g, change_budget(g.nodes.size()))[0];
    });
    memo.emplace(key, result);
    return result;
}

FamilySet happly(const Ast& c, const StateSpace& space, const FamilySet& q, LoopVariant variant, bool strict_ssc) {
    HEval::Options opts;
    opts.variant = variant;
    opts.strict_ssc = strict_ssc;
    HEval ev(space, opts);
    return ev.happly(c, q);
}

std::vector<FamilySet> loop_iterates(const BoolExpr& b, const Ast& c, const StateSpace& space, const FamilySet& q,
                                     std::size_t k, LoopVariant variant) {
    const Ast loop = Ast::while_loop(b, c);
    HEval::Options opts;
    opts.variant = variant;
    opts.strict_ssc = false;
    HEval ev(space, opts);
    return ev.loop_iterates(loop, q, k);
}

bool hrefines(const Ast& c, const Ast& d, const StateSpace& space, const std::vector<FamilySet>& queries) {
    HEval left(space);
    HEval right(space);
    return std::all_of(queries.begin(), queries.end(),
                       [&](const FamilySet& q) { return family_le(left.happly(c, q), right.happly(d, q)); });
}

}  // namespace hyperlift
