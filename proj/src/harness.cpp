#include "hyperlift/harness.hpp"

#include <algorithm>
#include <sstream>

#include "hyperlift/error.hpp"
#include "hyperlift/hyper.hpp"
#include "hyperlift/notation.hpp"
#include "hyperlift/semantics.hpp"
#include "hyperlift/transformer.hpp"

namespace hyperlift {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

void factorizations(std::size_t n, std::size_t max_parts, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (n == 1) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    if (cur.size() == max_parts) return;
    for (std::size_t f = 2; f <= n; ++f) {
        if (n % f) continue;
        cur.push_back(f);
        factorizations(n / f, max_parts, cur, out);
        cur.pop_back();
    }
}

class ProgramGen {
public:
    ProgramGen(const GenConfig& cfg, const StateSpace& space, Rng& rng) : cfg_(cfg), space_(space), rng_(rng) {}

    Ast command(int depth) {
        if (depth <= 0) return chance(rng_, 0.85) ? atom() : Ast::skip();
        struct Option {
            double weight;
            int kind;
        };
        std::vector<Option> options{{3, 0}, {0.5, 1}, {3, 2}, {2, 3}};
        if (cfg_.allow_loops) options.push_back({1.5, 4});
        if (cfg_.allow_choice) options.push_back({1.5, 5});
        std::vector<double> weights;
        for (const auto& o : options) weights.push_back(o.weight);
        const int kind = options[std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng_)].kind;
        switch (kind) {
            case 0: return atom();
            case 1: return Ast::skip();
            case 2: return Ast::seq(command(depth - 1), command(depth - 1));
            case 3: return Ast::if_else(guard(), command(depth - 1), command(depth - 1));
            case 4: return loop(depth);
            default: return Ast::choice(command(depth - 1), command(depth - 1));
        }
    }

private:
    std::size_t pick_var() { return static_cast<std::size_t>(uniform(rng_, 0, space_.variables().size() - 1)); }
    const StateSpace::Variable& var(std::size_t i) const { return space_.variables()[i]; }
    IntExpr var_ref(std::size_t i) const { return IntExpr::variable(var(i).name); }
    IntExpr in_range_constant(std::size_t i) { return IntExpr::constant(uniform(rng_, var(i).lo, var(i).hi)); }

    IntExpr value_for(std::size_t i) {
        const std::size_t j = pick_var();
        switch (uniform(rng_, 0, 5)) {
            case 0: return in_range_constant(i);
            case 1: return IntExpr::binary(IntExpr::Op::Add, var_ref(i), IntExpr::constant(1));
            case 2: return IntExpr::binary(IntExpr::Op::Sub, var_ref(i), IntExpr::constant(1));
            case 3: return var_ref(j);
            case 4: return IntExpr::binary(IntExpr::Op::Add, var_ref(i), var_ref(j));
            default:
                // Reflection inside the range: lo + hi - x.
                return IntExpr::binary(IntExpr::Op::Sub, IntExpr::constant(var(i).lo + var(i).hi), var_ref(i));
        }
    }

    BoolExpr comparison() {
        static constexpr CmpOp ops[] = {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge};
        const CmpOp op = ops[uniform(rng_, 0, 5)];
        const std::size_t i = pick_var();
        if (space_.variables().size() > 1 && chance(rng_, 0.25)) {
            return BoolExpr::compare(op, var_ref(i), var_ref(pick_var()));
        }
        return BoolExpr::compare(op, var_ref(i), in_range_constant(i));
    }

    BoolExpr guard() {
        switch (uniform(rng_, 0, 9)) {
            case 0: return BoolExpr::both(comparison(), comparison());
            case 1: return BoolExpr::either(comparison(), comparison());
            case 2: return BoolExpr::negation(comparison());
            default: return comparison();
        }
    }

    Ast atom() {
        const bool nondet = cfg_.allow_choice && cfg_.allow_nondet_atoms && chance(rng_, 0.3);
        const std::size_t i = pick_var();
        if (!nondet) {
            if (chance(rng_, 0.15)) return Ast::make_atom(AssumeB{guard()});
            return Ast::make_atom(Assign{var(i).name, value_for(i)});
        }
        switch (uniform(rng_, 0, 3)) {
            case 0: return Ast::make_atom(Havoc{var(i).name});
            case 1: return Ast::make_atom(relation_literal());
            default: {
                std::int64_t a = uniform(rng_, var(i).lo, var(i).hi);
                std::int64_t b = uniform(rng_, var(i).lo, var(i).hi);
                if (a > b) std::swap(a, b);
                if (chance(rng_, 0.3)) {
                    return Ast::make_atom(NondetAssign{var(i).name, var_ref(i), IntExpr::constant(b)});
                }
                return Ast::make_atom(NondetAssign{var(i).name, IntExpr::constant(a), IntExpr::constant(b)});
            }
        }
    }

    RelLiteral relation_literal() {
        RelLiteral lit;
        const auto pairs = uniform(rng_, 1, 4);
        for (std::int64_t k = 0; k < pairs; ++k) {
            const State a{static_cast<std::uint32_t>(uniform(rng_, 0, space_.size() - 1))};
            const State b{static_cast<std::uint32_t>(uniform(rng_, 0, space_.size() - 1))};
            lit.pairs.emplace_back(assignment(a), assignment(b));
        }
        return lit;
    }

    Assignment assignment(State s) const {
        Assignment a;
        for (std::size_t i = 0; i < space_.variables().size(); ++i) a[var(i).name] = space_.value(s, i);
        return a;
    }

    Ast loop(int depth) {
        if (chance(rng_, 0.15)) return Ast::while_loop(guard(), command(depth - 1));
        std::size_t i = pick_var();
        for (int tries = 0; tries < 4 && var(i).width() < 2; ++tries) i = pick_var();
        const std::int64_t bound = var(i).width() < 2 ? var(i).hi : uniform(rng_, var(i).lo + 1, var(i).hi);
        Ast step = Ast::make_atom(Assign{var(i).name, IntExpr::binary(IntExpr::Op::Add, var_ref(i), IntExpr::constant(1))});
        return Ast::while_loop(BoolExpr::compare(CmpOp::Lt, var_ref(i), IntExpr::constant(bound)),
                               Ast::seq(command(depth - 1), std::move(step)));
    }

    const GenConfig& cfg_;
    const StateSpace& space_;
    Rng& rng_;
};

std::string describe(const ProgramFile& prog) { return to_source(prog); }

}  // namespace

GenConfig for_trial(const GenConfig& cfg, std::size_t index) {
    GenConfig out = cfg;
    out.seed = splitmix(cfg.seed ^ splitmix(index + 1));
    return out;
}

StateSpace gen_space(std::size_t states, std::size_t max_vars, Rng& rng) {
    static const char* names[] = {"x", "y", "z", "w", "u", "v"};
    if (states == 0) throw Error(ErrorKind::InvalidArgument, "a state space needs at least one state");
    std::vector<StateSpace::Variable> vars;
    if (states == 1) {
        vars.push_back({"x", 0, 0});
        return StateSpace(std::move(vars));
    }
    std::vector<std::vector<std::size_t>> options;
    std::vector<std::size_t> cur;
    factorizations(states, std::clamp<std::size_t>(max_vars, 1, 6), cur, options);
    const auto& pick = options[static_cast<std::size_t>(uniform(rng, 0, options.size() - 1))];
    for (std::size_t k = 0; k < pick.size(); ++k) {
        vars.push_back({names[k], 0, static_cast<std::int64_t>(pick[k]) - 1});
    }
    return StateSpace(std::move(vars));
}

ProgramFile gen_program(const GenConfig& cfg) {
    Rng rng(cfg.seed);
    std::size_t states = cfg.states;
    if (states == 0) states = static_cast<std::size_t>(uniform(rng, 2, std::max<std::size_t>(cfg.max_states, 2)));
    StateSpace space = gen_space(states, cfg.max_vars, rng);
    ProgramGen gen(cfg, space, rng);
    Ast body = gen.command(cfg.max_depth);
    return ProgramFile{std::move(space), {}, {}, {}, std::move(body)};
}

Rel random_relation(std::size_t universe, double density, Rng& rng) {
    Rel r(universe);
    for (std::uint32_t a = 0; a < universe; ++a) {
        for (std::uint32_t b = 0; b < universe; ++b) {
            if (chance(rng, density)) r.insert(State{a}, State{b});
        }
    }
    return r;
}

Rel random_partial_function(std::size_t universe, double undefined, Rng& rng) {
    Rel r(universe);
    for (std::uint32_t a = 0; a < universe; ++a) {
        if (chance(rng, undefined)) continue;
        r.insert(State{a}, State{static_cast<std::uint32_t>(uniform(rng, 0, universe - 1))});
    }
    return r;
}

StateSet random_state_set(std::size_t universe, Rng& rng) {
    static constexpr double densities[] = {0.2, 0.5, 0.8};
    const double d = densities[uniform(rng, 0, 2)];
    StateSet p(universe);
    for (std::uint32_t s = 0; s < universe; ++s) {
        if (chance(rng, d)) p.insert(State{s});
    }
    return p;
}

FamilySet random_downset(std::size_t universe, Rng& rng) {
    std::vector<StateSet> gens;
    const auto k = uniform(rng, 1, 3);
    for (std::int64_t i = 0; i < k; ++i) gens.push_back(random_state_set(universe, rng));
    return FamilySet::down_set(universe, std::move(gens));
}

FamilySet random_family(std::size_t universe, Rng& rng) {
    std::vector<StateSet> members;
    const auto k = uniform(rng, 1, 4);
    for (std::int64_t i = 0; i < k; ++i) members.push_back(random_state_set(universe, rng));
    return FamilySet::explicit_of(universe, std::move(members));
}

void enumerate_downsets(std::size_t universe, const std::function<void(const FamilySet&)>& f) {
    if (universe > kMaxDownsetEnumeration) {
        throw Error(ErrorKind::SpaceTooLarge,
                    "down-set enumeration needs at most " + std::to_string(kMaxDownsetEnumeration) + " states");
    }
    const std::uint64_t subsets = std::uint64_t{1} << universe;
    std::vector<StateSet> chosen;
    // Antichains listed in increasing index order, each exactly once.
    std::function<void(std::uint64_t)> extend = [&](std::uint64_t start) {
        for (std::uint64_t bits = start; bits < subsets; ++bits) {
            const StateSet s = StateSet::from_bits(universe, bits);
            const bool free = std::none_of(chosen.begin(), chosen.end(), [&](const StateSet& c) {
                return c.subset_of(s) || s.subset_of(c);
            });
            if (!free) continue;
            chosen.push_back(s);
            f(FamilySet::down_set(universe, chosen));
            extend(bits + 1);
            chosen.pop_back();
        }
    };
    extend(0);
}

std::vector<FamilySet> enumerate_downsets(std::size_t universe) {
    std::vector<FamilySet> out;
    enumerate_downsets(universe, [&](const FamilySet& q) { out.push_back(q); });
    return out;
}

std::vector<FamilySet> standard_query_battery(std::size_t universe) {
    if (universe <= 4) return enumerate_downsets(universe);
    std::vector<FamilySet> out;
    out.push_back(powerset_family(StateSet(universe)));
    for (std::uint32_t s = 0; s < universe; ++s) out.push_back(powerset_family(StateSet::singleton(universe, State{s})));
    out.push_back(powerset_family(StateSet::full(universe)));
    Rng rng(0x5eed + universe);
    for (int i = 0; i < 8; ++i) out.push_back(random_downset(universe, rng));
    return out;
}

std::string DiffReport::summary() const {
    std::ostringstream os;
    os << "trials=" << trials << " checks=" << checks << " failures=" << failures;
    if (strict_cases) os << " strict=" << strict_cases;
    if (kleene_checks) os << " kleene_agree=" << (kleene_checks - kleene_mismatches) << "/" << kleene_checks;
    return os.str();
}

DiffReport diff_prop1(const GenConfig& cfg, std::size_t trials) {
    DiffReport report;
    for (std::size_t i = 0; i < trials; ++i) {
        const ProgramFile prog = gen_program(for_trial(cfg, i));
        const std::size_t n = prog.space.size();
        if (n > kMaxBruteForceStates) {
            throw Error(ErrorKind::SpaceTooLarge, "exhaustive comparison needs at most 10 states");
        }
        const Rel r = sem_rel(prog.body, prog.space);
        const Transformer t = sem_tr(prog.body, prog.space);
        ++report.trials;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            const StateSet p = StateSet::from_bits(n, bits);
            const StateSet rel_side = dirimg(r, p);
            const StateSet tr_side = t.apply(p);
            ++report.checks;
            if (rel_side == tr_side) continue;
            ++report.failures;
            if (!report.first_witness) {
                report.first_witness = describe(prog) + "\ninput " + format_state_set(p, prog.space) + "\nrelational " +
                                       format_state_set(rel_side, prog.space) + "\ntransformer " +
                                       format_state_set(tr_side, prog.space);
            }
        }
    }
    return report;
}

DiffReport diff_thm1(const GenConfig& cfg, std::size_t trials, const Thm1Options& opts) {
    DiffReport report;
    for (std::size_t i = 0; i < trials; ++i) {
        const GenConfig trial = for_trial(cfg, i);
        const ProgramFile prog = gen_program(trial);
        const std::size_t n = prog.space.size();
        const Transformer t = sem_tr(prog.body, prog.space);
        HEval::Options eopts;
        eopts.cross_check_kleene = opts.cross_check_kleene;
        HEval ev(prog.space, eopts);

        std::vector<FamilySet> queries;
        if (opts.queries == 0) {
            queries = enumerate_downsets(n);
        } else {
            Rng rng(splitmix(trial.seed));
            for (std::size_t k = 0; k < opts.queries; ++k) queries.push_back(random_downset(n, rng));
        }
        ++report.trials;
        for (const auto& q : queries) {
            const FamilySet hyper = ev.happly(prog.body, q);
            const FamilySet lifted = lift_apply(t, q);
            ++report.checks;
            const bool equal = family_eq(hyper, lifted);
            const bool ok = opts.containment ? family_le(lifted, hyper) : equal;
            auto text = [&] {
                return describe(prog) + "\nquery " + format_family(q, prog.space) + "\nhyper " +
                       format_family(hyper, prog.space) + "\nlifted " + format_family(lifted, prog.space);
            };
            if (!ok) {
                ++report.failures;
                if (!report.first_witness) report.first_witness = text();
            } else if (!equal) {
                ++report.strict_cases;
                if (!report.first_strict) report.first_strict = text();
            }
        }
        report.loop_solves += ev.stats().loop_solves;
        report.kleene_checks += ev.stats().kleene_checks;
        report.kleene_mismatches += ev.stats().kleene_mismatches;
    }
    return report;
}

std::optional<Thm1Mismatch> search_nonclosed_thm1(const GenConfig& cfg, std::size_t trials) {
    GenConfig base = cfg;
    base.allow_choice = false;
    base.allow_nondet_atoms = false;
    for (std::size_t i = 0; i < trials; ++i) {
        const GenConfig trial = for_trial(base, i);
        const ProgramFile prog = gen_program(trial);
        const std::size_t n = prog.space.size();
        HEval::Options eopts;
        eopts.strict_ssc = false;
        HEval ev(prog.space, eopts);
        const Transformer t = sem_tr(prog.body, prog.space);
        Rng rng(splitmix(trial.seed));
        for (int k = 0; k < 8; ++k) {
            const FamilySet q = random_family(n, rng);
            if (q.is_subset_closed()) continue;
            const FamilySet hyper = ev.happly(prog.body, q);
            const FamilySet lifted = lift_apply(t, q);
            if (!family_eq(hyper, lifted)) {
                return Thm1Mismatch{to_source(prog), format_family(q, prog.space), format_family(hyper, prog.space),
                                    format_family(lifted, prog.space)};
            }
        }
    }
    return std::nullopt;
}

RelationSearch search_psc_nonfunctions(std::size_t universe) {
    if (universe > 4) throw Error(ErrorKind::SpaceTooLarge, "relation search needs at most 4 states");
    RelationSearch out;
    const std::size_t pairs = universe * universe;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
        Rel r(universe);
        for (std::size_t k = 0; k < pairs; ++k) {
            if (bits >> k & 1) r.insert(State{static_cast<std::uint32_t>(k / universe)}, State{static_cast<std::uint32_t>(k % universe)});
        }
        ++out.examined;
        if (is_partial_function(r)) continue;
        if (!psc_check(Transformer::image_of(r)).holds) continue;
        ++out.found;
        if (!out.first) out.first = r;
    }
    return out;
}

JoinSearch search_psc_join(std::size_t universe, bool disjoint_domains) {
    if (universe > 3) throw Error(ErrorKind::SpaceTooLarge, "join search needs at most 3 states");
    std::vector<Rel> psc;
    const std::size_t pairs = universe * universe;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
        Rel r(universe);
        for (std::size_t k = 0; k < pairs; ++k) {
            if (bits >> k & 1) r.insert(State{static_cast<std::uint32_t>(k / universe)}, State{static_cast<std::uint32_t>(k % universe)});
        }
        if (psc_check(Transformer::image_of(r)).holds) psc.push_back(std::move(r));
    }
    JoinSearch out;
    for (const auto& f : psc) {
        for (const auto& g : psc) {
            if (disjoint_domains && !(f.domain() & g.domain()).empty()) continue;
            ++out.examined;
            if (!psc_check(join(Transformer::image_of(f), Transformer::image_of(g))).holds) {
                out.counterexample = std::make_pair(f, g);
                return out;
            }
        }
    }
    return out;
}

}  // namespace hyperlift
