#include "hyperlift/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hyperlift/error.hpp"
#include "hyperlift/harness.hpp"
#include "hyperlift/hyper.hpp"
#include "hyperlift/hyperprops.hpp"
#include "hyperlift/lang.hpp"
#include "hyperlift/notation.hpp"
#include "hyperlift/semantics.hpp"

namespace hyperlift::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const Ast* find_loop(const Ast& c) {
    if (c.kind == Ast::Kind::While) return &c;
    for (const auto& child : c.children) {
        if (const Ast* found = find_loop(child)) return found;
    }
    return nullptr;
}

bool json_format(const std::string& format) { return format == "json-like" || format == "json"; }

std::string show_family(const FamilySet& f, const StateSpace& space, bool json) {
    return json ? format_family_json(f, space) : format_family(f, space);
}

std::string show_set(const StateSet& p, const StateSpace& space, bool json) {
    return json ? format_state_set_json(p, space) : format_state_set(p, space);
}

LoopVariant variant_from(const std::string& name) {
    if (auto v = parse_loop_variant(name)) return *v;
    throw Error(ErrorKind::InvalidArgument, "unknown variant '" + name + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relational, transformer and hyper-level semantics of a small imperative language", "hyperlift"};
    app.require_subcommand(1, 1);

    std::string file;
    bool as_source = false;
    auto* parse_cmd = app.add_subcommand("parse", "Print the syntax tree of a program");
    parse_cmd->add_option("file", file, "Program file")->required();
    parse_cmd->add_flag("--source", as_source, "Print normalised source instead of the tree");

    std::string level = "tr";
    std::string input;
    std::string variant = "paper";
    bool no_strict = false;
    std::string format = "text";
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a program on an input");
    eval_cmd->add_option("file", file, "Program file")->required();
    eval_cmd->add_option("--level", level, "rel (state), tr (state set) or hyper (family)")
        ->check(CLI::IsMember({"rel", "tr", "hyper"}));
    eval_cmd->add_option("--input", input, "State, set or family literal")->required();
    eval_cmd->add_option("--variant", variant, "Loop semantics for --level hyper: paper, naive or otimes");
    eval_cmd->add_flag("--no-strict-ssc", no_strict, "Warn instead of failing on queries that are not subset closed");
    eval_cmd->add_option("--format", format, "text or json-like");

    std::size_t steps = 4;
    auto* iter_cmd = app.add_subcommand("iterates", "Print the Kleene iterates of the first loop at a query");
    iter_cmd->add_option("file", file, "Program file")->required();
    iter_cmd->add_option("--query", input, "Family literal")->required();
    iter_cmd->add_option("--steps", steps, "Last iterate to print");
    iter_cmd->add_option("--variant", variant, "paper, naive or otimes");
    iter_cmd->add_option("--format", format, "text or json-like");

    std::string form = "all";
    auto* ni_cmd = app.add_subcommand("check-ni", "Check noninterference for the declared low variables");
    ni_cmd->add_option("file", file, "Program file")->required();
    ni_cmd->add_option("--form", form, "rel, poss, hyper, lifted or all")
        ->check(CLI::IsMember({"rel", "poss", "hyper", "lifted", "all"}));

    bool prop1 = false;
    bool thm1 = false;
    bool nonclosed = false;
    bool with_choice = false;
    std::uint64_t seed = 1;
    std::size_t trials = 20;
    std::size_t states = 0;
    std::size_t queries = 0;
    auto* diff_cmd = app.add_subcommand("diff", "Differential test of two semantics on random programs");
    auto* mode = diff_cmd->add_option_group("mode");
    mode->add_flag("--prop1", prop1, "Relational image against transformer semantics");
    mode->add_flag("--thm1", thm1, "Hyper semantics against lifted transformer semantics");
    mode->add_flag("--nonclosed", nonclosed, "Search a non-subset-closed query where the two differ");
    mode->require_option(1);
    diff_cmd->add_option("--seed", seed, "Seed");
    diff_cmd->add_option("--trials", trials, "Number of programs");
    diff_cmd->add_option("--states", states, "Exact state count (default: random, at most 10 or 4 for --thm1)");
    diff_cmd->add_option("--queries", queries, "Random queries per program for --thm1 (0: every down-set)");
    diff_cmd->add_flag("--choice", with_choice, "Allow choice and nondeterministic atoms in --thm1 (containment only)");

    std::string relfile;
    std::size_t search_nonfn = 0;
    std::size_t search_join = 0;
    bool disjoint = false;
    auto* psc_cmd = app.add_subcommand("psc", "Check PSC for the direct image of a relation, or search");
    psc_cmd->add_option("relfile", relfile, "Relation file");
    psc_cmd->add_option("--search-nonfunctions", search_nonfn, "Search relations over N states that pass but are not functions");
    psc_cmd->add_option("--search-join", search_join, "Search PSC pairs over N states whose join fails PSC");
    psc_cmd->add_flag("--disjoint", disjoint, "Restrict --search-join to disjoint domains");

    std::size_t size = 0;
    bool list = false;
    auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate nonempty subset-closed families");
    enum_cmd->add_option("--size", size, "Number of states (at most 5)")->required();
    enum_cmd->add_flag("--list", list, "Print every family, not only the count");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    const bool json = json_format(format);
    try {
        if (parse_cmd->parsed()) {
            const ProgramFile prog = parse_program(read_file(file));
            for (const auto& w : lint_stuck_assignments(prog.body, prog.space)) err << "warning: " << w << "\n";
            out << (as_source ? to_source(prog) : dump_tree(prog.body) + "\n");
            return kExitOk;
        }

        if (eval_cmd->parsed()) {
            const ProgramFile prog = parse_program(read_file(file));
            const StateSpace& space = prog.space;
            if (level == "rel") {
                const State s = parse_state(input, space);
                const Rel r = sem_rel(prog.body, space);
                out << show_set(r.successors(s), space, json) << "\n";
            } else if (level == "tr") {
                const StateSet p = parse_state_set(input, space);
                out << show_set(sem_tr(prog.body, space).apply(p), space, json) << "\n";
            } else {
                HEval::Options opts;
                opts.variant = variant_from(variant);
                opts.strict_ssc = !no_strict;
                HEval ev(space, opts);
                const FamilySet result = ev.happly(prog.body, parse_family(input, space));
                for (const auto& w : ev.stats().warnings) err << "warning: " << w << "\n";
                out << show_family(result, space, json) << "\n";
            }
            return kExitOk;
        }

        if (iter_cmd->parsed()) {
            const ProgramFile prog = parse_program(read_file(file));
            const Ast* loop = find_loop(prog.body);
            if (!loop) throw Error(ErrorKind::InvalidArgument, "program has no while loop");
            HEval::Options opts;
            opts.variant = variant_from(variant);
            opts.strict_ssc = false;
            HEval ev(prog.space, opts);
            const auto values = ev.loop_iterates(*loop, parse_family(input, prog.space), steps);
            if (json) out << "[";
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (json) {
                    out << (i ? "," : "") << show_family(values[i], prog.space, true);
                } else {
                    out << "Q" << i << " = " << show_family(values[i], prog.space, false) << "\n";
                }
            }
            if (json) out << "]\n";
            return kExitOk;
        }

        if (ni_cmd->parsed()) {
            const ProgramFile prog = parse_program(read_file(file));
            if (prog.input_low().empty() && prog.output_low().empty()) {
                throw Error(ErrorKind::InvalidArgument, "program declares no low variables");
            }
            const LowView in(prog.space, prog.input_low());
            const LowView outv(prog.space, prog.output_low());
            const auto fmt = [&](State s) { return format_state(s, prog.space); };
            bool all = true;
            if (form == "rel" || form == "all") {
                const auto res = ni_relational(sem_rel(prog.body, prog.space), in, outv);
                out << "relational: " << (res.holds ? "true" : "false");
                if (res.witness) {
                    const auto& w = *res.witness;
                    out << "  " << fmt(w.s) << " -> " << fmt(w.s2) << " vs " << fmt(w.t) << " -> " << fmt(w.t2);
                }
                out << "\n";
                all = all && res.holds;
            }
            if (form == "poss" || form == "all") {
                const auto res = ni_possibilistic(sem_rel(prog.body, prog.space), in, outv);
                out << "possibilistic: " << (res.holds ? "true" : "false");
                if (res.witness) {
                    const auto& w = *res.witness;
                    out << "  " << fmt(w.t) << " -> " << fmt(w.t2) << " unmatched from " << fmt(w.s);
                }
                out << "\n";
                all = all && res.holds;
            }
            if (form == "hyper" || form == "all") {
                const auto res = ni_hyper(prog.body, in, outv);
                out << "hyper: " << (res.holds ? "true" : "false");
                if (res.witness) {
                    out << "  " << format_state_set(res.witness->input, prog.space) << " maps to "
                        << format_state_set(res.witness->image, prog.space);
                }
                out << "\n";
                all = all && res.holds;
            }
            if (form == "lifted") {
                const bool holds = ni_hyper_lifted(prog.body, in, outv);
                out << "lifted: " << (holds ? "true" : "false") << "\n";
                all = all && holds;
            }
            return all ? kExitOk : kExitFalse;
        }

        if (diff_cmd->parsed()) {
            GenConfig cfg;
            cfg.seed = seed;
            cfg.states = states;
            if (nonclosed) {
                if (!states) cfg.max_states = 8;
                const auto found = search_nonclosed_thm1(cfg, trials);
                if (!found) {
                    out << "no mismatch in " << trials << " programs\n";
                    return kExitOk;
                }
                out << "mismatch\n" << found->program << "query  " << found->query << "\nhyper  " << found->hyper
                    << "\nlifted " << found->lifted << "\n";
                return kExitFalse;
            }
            DiffReport report;
            if (prop1) {
                report = diff_prop1(cfg, trials);
            } else {
                cfg.allow_choice = with_choice;
                cfg.allow_nondet_atoms = with_choice;
                if (!states) cfg.max_states = queries ? 8 : 4;
                Thm1Options opts;
                opts.queries = queries;
                opts.containment = with_choice;
                report = diff_thm1(cfg, trials, opts);
            }
            out << report.summary() << "\n";
            if (report.first_witness) out << "first failure:\n" << *report.first_witness << "\n";
            if (report.first_strict) out << "first strict containment:\n" << *report.first_strict << "\n";
            return report.ok() ? kExitOk : kExitFalse;
        }

        if (psc_cmd->parsed()) {
            if (search_nonfn) {
                const auto res = search_psc_nonfunctions(search_nonfn);
                out << "examined " << res.examined << " relations, found " << res.found << "\n";
                if (res.first) {
                    const StateSpace sp({{"s", 0, static_cast<std::int64_t>(search_nonfn) - 1}});
                    out << format_relation(*res.first, sp);
                }
                return res.found ? kExitOk : kExitFalse;
            }
            if (search_join) {
                const auto res = search_psc_join(search_join, disjoint);
                out << "examined " << res.examined << " pairs\n";
                if (!res.counterexample) {
                    out << "no pair found whose join fails PSC\n";
                    return kExitOk;
                }
                const StateSpace sp({{"s", 0, static_cast<std::int64_t>(search_join) - 1}});
                out << "first relation:\n"
                    << format_relation(res.counterexample->first, sp) << "second relation:\n"
                    << format_relation(res.counterexample->second, sp);
                return kExitFalse;
            }
            if (relfile.empty()) throw Error(ErrorKind::InvalidArgument, "psc needs a relation file or a search option");
            const RelationFile rf = parse_relation_file(read_file(relfile));
            const PscResult res = psc_check(Transformer::image_of(rf.rel));
            if (res.holds) {
                out << "PSC holds\n";
                return kExitOk;
            }
            out << "PSC fails: q = " << format_state_set(res.witness->q, rf.space)
                << ", r = " << format_state_set(res.witness->r, rf.space) << "\n";
            return kExitFalse;
        }

        if (enum_cmd->parsed()) {
            std::size_t count = 0;
            const StateSpace sp({{"s", 0, static_cast<std::int64_t>(std::max<std::size_t>(size, 1)) - 1}});
            if (size == 0) {
                // A zero-state space has only the family {{}}.
                out << (list ? "[[]]\n" : "") << "count " << 1 << "\n";
                return kExitOk;
            }
            enumerate_downsets(size, [&](const FamilySet& f) {
                ++count;
                if (list) out << format_family(f, sp) << "\n";
            });
            out << "count " << count << "\n";
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace hyperlift::cli
