#pragma once

// Brute-force reference semantics for the tests. Deliberately shares no
// code with the library beyond parsing and expression evaluation: states are
// plain integers, sets are std::set, families are sets of bit masks.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "hyperlift/lang.hpp"

namespace oracle {

using hyperlift::Ast;
using hyperlift::StateSpace;

using States = std::set<std::uint32_t>;
using Mask = std::uint64_t;
using Family = std::set<Mask>;

inline bool holds(const hyperlift::BoolExpr& b, const StateSpace& sp, std::uint32_t s) {
    return hyperlift::eval_bool_at(b, sp, hyperlift::State{s});
}

/// Final states of running one atom from s.
inline States run_atom(const hyperlift::AtomDef& a, const StateSpace& sp, std::uint32_t s) {
    States out;
    const hyperlift::State st{s};
    auto set_var = [&](const std::string& name, std::int64_t v) {
        const auto i = *sp.index_of(name);
        if (sp.in_range(i, v)) out.insert(sp.with_value(st, i, v).id);
    };
    if (const auto* as = std::get_if<hyperlift::Assign>(&a)) {
        set_var(as->var, hyperlift::eval_int(as->value, sp, st));
    } else if (const auto* ab = std::get_if<hyperlift::AssumeB>(&a)) {
        if (holds(ab->cond, sp, s)) out.insert(s);
    } else if (const auto* nd = std::get_if<hyperlift::NondetAssign>(&a)) {
        const auto lo = hyperlift::eval_int(nd->lo, sp, st);
        const auto hi = hyperlift::eval_int(nd->hi, sp, st);
        for (auto v = lo; v <= hi; ++v) set_var(nd->var, v);
    } else if (const auto* hv = std::get_if<hyperlift::Havoc>(&a)) {
        const auto& var = sp.variables()[*sp.index_of(hv->var)];
        for (auto v = var.lo; v <= var.hi; ++v) set_var(hv->var, v);
    } else {
        for (const auto& [from, to] : std::get<hyperlift::RelLiteral>(a).pairs) {
            if (sp.encode(from).id == s) out.insert(sp.encode(to).id);
        }
    }
    return out;
}

/// Final states of c from s: a big-step interpreter in which a loop explores
/// every head state reachable from s and collects those where the guard fails.
inline States run(const Ast& c, const StateSpace& sp, std::uint32_t s) {
    switch (c.kind) {
        case Ast::Kind::Skip: return {s};
        case Ast::Kind::Atom: return run_atom(c.atom, sp, s);
        case Ast::Kind::Seq: {
            States out;
            for (auto m : run(c.first(), sp, s)) {
                for (auto t : run(c.second(), sp, m)) out.insert(t);
            }
            return out;
        }
        case Ast::Kind::Choice: {
            States out = run(c.first(), sp, s);
            for (auto t : run(c.second(), sp, s)) out.insert(t);
            return out;
        }
        case Ast::Kind::If: return holds(c.cond, sp, s) ? run(c.first(), sp, s) : run(c.second(), sp, s);
        case Ast::Kind::While: {
            States seen{s}, out;
            std::vector<std::uint32_t> todo{s};
            while (!todo.empty()) {
                const auto h = todo.back();
                todo.pop_back();
                if (!holds(c.cond, sp, h)) {
                    out.insert(h);
                    continue;
                }
                for (auto t : run(c.body(), sp, h)) {
                    if (seen.insert(t).second) todo.push_back(t);
                }
            }
            return out;
        }
    }
    throw std::logic_error("unknown command");
}

/// Image of a set (as mask) under c.
inline Mask image(const Ast& c, const StateSpace& sp, Mask p) {
    Mask out = 0;
    for (std::uint32_t s = 0; s < sp.size(); ++s) {
        if (p >> s & 1) {
            for (auto t : run(c, sp, s)) out |= Mask{1} << t;
        }
    }
    return out;
}

inline Mask guard_mask(const hyperlift::BoolExpr& b, const StateSpace& sp) {
    Mask out = 0;
    for (std::uint32_t s = 0; s < sp.size(); ++s) {
        if (holds(b, sp, s)) out |= Mask{1} << s;
    }
    return out;
}

inline Family powerset(Mask p) {
    Family out;
    Mask s = 0;
    do {
        out.insert(s);
        s = (s - p) & p;
    } while (s != 0);
    return out;
}

inline Family union_product(const Family& f, const Family& g) {
    Family out;
    for (auto a : f)
        for (auto b : g) out.insert(a | b);
    return out;
}

/// The hyper semantics written out literally over explicit families; every
/// member of a query is used, and loops are solved by round-based Kleene
/// iteration over all queries they reach.
class Hyper {
public:
    explicit Hyper(const StateSpace& sp) : sp_(sp) {}

    Family eval(const Ast& c, const Family& q) {
        switch (c.kind) {
            case Ast::Kind::Skip: return q;
            case Ast::Kind::Atom: {
                Family out;
                for (auto p : q) out.insert(image(c, sp_, p));
                return out;
            }
            case Ast::Kind::Seq: return eval(c.second(), eval(c.first(), q));
            case Ast::Kind::Choice: {
                Family out;
                for (auto p : q) {
                    for (auto m : union_product(eval(c.first(), powerset(p)), eval(c.second(), powerset(p)))) out.insert(m);
                }
                return out;
            }
            case Ast::Kind::If: {
                const Mask b = guard_mask(c.cond, sp_);
                Family out;
                for (auto p : q) {
                    for (auto m : union_product(eval(c.first(), powerset(p & b)), eval(c.second(), powerset(p & ~b)))) {
                        out.insert(m);
                    }
                }
                return out;
            }
            case Ast::Kind::While: return loop(c, q);
        }
        throw std::logic_error("unknown command");
    }

private:
    Family loop(const Ast& c, const Family& root) {
        const Mask b = guard_mask(c.cond, sp_);
        std::map<Family, std::vector<std::pair<Family, Mask>>> eqs;  // query -> (dependency, exit part)
        std::vector<Family> todo{root};
        while (!todo.empty()) {
            const Family q = todo.back();
            todo.pop_back();
            if (eqs.count(q)) continue;
            auto& terms = eqs[q];
            for (auto p : q) {
                Family dep = eval(c.body(), powerset(p & b));
                terms.emplace_back(dep, p & ~b);
                if (!eqs.count(dep)) todo.push_back(dep);
            }
        }
        std::map<Family, Family> val;
        for (const auto& [q, terms] : eqs) val[q] = q.empty() ? Family{} : Family{0};
        for (;;) {
            std::map<Family, Family> next;
            for (const auto& [q, terms] : eqs) {
                Family v;
                for (const auto& [dep, rest] : terms) {
                    for (auto m : union_product(val.at(dep), powerset(rest))) v.insert(m);
                }
                next[q] = v;
            }
            if (next == val) return val.at(root);
            val = std::move(next);
        }
    }

    const StateSpace& sp_;
};

}  // namespace oracle
