#include "hyperlift/transformer.hpp"

#include <unordered_set>
#include <variant>

#include "hyperlift/error.hpp"

namespace hyperlift {

namespace {

struct ImageNode {
    Rel rel;
};
struct TableNode {
    std::vector<StateSet> entries;
};
struct IdentityNode {};
struct BottomNode {};
struct FilterNode {
    StateSet guard;
};
struct ComposeNode {
    Transformer first, second;
};
struct JoinNode {
    Transformer left, right;
};
struct LoopNode {
    StateSet guard;
    Transformer body;
};

void check_same(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorKind::SpaceMismatch,
                    "transformers over " + std::to_string(a) + " and " + std::to_string(b) + " states");
    }
}

void check_brute_force(const Transformer& phi, const char* what) {
    if (phi.universe() > kMaxBruteForceStates) {
        throw Error(ErrorKind::SpaceTooLarge, std::string(what) + " needs at most " +
                                                  std::to_string(kMaxBruteForceStates) + " states");
    }
}

std::uint64_t subset_count(std::size_t universe) { return std::uint64_t{1} << universe; }

}  // namespace

struct Transformer::Node {
    std::variant<ImageNode, TableNode, IdentityNode, BottomNode, FilterNode, ComposeNode, JoinNode, LoopNode> v;
};

Transformer Transformer::image_of(Rel r) {
    const std::size_t n = r.size();
    return Transformer(std::make_shared<const Node>(Node{ImageNode{std::move(r)}}), n);
}

Transformer Transformer::table(std::size_t universe, std::vector<StateSet> entries, bool check_monotone) {
    if (universe > kMaxTableStates) {
        throw Error(ErrorKind::SpaceTooLarge, "tables need at most " + std::to_string(kMaxTableStates) + " states");
    }
    if (entries.size() != subset_count(universe)) {
        throw Error(ErrorKind::InvalidArgument, "table needs one entry per subset");
    }
    for (const auto& e : entries) check_same(e.universe(), universe);
    Transformer t(std::make_shared<const Node>(Node{TableNode{std::move(entries)}}), universe);
    if (check_monotone && !is_monotone(t)) {
        throw Error(ErrorKind::InvalidArgument, "table is not monotone");
    }
    return t;
}

Transformer Transformer::identity(std::size_t universe) {
    return Transformer(std::make_shared<const Node>(Node{IdentityNode{}}), universe);
}

Transformer Transformer::bottom(std::size_t universe) {
    return Transformer(std::make_shared<const Node>(Node{BottomNode{}}), universe);
}

Transformer Transformer::filter(const StateSet& guard) {
    return Transformer(std::make_shared<const Node>(Node{FilterNode{guard}}), guard.universe());
}

Transformer Transformer::loop(const StateSet& guard, Transformer body) {
    check_same(guard.universe(), body.universe());
    const std::size_t n = guard.universe();
    return Transformer(std::make_shared<const Node>(Node{LoopNode{guard, std::move(body)}}), n);
}

Transformer join(const Transformer& phi, const Transformer& psi) {
    check_same(phi.universe(), psi.universe());
    return Transformer(std::make_shared<const Transformer::Node>(Transformer::Node{JoinNode{phi, psi}}),
                       phi.universe());
}

Transformer compose(const Transformer& phi, const Transformer& psi) {
    check_same(phi.universe(), psi.universe());
    return Transformer(std::make_shared<const Transformer::Node>(Transformer::Node{ComposeNode{phi, psi}}),
                       phi.universe());
}

StateSet Transformer::apply(const StateSet& p) const {
    check_same(universe_, p.universe());
    if (!node_) return StateSet(universe_);
    return std::visit(
        [&](const auto& n) -> StateSet {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ImageNode>) {
                return dirimg(n.rel, p);
            } else if constexpr (std::is_same_v<T, TableNode>) {
                return n.entries[p.bits()];
            } else if constexpr (std::is_same_v<T, IdentityNode>) {
                return p;
            } else if constexpr (std::is_same_v<T, BottomNode>) {
                return StateSet(universe_);
            } else if constexpr (std::is_same_v<T, FilterNode>) {
                return p & n.guard;
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                return n.second.apply(n.first.apply(p));
            } else if constexpr (std::is_same_v<T, JoinNode>) {
                return n.left.apply(p) | n.right.apply(p);
            } else {
                // The i-th Kleene iterate of the loop functional maps p to the
                // union of ~guard(p_j) for j < i, where p_0 = p and
                // p_{j+1} = body(guard(p_j)). The sequence is deterministic, so
                // the limit is reached once some p_j repeats.
                StateSet acc(universe_);
                std::unordered_set<std::uint64_t> seen;
                StateSet cur = p;
                while (seen.insert(cur.bits()).second) {
                    acc |= cur - n.guard;
                    cur = n.body.apply(cur & n.guard);
                }
                return acc;
            }
        },
        node_->v);
}

const Rel* Transformer::relation() const {
    if (!node_) return nullptr;
    if (const auto* img = std::get_if<ImageNode>(&node_->v)) return &img->rel;
    return nullptr;
}

bool Transformer::is_table() const { return node_ && std::holds_alternative<TableNode>(node_->v); }

Transformer Transformer::tabulate() const {
    if (is_table()) return *this;
    if (universe_ > kMaxTableStates) {
        throw Error(ErrorKind::SpaceTooLarge, "tables need at most " + std::to_string(kMaxTableStates) + " states");
    }
    std::vector<StateSet> entries;
    entries.reserve(subset_count(universe_));
    for (std::uint64_t bits = 0; bits < subset_count(universe_); ++bits) {
        entries.push_back(apply(StateSet::from_bits(universe_, bits)));
    }
    return Transformer(std::make_shared<const Node>(Node{TableNode{std::move(entries)}}), universe_);
}

Rel rel_recover(const Transformer& phi) {
    Rel r(phi.universe());
    for (std::uint32_t s = 0; s < phi.universe(); ++s) {
        phi.apply(StateSet::singleton(phi.universe(), State{s})).for_each([&](State t) { r.insert(State{s}, t); });
    }
    return r;
}

StateSet dom(const Transformer& phi) {
    StateSet d(phi.universe());
    for (std::uint32_t s = 0; s < phi.universe(); ++s) {
        if (!phi.apply(StateSet::singleton(phi.universe(), State{s})).empty()) d.insert(State{s});
    }
    return d;
}

bool is_univ_disjunctive(const Transformer& phi) {
    check_brute_force(phi, "disjunctivity check");
    const Transformer t = phi.tabulate();
    const std::size_t n = phi.universe();
    for (std::uint64_t bits = 0; bits < subset_count(n); ++bits) {
        const StateSet p = StateSet::from_bits(n, bits);
        StateSet joined(n);
        p.for_each([&](State x) { joined |= t.apply(StateSet::singleton(n, x)); });
        if (t.apply(p) != joined) return false;
    }
    return true;
}

bool is_monotone(const Transformer& phi) {
    const std::size_t n = phi.universe();
    if (n > kMaxTableStates) {
        throw Error(ErrorKind::SpaceTooLarge, "monotonicity check needs a tabulable universe");
    }
    // Covering pairs p, p + {x} suffice.
    for (std::uint64_t bits = 0; bits < subset_count(n); ++bits) {
        const StateSet p = StateSet::from_bits(n, bits);
        const StateSet img = phi.apply(p);
        for (std::uint32_t x = 0; x < n; ++x) {
            if (p.contains(State{x})) continue;
            StateSet bigger = p;
            bigger.insert(State{x});
            if (!img.subset_of(phi.apply(bigger))) return false;
        }
    }
    return true;
}

bool transformer_le(const Transformer& a, const Transformer& b) {
    check_same(a.universe(), b.universe());
    if (a.universe() > kMaxTableStates) {
        throw Error(ErrorKind::SpaceTooLarge, "pointwise comparison needs a tabulable universe");
    }
    for (std::uint64_t bits = 0; bits < subset_count(a.universe()); ++bits) {
        const StateSet p = StateSet::from_bits(a.universe(), bits);
        if (!a.apply(p).subset_of(b.apply(p))) return false;
    }
    return true;
}

bool transformer_eq(const Transformer& a, const Transformer& b) { return transformer_le(a, b) && transformer_le(b, a); }

PscResult psc_check(const Transformer& phi) {
    check_brute_force(phi, "PSC check");
    const std::size_t n = phi.universe();
    const Transformer t = phi.tabulate();
    std::vector<char> reached(subset_count(n));
    for (std::uint64_t qbits = 0; qbits < subset_count(n); ++qbits) {
        const StateSet q = StateSet::from_bits(n, qbits);
        std::fill(reached.begin(), reached.end(), 0);
        for_each_subset(q, [&](const StateSet& s) { reached[t.apply(s).bits()] = 1; });
        std::optional<StateSet> missing;
        for_each_subset(t.apply(q), [&](const StateSet& r) {
            if (!missing && !reached[r.bits()]) missing = r;
        });
        if (missing) return PscResult{false, PscWitness{q, *missing}};
    }
    return PscResult{true, std::nullopt};
}

}  // namespace hyperlift
