#include "hyperlift/semantics.hpp"

#include <cassert>

namespace hyperlift {

Rel sem_rel(const Ast& c, const StateSpace& space) {
    const std::size_t n = space.size();
    switch (c.kind) {
    case Ast::Kind::Skip: return Rel::identity(n);
    case Ast::Kind::Atom: return elaborate_atom(c.atom, space);
    case Ast::Kind::Seq: return compose(sem_rel(c.first(), space), sem_rel(c.second(), space));
    case Ast::Kind::Choice: return rel_union(sem_rel(c.first(), space), sem_rel(c.second(), space));
    case Ast::Kind::If: {
        const StateSet b = eval_bool(c.cond, space);
        return rel_union(compose(Rel::coreflexive(b), sem_rel(c.first(), space)),
                         compose(Rel::coreflexive(b.complement()), sem_rel(c.second(), space)));
    }
    case Ast::Kind::While: {
        const StateSet b = eval_bool(c.cond, space);
        const Rel step = compose(Rel::coreflexive(b), sem_rel(c.body(), space));
        const Rel exit = Rel::coreflexive(b.complement());
        Rel cur(n);
        // Each round that changes the iterate adds at least one pair.
        for (std::size_t round = 0; round <= n * n; ++round) {
            Rel next = rel_union(compose(step, cur), exit);
            if (next == cur) return cur;
            cur = std::move(next);
        }
        assert(false && "relational loop iteration did not stabilise");
        return cur;
    }
    }
    return Rel(n);
}

Transformer sem_tr(const Ast& c, const StateSpace& space) {
    const std::size_t n = space.size();
    switch (c.kind) {
    case Ast::Kind::Skip: return Transformer::identity(n);
    case Ast::Kind::Atom: return Transformer::image_of(elaborate_atom(c.atom, space));
    case Ast::Kind::Seq: return compose(sem_tr(c.first(), space), sem_tr(c.second(), space));
    case Ast::Kind::Choice: return join(sem_tr(c.first(), space), sem_tr(c.second(), space));
    case Ast::Kind::If: {
        const StateSet b = eval_bool(c.cond, space);
        return join(compose(Transformer::filter(b), sem_tr(c.first(), space)),
                    compose(Transformer::filter(b.complement()), sem_tr(c.second(), space)));
    }
    case Ast::Kind::While:
        return Transformer::loop(eval_bool(c.cond, space), sem_tr(c.body(), space));
    }
    return Transformer::bottom(n);
}

}  // namespace hyperlift
