#pragma once

#include "hyperlift/lang.hpp"
#include "hyperlift/relation.hpp"
#include "hyperlift/transformer.hpp"

namespace hyperlift {

/// Relational denotation. Loops are the least fixpoint of
///   R |-> [b];[c];R  union  [not b]
/// iterated from the empty relation until two iterates agree.
Rel sem_rel(const Ast& c, const StateSpace& space);

/// Forward-transformer denotation, built from transformer operators only
/// (atoms are the one place relations enter, as direct images).
Transformer sem_tr(const Ast& c, const StateSpace& space);

}  // namespace hyperlift
