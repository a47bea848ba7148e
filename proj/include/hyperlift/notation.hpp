#pragma once

#include <string>
#include <string_view>

#include "hyperlift/family.hpp"
#include "hyperlift/relation.hpp"
#include "hyperlift/state.hpp"

namespace hyperlift {

// Literal syntax:
//   state   {x=2,hi=1}
//   set     [{x=2},{x=5}]          ([] is the empty set)
//   family  [[{x=2},{x=5}],[]]     (ssc[...] denotes the down-closure)
// Whitespace is ignored. Errors are Error(SyntaxError) or the encoding
// errors of StateSpace::encode.

State parse_state(std::string_view text, const StateSpace& space);
StateSet parse_state_set(std::string_view text, const StateSpace& space);
FamilySet parse_family(std::string_view text, const StateSpace& space);

std::string format_state(State s, const StateSpace& space);
std::string format_state_set(const StateSet& p, const StateSpace& space);
/// Lists every member when the family has at most `bound` members, and
/// otherwise prints `ssc` followed by the maximal elements.
std::string format_family(const FamilySet& f, const StateSpace& space, std::size_t bound = 4096);

/// Same data as nested arrays of objects, e.g. [[{"x":2},{"x":5}]].
std::string format_state_set_json(const StateSet& p, const StateSpace& space);
std::string format_family_json(const FamilySet& f, const StateSpace& space, std::size_t bound = 4096);

struct RelationFile {
    StateSpace space;
    Rel rel;
};

/// Relation files hold optional `var x: lo..hi;` declarations followed by one
/// pair per line, `{x=0} -> {x=4}`. `//` starts a comment. Without
/// declarations, each variable ranges from min(0, smallest value) to its
/// largest value, in order of first appearance.
RelationFile parse_relation_file(std::string_view text);
std::string format_relation(const Rel& r, const StateSpace& space);

}  // namespace hyperlift
