#pragma once

#include <string>
#include <vector>

#include "hyperlift/family.hpp"
#include "hyperlift/lang.hpp"
#include "hyperlift/notation.hpp"
#include "oracle.hpp"

namespace testutil {

inline hyperlift::ProgramFile program(const std::string& text) { return hyperlift::parse_program(text); }

inline oracle::Family masks(const hyperlift::FamilySet& f) {
    oracle::Family out;
    for (const auto& p : f.members()) out.insert(p.bits());
    return out;
}

inline hyperlift::FamilySet family(std::size_t n, const oracle::Family& f) {
    std::vector<hyperlift::StateSet> sets;
    for (auto m : f) sets.push_back(hyperlift::StateSet::from_bits(n, m));
    return hyperlift::FamilySet::explicit_of(n, std::move(sets));
}

inline hyperlift::StateSet set_of(std::size_t n, std::initializer_list<std::uint32_t> ids) {
    hyperlift::StateSet p(n);
    for (auto i : ids) p.insert(hyperlift::State{i});
    return p;
}

inline hyperlift::FamilySet fam(const std::string& text, const hyperlift::StateSpace& sp) {
    return hyperlift::parse_family(text, sp);
}

}  // namespace testutil
