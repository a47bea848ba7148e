#include "hyperlift/state.hpp"

#include <set>

#include "hyperlift/error.hpp"

namespace hyperlift {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorKind::ExpansionTooLarge: return "ExpansionTooLarge";
    case ErrorKind::QueryBlowup: return "QueryBlowup";
    case ErrorKind::NonSubsetClosedQuery: return "NonSubsetClosedQuery";
    case ErrorKind::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorKind::NotARefinement: return "NotARefinement";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorKind::ElaborationError: return "ElaborationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

StateSpace::StateSpace(std::vector<Variable> vars, std::size_t cap) : vars_(std::move(vars)) {
    if (vars_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "state space needs at least one variable");
    }
    if (cap > kMaxStates) cap = kMaxStates;
    std::set<std::string, std::less<>> names;
    std::uint64_t size = 1;
    for (const auto& v : vars_) {
        if (v.lo > v.hi) {
            throw Error(ErrorKind::InvalidArgument, "empty range for variable '" + v.name + "'");
        }
        if (!names.insert(v.name).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate variable '" + v.name + "'");
        }
        const auto w = static_cast<std::uint64_t>(v.width());
        if (w > cap || size * w > cap) {
            throw Error(ErrorKind::SpaceTooLarge,
                        "state space exceeds " + std::to_string(cap) + " states");
        }
        size *= w;
    }
    size_ = static_cast<std::size_t>(size);

    strides_.assign(vars_.size(), 1);
    for (std::size_t i = vars_.size(); i-- > 1;) {
        strides_[i - 1] = strides_[i] * static_cast<std::uint64_t>(vars_[i].width());
    }
}

std::optional<std::size_t> StateSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name == name) return i;
    }
    return std::nullopt;
}

State StateSpace::encode(const Assignment& assignment) const {
    for (const auto& [name, value] : assignment) {
        if (!index_of(name)) {
            throw Error(ErrorKind::UnknownVariable, "'" + name + "' is not declared");
        }
    }
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = assignment.find(vars_[i].name);
        if (it == assignment.end()) {
            throw Error(ErrorKind::MissingVariable, "no value for '" + vars_[i].name + "'");
        }
        if (!in_range(i, it->second)) {
            throw Error(ErrorKind::ValueOutOfRange,
                        vars_[i].name + "=" + std::to_string(it->second) + " outside " +
                            std::to_string(vars_[i].lo) + ".." + std::to_string(vars_[i].hi));
        }
        id += static_cast<std::uint64_t>(it->second - vars_[i].lo) * strides_[i];
    }
    return State{static_cast<std::uint32_t>(id)};
}

std::vector<std::int64_t> StateSpace::decode(State s) const {
    std::vector<std::int64_t> values(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) values[i] = value(s, i);
    return values;
}

State StateSpace::with_value(State s, std::size_t var, std::int64_t v) const {
    assert(in_range(var, v));
    const auto old = static_cast<std::uint64_t>(value(s, var) - vars_[var].lo);
    const auto now = static_cast<std::uint64_t>(v - vars_[var].lo);
    return State{static_cast<std::uint32_t>(s.id - old * strides_[var] + now * strides_[var])};
}

std::vector<State> StateSet::members() const {
    std::vector<State> out;
    out.reserve(count());
    for_each([&](State s) { out.push_back(s); });
    return out;
}

}  // namespace hyperlift
