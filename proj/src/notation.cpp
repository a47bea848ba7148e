#include "hyperlift/notation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "hyperlift/error.hpp"

namespace hyperlift {

namespace {

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    void skip_space() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (text_.substr(pos_, 2) == "//") {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            return;
        }
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    bool accept(std::string_view s) {
        skip_space();
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }
    bool peek(std::string_view s) {
        skip_space();
        return text_.substr(pos_, s.size()) == s;
    }
    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "'");
    }
    std::string identifier() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }
    std::int64_t integer() {
        skip_space();
        const bool neg = pos_ < text_.size() && text_[pos_] == '-';
        if (neg) ++pos_;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 15) fail("expected integer");
        const auto v = std::stoll(std::string(text_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::SyntaxError, "at offset " + std::to_string(pos_) + ": " + msg);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Assignment read_assignment(Scanner& sc) {
    sc.expect("{");
    Assignment a;
    if (!sc.accept("}")) {
        do {
            std::string name = sc.identifier();
            sc.expect("=");
            a[name] = sc.integer();
        } while (sc.accept(","));
        sc.expect("}");
    }
    return a;
}

StateSet read_set(Scanner& sc, const StateSpace& space) {
    StateSet p(space.size());
    sc.expect("[");
    if (!sc.accept("]")) {
        do {
            p.insert(space.encode(read_assignment(sc)));
        } while (sc.accept(","));
        sc.expect("]");
    }
    return p;
}

void finish(Scanner& sc) {
    if (!sc.at_end()) sc.fail("trailing input");
}

void write_state(std::ostream& os, State s, const StateSpace& space, bool json) {
    os << '{';
    const auto& vars = space.variables();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) os << ',';
        if (json) {
            os << '"' << vars[i].name << "\":";
        } else {
            os << vars[i].name << '=';
        }
        os << space.value(s, i);
    }
    os << '}';
}

void write_set(std::ostream& os, const StateSet& p, const StateSpace& space, bool json) {
    os << '[';
    bool first = true;
    p.for_each([&](State s) {
        if (!first) os << ',';
        first = false;
        write_state(os, s, space, json);
    });
    os << ']';
}

std::string write_family(const FamilySet& f, const StateSpace& space, std::size_t bound, bool json) {
    std::ostringstream os;
    std::vector<StateSet> listed;
    try {
        listed = f.members(bound);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ExpansionTooLarge) throw;
        os << (json ? "{\"ssc\":" : "ssc");
        listed = f.maximal();
    }
    const bool closed_form = !os.str().empty();
    os << '[';
    for (std::size_t i = 0; i < listed.size(); ++i) {
        if (i) os << ',';
        write_set(os, listed[i], space, json);
    }
    os << ']';
    if (closed_form && json) os << '}';
    return os.str();
}

}  // namespace

State parse_state(std::string_view text, const StateSpace& space) {
    Scanner sc(text);
    const State s = space.encode(read_assignment(sc));
    finish(sc);
    return s;
}

StateSet parse_state_set(std::string_view text, const StateSpace& space) {
    Scanner sc(text);
    StateSet p = read_set(sc, space);
    finish(sc);
    return p;
}

FamilySet parse_family(std::string_view text, const StateSpace& space) {
    Scanner sc(text);
    const bool closed = sc.accept("ssc");
    std::vector<StateSet> sets;
    sc.expect("[");
    if (!sc.accept("]")) {
        do {
            sets.push_back(read_set(sc, space));
        } while (sc.accept(","));
        sc.expect("]");
    }
    finish(sc);
    if (closed) return FamilySet::down_set(space.size(), std::move(sets));
    return FamilySet::explicit_of(space.size(), std::move(sets));
}

std::string format_state(State s, const StateSpace& space) {
    std::ostringstream os;
    write_state(os, s, space, false);
    return os.str();
}

std::string format_state_set(const StateSet& p, const StateSpace& space) {
    std::ostringstream os;
    write_set(os, p, space, false);
    return os.str();
}

std::string format_family(const FamilySet& f, const StateSpace& space, std::size_t bound) {
    return write_family(f, space, bound, false);
}

std::string format_state_set_json(const StateSet& p, const StateSpace& space) {
    std::ostringstream os;
    write_set(os, p, space, true);
    return os.str();
}

std::string format_family_json(const FamilySet& f, const StateSpace& space, std::size_t bound) {
    return write_family(f, space, bound, true);
}

RelationFile parse_relation_file(std::string_view text) {
    Scanner sc(text);
    std::vector<StateSpace::Variable> vars;
    while (sc.accept("var")) {
        StateSpace::Variable v;
        v.name = sc.identifier();
        sc.expect(":");
        v.lo = sc.integer();
        sc.expect("..");
        v.hi = sc.integer();
        sc.expect(";");
        vars.push_back(std::move(v));
    }
    std::vector<std::pair<Assignment, Assignment>> pairs;
    while (!sc.at_end()) {
        Assignment from = read_assignment(sc);
        sc.expect("->");
        Assignment to = read_assignment(sc);
        sc.accept(",");
        pairs.emplace_back(std::move(from), std::move(to));
    }
    if (vars.empty()) {
        // Infer ranges from the values that occur.
        auto note = [&](const Assignment& a) {
            for (const auto& [name, value] : a) {
                auto it = std::find_if(vars.begin(), vars.end(), [&](const auto& v) { return v.name == name; });
                if (it == vars.end()) {
                    vars.push_back({name, std::min<std::int64_t>(0, value), std::max<std::int64_t>(0, value)});
                } else {
                    it->lo = std::min(it->lo, value);
                    it->hi = std::max(it->hi, value);
                }
            }
        };
        for (const auto& [from, to] : pairs) {
            note(from);
            note(to);
        }
        if (vars.empty()) throw Error(ErrorKind::SyntaxError, "relation file declares no variables and no pairs");
    }
    StateSpace space(std::move(vars));
    Rel r(space.size());
    for (const auto& [from, to] : pairs) r.insert(space.encode(from), space.encode(to));
    return RelationFile{std::move(space), std::move(r)};
}

std::string format_relation(const Rel& r, const StateSpace& space) {
    std::ostringstream os;
    for (const auto& [a, b] : r.pairs()) {
        write_state(os, a, space, false);
        os << " -> ";
        write_state(os, b, space, false);
        os << '\n';
    }
    return os.str();
}

}  // namespace hyperlift
