#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acscan::semver {

struct Version {
    unsigned major = 0;
    unsigned minor = 0;
    unsigned patch = 0;

    auto operator<=>(const Version&) const = default;
    std::string str() const;
};

std::optional<Version> parse_version(std::string_view text);

// One comparator of a range expression, e.g. ">=0.5.0" or "^0.8.1".
struct Comparator {
    enum class Op { Eq, Lt, Le, Gt, Ge, Caret, Tilde, Any };
    Op op = Op::Eq;
    Version version;
    int specified = 3;  // how many components were written (for partial versions)

    bool matches(const Version& v) const;
};

// Disjunction (||) of conjunctions (space-separated comparators),
// the subset of npm-style ranges Solidity pragmas use.
struct Constraint {
    std::vector<std::vector<Comparator>> alternatives;
    std::string text;  // original range expression

    bool satisfies(const Version& v) const;
};

std::optional<Constraint> parse_constraint(std::string_view text);

} // namespace acscan::semver
