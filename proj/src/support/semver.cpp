#include "support/semver.hpp"

#include <cctype>

#include "support/strings.hpp"

namespace acscan::semver {

namespace {

struct PartialVersion {
    Version v;
    int specified = 0;  // 0..3 numeric components; wildcards end the count
};

// Accepts "0", "0.8", "0.8.19", "0.8.x", "1.*", "*". Returns nullopt on junk.
std::optional<PartialVersion> parse_partial(std::string_view text) {
    PartialVersion out;
    if (text.empty()) return std::nullopt;
    if (text == "*" || text == "x" || text == "X") return out;

    unsigned comps[3] = {0, 0, 0};
    std::size_t i = 0;
    for (int c = 0; c < 3; ++c) {
        if (i >= text.size()) break;
        if (text[i] == '*' || text[i] == 'x' || text[i] == 'X') {
            ++i;
            break;  // wildcard terminates specification
        }
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        unsigned value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            value = value * 10 + unsigned(text[i] - '0');
            ++i;
        }
        comps[c] = value;
        out.specified = c + 1;
        if (i < text.size()) {
            if (text[i] != '.') return std::nullopt;
            ++i;
        }
    }
    if (i != text.size()) return std::nullopt;
    out.v = Version{comps[0], comps[1], comps[2]};
    return out;
}

Version bump_for_partial(const PartialVersion& p) {
    // Upper bound of the range a partial version denotes: "0.8" -> 0.9.0, "1" -> 2.0.0.
    if (p.specified <= 1) return Version{p.v.major + 1, 0, 0};
    return Version{p.v.major, p.v.minor + 1, 0};
}

} // namespace

std::string Version::str() const {
    return std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
}

std::optional<Version> parse_version(std::string_view text) {
    auto p = parse_partial(text);
    if (!p || p->specified != 3) return std::nullopt;
    return p->v;
}

bool Comparator::matches(const Version& v) const {
    switch (op) {
        case Op::Any:
            return true;
        case Op::Eq: {
            if (specified >= 3) return v == version;
            // "0.8" means any 0.8.x
            PartialVersion p{version, specified};
            return v >= version && v < bump_for_partial(p);
        }
        case Op::Lt: return v < version;
        case Op::Le: {
            if (specified >= 3) return v <= version;
            PartialVersion p{version, specified};
            return v < bump_for_partial(p);
        }
        case Op::Gt: {
            if (specified >= 3) return v > version;
            PartialVersion p{version, specified};
            return v >= bump_for_partial(p);
        }
        case Op::Ge: return v >= version;
        case Op::Caret: {
            if (v < version) return false;
            Version upper;
            if (version.major > 0)
                upper = Version{version.major + 1, 0, 0};
            else if (specified == 1)
                upper = Version{1, 0, 0};
            else if (version.minor > 0 || specified == 2)
                upper = Version{0, version.minor + 1, 0};
            else
                upper = Version{0, 0, version.patch + 1};
            return v < upper;
        }
        case Op::Tilde: {
            if (v < version) return false;
            Version upper = specified >= 2 ? Version{version.major, version.minor + 1, 0}
                                           : Version{version.major + 1, 0, 0};
            return v < upper;
        }
    }
    return false;
}

bool Constraint::satisfies(const Version& v) const {
    for (const auto& conj : alternatives) {
        bool all = true;
        for (const auto& c : conj) {
            if (!c.matches(v)) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

std::optional<Constraint> parse_constraint(std::string_view text) {
    Constraint out;
    out.text = strings::trim(text);
    if (out.text.empty()) return std::nullopt;

    std::string normalized = strings::replace_all(out.text, "||", "\x01");
    for (const auto& alt_text : strings::split(normalized, '\x01')) {
        std::vector<Comparator> conj;
        // Tokenize on whitespace; "A - B" hyphen ranges become >=A <=B.
        std::vector<std::string> tokens;
        std::string cur;
        for (char ch : alt_text) {
            if (std::isspace(static_cast<unsigned char>(ch))) {
                if (!cur.empty()) tokens.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) tokens.push_back(cur);
        if (tokens.empty()) return std::nullopt;

        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const std::string& tok = tokens[i];
            if (tok == "-") {
                // hyphen range: previous comparator must be a plain version
                if (conj.empty() || i + 1 >= tokens.size()) return std::nullopt;
                auto hi = parse_partial(tokens[i + 1]);
                if (!hi) return std::nullopt;
                conj.back().op = Comparator::Op::Ge;
                Comparator upper;
                upper.op = Comparator::Op::Le;
                upper.version = hi->v;
                upper.specified = hi->specified;
                conj.push_back(upper);
                ++i;
                continue;
            }
            Comparator c;
            std::string_view rest = tok;
            if (strings::starts_with(rest, ">=")) { c.op = Comparator::Op::Ge; rest.remove_prefix(2); }
            else if (strings::starts_with(rest, "<=")) { c.op = Comparator::Op::Le; rest.remove_prefix(2); }
            else if (strings::starts_with(rest, ">")) { c.op = Comparator::Op::Gt; rest.remove_prefix(1); }
            else if (strings::starts_with(rest, "<")) { c.op = Comparator::Op::Lt; rest.remove_prefix(1); }
            else if (strings::starts_with(rest, "^")) { c.op = Comparator::Op::Caret; rest.remove_prefix(1); }
            else if (strings::starts_with(rest, "~")) { c.op = Comparator::Op::Tilde; rest.remove_prefix(1); }
            else if (strings::starts_with(rest, "=")) { c.op = Comparator::Op::Eq; rest.remove_prefix(1); }

            while (!rest.empty() && rest.front() == 'v') rest.remove_prefix(1);
            auto p = parse_partial(rest);
            if (!p) return std::nullopt;
            if (p->specified == 0) c.op = Comparator::Op::Any;
            c.version = p->v;
            c.specified = p->specified;
            conj.push_back(c);
        }
        out.alternatives.push_back(std::move(conj));
    }
    return out;
}

} // namespace acscan::semver
