#include "frontend/inventory.hpp"

#include <cctype>

#include "support/strings.hpp"

namespace acscan::sol {

const char* to_string(Visibility v) {
    switch (v) {
        case Visibility::Public: return "public";
        case Visibility::External: return "external";
        case Visibility::Internal: return "internal";
        case Visibility::Private: return "private";
    }
    return "public";
}

const char* to_string(FnKind k) {
    switch (k) {
        case FnKind::Function: return "function";
        case FnKind::Constructor: return "constructor";
        case FnKind::Modifier: return "modifier";
        case FnKind::Fallback: return "fallback";
        case FnKind::Receive: return "receive";
    }
    return "function";
}

std::string FunctionInfo::signature() const {
    std::string sig = name.empty() ? "fallback" : name;
    sig += "(";
    for (std::size_t i = 0; i < parameter_types.size(); ++i) {
        if (i) sig += ",";
        sig += canonical_type(parameter_types[i]);
    }
    sig += ")";
    return sig;
}

FunctionInfo make_function_info(const ContractDef* contract, const FunctionDef& fn) {
    FunctionInfo info;
    info.name = fn.name;
    for (const auto& p : fn.params) info.parameter_types.push_back(p.type_name);
    info.visibility = fn.visibility;
    info.kind = fn.fkind;
    for (const auto& inv : fn.invocations) info.modifiers.push_back(inv.name);
    info.contract_name = contract ? contract->name : "";
    info.source_span = fn.span;
    return info;
}

std::vector<FunctionRef> all_function_defs(const SourceUnit& unit) {
    std::vector<FunctionRef> out;
    for (const auto& c : unit.contracts)
        for (const auto& f : c->functions) out.push_back({c.get(), f.get()});
    for (const auto& f : unit.free_functions) out.push_back({nullptr, f.get()});
    return out;
}

std::vector<FunctionInfo> list_functions(const SourceUnit& unit) {
    std::vector<FunctionInfo> out;
    for (const auto& ref : all_function_defs(unit))
        out.push_back(make_function_info(ref.contract, *ref.def));
    return out;
}

std::string canonical_type(const std::string& type_name) {
    std::string t = strings::trim(type_name);
    for (auto word : {" memory", " calldata", " storage", " payable"}) {
        t = strings::replace_all(t, word, "");
    }
    // collapse interior whitespace introduced by mapping rendering
    std::string packed;
    for (char c : t)
        if (!std::isspace(static_cast<unsigned char>(c))) packed.push_back(c);
    if (packed == "uint") return "uint256";
    if (packed == "int") return "int256";
    if (packed == "byte") return "bytes1";
    return packed;
}

std::optional<ParsedSignature> parse_signature(const std::string& text) {
    ParsedSignature sig;
    sig.raw = text;
    std::string s = strings::trim(text);
    // strip list markers and code ticks the model may add
    while (!s.empty() && (s.front() == '-' || s.front() == '*' || s.front() == '`' ||
                          std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '.' ||
                          s.front() == ')' || s.front() == ' '))
        s.erase(s.begin());
    while (!s.empty() && (s.back() == '`' || s.back() == ';' || s.back() == ' ')) s.pop_back();
    if (strings::starts_with(s, "function ")) s = strings::trim(s.substr(9));

    std::size_t i = 0;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '$'))
        ++i;
    if (i == 0) return std::nullopt;
    sig.name = s.substr(0, i);
    std::string rest = strings::trim(s.substr(i));
    if (rest.empty()) return sig;  // bare name
    if (rest.front() != '(') return std::nullopt;
    std::size_t close = rest.rfind(')');
    if (close == std::string::npos) return std::nullopt;
    std::string params = rest.substr(1, close - 1);
    std::vector<std::string> types;
    if (!strings::trim(params).empty()) {
        int depth = 0;
        std::string cur;
        for (char c : params) {
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            if (c == ',' && depth == 0) {
                types.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        types.push_back(cur);
        for (auto& t : types) {
            // split on whitespace; a trailing word that is not a type keyword
            // is a parameter name and is dropped
            std::vector<std::string> words;
            std::string word;
            for (char c : strings::trim(t)) {
                if (std::isspace(static_cast<unsigned char>(c))) {
                    if (!word.empty()) words.push_back(word);
                    word.clear();
                } else {
                    word.push_back(c);
                }
            }
            if (!word.empty()) words.push_back(word);
            if (words.size() >= 2) {
                const std::string& last = words.back();
                if (last != "payable" && last != "memory" && last != "calldata" &&
                    last != "storage")
                    words.pop_back();
            }
            t = canonical_type(strings::join(words, " "));
        }
    }
    sig.parameter_types = std::move(types);
    return sig;
}

bool signature_matches(const ParsedSignature& sig, const FunctionInfo& fn) {
    if (sig.name != fn.name) return false;
    if (!sig.parameter_types) return true;
    if (sig.parameter_types->size() != fn.parameter_types.size()) return false;
    for (std::size_t i = 0; i < fn.parameter_types.size(); ++i) {
        if ((*sig.parameter_types)[i] != canonical_type(fn.parameter_types[i])) return false;
    }
    return true;
}

ResolveResult resolve_signature(const ParsedSignature& sig, const std::vector<FunctionInfo>& fns) {
    ResolveResult result;
    for (const auto& fn : fns) {
        if (!signature_matches(sig, fn)) continue;
        if (result.match) {
            // bare-name candidates must be unambiguous
            if (!sig.parameter_types) {
                result.ambiguous = true;
                result.match = nullptr;
                return result;
            }
            continue;  // identical signature in another contract: first wins
        }
        result.match = &fn;
    }
    return result;
}

SnippetResult extract_snippet(const std::string& origin_path, const std::string& source,
                              const SourceUnit& unit, const ParsedSignature& sig) {
    SnippetResult out;
    std::vector<FunctionInfo> fns = list_functions(unit);
    auto resolved = resolve_signature(sig, fns);
    if (!resolved.match) {
        out.error = resolved.ambiguous
                        ? "SignatureNotFound: ambiguous bare name '" + sig.raw + "'"
                        : "SignatureNotFound: '" + sig.raw + "' does not resolve";
        return out;
    }
    const FunctionInfo& info = *resolved.match;
    if (info.source_span.end > source.size()) {
        out.error = "SignatureNotFound: span out of range";
        return out;
    }
    FunctionSnippet snip;
    snip.info = info;
    snip.text = source.substr(info.source_span.begin, info.source_span.size());
    snip.origin = origin_path;
    out.snippet = std::move(snip);
    return out;
}

} // namespace acscan::sol
