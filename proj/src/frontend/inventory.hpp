#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontend/ast.hpp"
#include "frontend/parser.hpp"

namespace acscan::sol {

struct FunctionInfo {
    std::string name;
    std::vector<std::string> parameter_types;
    Visibility visibility = Visibility::Public;
    FnKind kind = FnKind::Function;
    std::vector<std::string> modifiers;
    std::string contract_name;
    Span source_span;

    std::string signature() const;  // name(type1,type2)
};

// One entry per function/constructor/modifier definition, deterministic
// source order. Includes fallback/receive and bodyless declarations.
std::vector<FunctionInfo> list_functions(const SourceUnit& unit);

// A signature as returned by an LLM: "withdraw(uint256 amount)", "donate(address)",
// or a bare name. Parameter names are ignored.
struct ParsedSignature {
    std::string name;
    std::optional<std::vector<std::string>> parameter_types;
    std::string raw;
};

std::optional<ParsedSignature> parse_signature(const std::string& text);

// Elementary-type aliases collapsed (uint -> uint256, byte -> bytes1, ...);
// storage-location words dropped.
std::string canonical_type(const std::string& type_name);

// Matching rule: name plus, when the candidate specifies parameters, arity and
// canonical parameter types. A bare name matches only when unambiguous.
bool signature_matches(const ParsedSignature& sig, const FunctionInfo& fn);

struct ResolveResult {
    const FunctionInfo* match = nullptr;
    bool ambiguous = false;
};

ResolveResult resolve_signature(const ParsedSignature& sig, const std::vector<FunctionInfo>& fns);

struct FunctionSnippet {
    FunctionInfo info;
    std::string text;    // verbatim source slice of the definition
    std::string origin;  // path of the contract file
};

struct SnippetResult {
    std::optional<FunctionSnippet> snippet;
    std::string error;  // SignatureNotFound detail when empty snippet
};

SnippetResult extract_snippet(const std::string& origin_path, const std::string& source,
                              const SourceUnit& unit, const ParsedSignature& sig);

// Definition node lookup for analysis passes.
struct FunctionRef {
    const ContractDef* contract = nullptr;  // null for free functions
    const FunctionDef* def = nullptr;
};

std::vector<FunctionRef> all_function_defs(const SourceUnit& unit);
FunctionInfo make_function_info(const ContractDef* contract, const FunctionDef& fn);

} // namespace acscan::sol
