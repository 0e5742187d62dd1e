#pragma once

#include <set>
#include <string>
#include <vector>

#include "frontend/inventory.hpp"
#include "llm/gateway.hpp"
#include "scanner/repo_scanner.hpp"
#include "support/deadline.hpp"

namespace acscan::extract {

enum class SensitiveOp { Selfdestruct, Transfer, ExternalCall, StateWrite };

const char* to_string(SensitiveOp op);

enum class Provenance { Llm, Heuristic, ForcedAllFunctions };

struct SensitiveLabel {
    bool is_sensitive = false;
    std::set<SensitiveOp> operations;
    Provenance provenance = Provenance::Heuristic;
};

struct LlmLocateResult {
    std::vector<sol::ParsedSignature> signatures;
    bool unparsable = false;
    std::string raw_response;  // retained for audit when unparsable
    std::string gateway_error;
};

// Primary path: ask the provider for sensitive-function signatures.
LlmLocateResult locate_sensitive_llm(const scan::ContractFile& file, llm::LlmGateway& gateway);

// Parse a signature list out of free-form model output. Empty list is valid
// when the response is empty or a "none" marker.
LlmLocateResult parse_signature_response(const std::string& response);

struct HeuristicHit {
    const sol::ContractDef* contract = nullptr;
    const sol::FunctionDef* def = nullptr;
    SensitiveLabel label;
};

// Deterministic syntactic fallback over the four sensitive operations.
// Modifiers and bodyless declarations never appear in the result. The
// optional deadline is honored at function granularity.
std::vector<HeuristicHit> locate_sensitive_heuristic(const sol::SourceUnit& unit,
                                                     const Deadline* deadline = nullptr);

struct ValidationResult {
    std::vector<sol::FunctionInfo> validated;
    std::vector<std::string> hallucinated;  // raw signatures with no match
};

// Resolve candidates against the parsed inventory; unresolvable candidates
// are the hallucination signal and never reach downstream analysis.
ValidationResult validate_signatures(const std::vector<sol::ParsedSignature>& candidates,
                                     const sol::SourceUnit& unit);

} // namespace acscan::extract
