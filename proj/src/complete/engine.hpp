#pragma once

#include <optional>
#include <string>

#include "complete/compiler.hpp"
#include "frontend/inventory.hpp"
#include "llm/gateway.hpp"
#include "support/deadline.hpp"

namespace acscan::complete {

enum class CompletionStatus { Compiled, CompileFailed, Modified };

const char* to_string(CompletionStatus s);

struct CompletedContract {
    std::string source;
    sol::FunctionSnippet snippet;
    int iterations = 0;  // reflection rounds used
    std::string compiler_version;
    CompletionStatus status = CompletionStatus::CompileFailed;
    std::string failure_detail;  // terminal diagnostics / gateway error
};

struct EngineConfig {
    int reflection_max_iters = 5;
    std::optional<semver::Constraint> file_constraint;  // pragma of the origin file
};

// First fenced code block of the response; the whole response when no fence.
std::string extract_contract_source(const std::string& response);

// Completion loop: candidate -> compile -> (on failure) reflect, bounded by
// reflection_max_iters and the per-contract deadline. A compiled candidate
// that fails the unmodified check terminates as Modified.
CompletedContract complete_until_compilable(const sol::FunctionSnippet& snippet,
                                            llm::LlmGateway& gateway, CompilerDriver& driver,
                                            const EngineConfig& config, const Deadline& deadline);

} // namespace acscan::complete
