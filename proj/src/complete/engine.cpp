#include "complete/engine.hpp"

#include "frontend/normalize.hpp"
#include "llm/prompts.hpp"
#include "scanner/repo_scanner.hpp"
#include "support/strings.hpp"

namespace acscan::complete {

const char* to_string(CompletionStatus s) {
    switch (s) {
        case CompletionStatus::Compiled: return "compiled";
        case CompletionStatus::CompileFailed: return "compile-failed";
        case CompletionStatus::Modified: return "modified";
    }
    return "compile-failed";
}

std::string extract_contract_source(const std::string& response) {
    std::size_t fence = response.find("```");
    if (fence == std::string::npos) return strings::trim(response);
    std::size_t body_start = response.find('\n', fence);
    if (body_start == std::string::npos) return strings::trim(response);
    ++body_start;
    std::size_t fence_end = response.find("```", body_start);
    if (fence_end == std::string::npos) fence_end = response.size();
    return strings::trim(response.substr(body_start, fence_end - body_start));
}

namespace {

std::string join_diagnostics(const CompileResult& result) {
    std::string out;
    for (const auto& d : result.diagnostics) {
        if (d.severity != DiagSeverity::Error) continue;
        if (!out.empty()) out += "\n";
        if (!d.location.empty()) out += d.location + ": ";
        out += d.message;
    }
    if (out.empty() && !result.driver_error.empty()) out = result.driver_error;
    return out;
}

} // namespace

CompletedContract complete_until_compilable(const sol::FunctionSnippet& snippet,
                                            llm::LlmGateway& gateway, CompilerDriver& driver,
                                            const EngineConfig& config, const Deadline& deadline) {
    CompletedContract out;
    out.snippet = snippet;

    auto fail = [&](const std::string& why) {
        out.status = CompletionStatus::CompileFailed;
        out.failure_detail = why;
        return out;
    };

    auto first = llm::render_prompt(llm::builtin_template(llm::PromptId::SnippetCompletion),
                                    {{"CODE", snippet.text}});
    auto completion = gateway.complete(first.text);
    if (!completion.ok) return fail("completion request failed: " + completion.error.detail);
    std::string candidate = extract_contract_source(completion.text);
    if (candidate.empty()) return fail("UnparsableResponse: empty completion");

    for (int round = 0;; ++round) {
        if (deadline.expired()) return fail("time budget exhausted during completion");

        // version pick: origin pragma first, then the candidate's own pragma
        std::optional<semver::Constraint> constraint = config.file_constraint;
        if (!constraint) {
            auto pragma = scan::extract_pragma(candidate);
            if (pragma.present && pragma.error.empty()) constraint = pragma.constraint;
        }

        CompileResult compiled = driver.compile(candidate, constraint);
        out.iterations = round;
        out.compiler_version = compiled.compiler_version;

        if (compiled.success) {
            if (!sol::contains_unmodified(candidate, snippet.text)) {
                out.source = candidate;
                out.status = CompletionStatus::Modified;
                out.failure_detail = "original snippet no longer present unmodified";
                return out;
            }
            out.source = candidate;
            out.status = CompletionStatus::Compiled;
            return out;
        }

        if (!compiled.driver_error.empty()) return fail(compiled.driver_error);
        if (round >= config.reflection_max_iters)
            return fail("reflection budget exhausted: " + join_diagnostics(compiled));

        auto reflect = llm::render_prompt(llm::builtin_template(llm::PromptId::ReflectionFix),
                                          {{"CONTRACT", candidate},
                                           {"ERROR MESSAGE", join_diagnostics(compiled)},
                                           {"NAME", snippet.info.name}});
        auto revised = gateway.complete(reflect.text);
        if (!revised.ok) return fail("reflection request failed: " + revised.error.detail);
        candidate = extract_contract_source(revised.text);
        if (candidate.empty()) return fail("UnparsableResponse: empty reflection output");
    }
}

} // namespace acscan::complete
