#pragma once

#include <map>
#include <string>
#include <vector>

namespace acscan::llm {

enum class PromptId { SensitiveLocation, SnippetCompletion, ReflectionFix };

struct PromptTemplate {
    PromptId id;
    std::string text;
    std::vector<std::string> placeholders;  // e.g. "[CODE]"
};

const PromptTemplate& builtin_template(PromptId id);

struct RenderResult {
    std::string text;
    std::string missing_placeholder;  // nonempty on MissingBinding

    bool ok() const { return missing_placeholder.empty(); }
};

// Byte-exact substitution of every placeholder occurrence; no other
// transformation of the template text.
RenderResult render_prompt(const PromptTemplate& tmpl,
                           const std::map<std::string, std::string>& bindings);

} // namespace acscan::llm
