#include "llm/prompts.hpp"

#include "support/strings.hpp"

namespace acscan::llm {

namespace {

const PromptTemplate kSensitiveLocation{
    PromptId::SensitiveLocation,
    "You are a smart contract security auditor.\n"
    "Task: identify the sensitive functions in the Solidity smart contract below.\n"
    "A function is sensitive if it contains at least one of the following operations:\n"
    "1. Selfdestruct: removes the contract from the blockchain and transfers its "
    "balance to a specified address.\n"
    "2. Transfer: sends cryptocurrency from the contract to a specified address.\n"
    "3. State variable modification: alters the contract's persistent storage "
    "variables.\n"
    "4. External contract call: invokes a function of another contract.\n"
    "Return only the signature of each identified sensitive function, one per line, "
    "in the form name(parameterTypes). If there is no sensitive function, answer "
    "\"none\".\n"
    "Smart contract:\n"
    "[CODE]\n",
    {"CODE"}};

const PromptTemplate kSnippetCompletion{
    PromptId::SnippetCompletion,
    "You are an experienced Solidity developer.\n"
    "Task: complete the function snippet below into a single self-contained, "
    "compilable smart contract.\n"
    "Requirements:\n"
    "1. Do not alter the snippet itself and do not inject new logic into it.\n"
    "2. Add only the minimal scaffolding (contract declaration, state variables, "
    "helper declarations, pragma) the snippet needs to compile.\n"
    "3. Output exactly one Solidity source file in a fenced code block.\n"
    "Function snippet:\n"
    "[CODE]\n",
    {"CODE"}};

const PromptTemplate kReflectionFix{
    PromptId::ReflectionFix,
    "You are an experienced Solidity developer.\n"
    "The smart contract below fails to compile. Fix the compilation errors while "
    "keeping the sensitive function [NAME] byte-identical except for whitespace "
    "and comments.\n"
    "Compilation errors:\n"
    "[ERROR MESSAGE]\n"
    "Smart contract:\n"
    "[CONTRACT]\n"
    "Output the corrected contract in a fenced code block.\n",
    {"CONTRACT", "ERROR MESSAGE", "NAME"}};

} // namespace

const PromptTemplate& builtin_template(PromptId id) {
    switch (id) {
        case PromptId::SensitiveLocation: return kSensitiveLocation;
        case PromptId::SnippetCompletion: return kSnippetCompletion;
        case PromptId::ReflectionFix: return kReflectionFix;
    }
    return kSensitiveLocation;
}

RenderResult render_prompt(const PromptTemplate& tmpl,
                           const std::map<std::string, std::string>& bindings) {
    RenderResult out;
    out.text = tmpl.text;
    for (const auto& ph : tmpl.placeholders) {
        auto it = bindings.find(ph);
        if (it == bindings.end()) {
            out.missing_placeholder = ph;
            out.text.clear();
            return out;
        }
        out.text = strings::replace_all(std::move(out.text), "[" + ph + "]", it->second);
    }
    return out;
}

} // namespace acscan::llm
