#include "extract/sensitive.hpp"

#include <algorithm>

#include "ir/cfg_builder.hpp"
#include "llm/prompts.hpp"
#include "support/strings.hpp"

namespace acscan::extract {

const char* to_string(SensitiveOp op) {
    switch (op) {
        case SensitiveOp::Selfdestruct: return "selfdestruct";
        case SensitiveOp::Transfer: return "transfer";
        case SensitiveOp::ExternalCall: return "external-call";
        case SensitiveOp::StateWrite: return "state-write";
    }
    return "?";
}

LlmLocateResult parse_signature_response(const std::string& response) {
    LlmLocateResult out;
    out.raw_response = response;
    std::string body = response;
    // drop fenced-block markers so signature lines inside fences still parse
    body = strings::replace_all(std::move(body), "```solidity", "\n");
    body = strings::replace_all(std::move(body), "```", "\n");

    bool negative = false;
    std::string lower = strings::to_lower(body);
    for (auto marker : {"none", "no sensitive", "no function", "not found"}) {
        if (lower.find(marker) != std::string::npos) negative = true;
    }

    for (const auto& raw_line : strings::split(body, '\n')) {
        std::string line = strings::trim(raw_line);
        if (line.empty()) continue;
        auto sig = sol::parse_signature(line);
        // Only name(params) shapes count as signatures; prose lines with a
        // bare first word would otherwise swamp the list.
        if (sig && sig->parameter_types) out.signatures.push_back(*sig);
    }

    if (out.signatures.empty() && !negative && !strings::trim(response).empty())
        out.unparsable = true;
    return out;
}

LlmLocateResult locate_sensitive_llm(const scan::ContractFile& file, llm::LlmGateway& gateway) {
    auto rendered = llm::render_prompt(llm::builtin_template(llm::PromptId::SensitiveLocation),
                                       {{"CODE", file.source}});
    auto completion = gateway.complete(rendered.text);
    if (!completion.ok) {
        LlmLocateResult out;
        out.gateway_error = completion.error.detail.empty()
                                ? "gateway error"
                                : completion.error.detail;
        return out;
    }
    return parse_signature_response(completion.text);
}

std::vector<HeuristicHit> locate_sensitive_heuristic(const sol::SourceUnit& unit,
                                                     const Deadline* deadline) {
    std::vector<HeuristicHit> out;
    for (const auto& ref : sol::all_function_defs(unit)) {
        if (deadline) deadline->check();
        const sol::FunctionDef& fn = *ref.def;
        if (!fn.body) continue;
        if (fn.fkind == sol::FnKind::Modifier) continue;  // guards, not entry points

        ir::Cfg cfg = ir::build_cfg(fn, ref.contract, unit);
        SensitiveLabel label;
        label.provenance = Provenance::Heuristic;
        for (const auto* instr : cfg.instructions()) {
            switch (instr->kind) {
                case ir::IrKind::SolidityCall:
                    if (instr->detail == "selfdestruct")
                        label.operations.insert(SensitiveOp::Selfdestruct);
                    break;
                case ir::IrKind::Transfer:
                    label.operations.insert(SensitiveOp::Transfer);
                    break;
                case ir::IrKind::StateWrite:
                    label.operations.insert(SensitiveOp::StateWrite);
                    break;
                case ir::IrKind::LowLevelCall:
                    label.operations.insert(SensitiveOp::ExternalCall);
                    break;
                case ir::IrKind::HighLevelCall: {
                    // member call on a non-this expression
                    const sol::Expr* base = instr->call_base;
                    bool on_this = base && base->kind == sol::ExprKind::Ident &&
                                   base->text == "this";
                    if (!on_this) label.operations.insert(SensitiveOp::ExternalCall);
                    break;
                }
                default: break;
            }
        }
        label.is_sensitive = !label.operations.empty();
        if (label.is_sensitive) out.push_back({ref.contract, ref.def, label});
    }
    return out;
}

ValidationResult validate_signatures(const std::vector<sol::ParsedSignature>& candidates,
                                     const sol::SourceUnit& unit) {
    ValidationResult out;
    auto inventory = sol::list_functions(unit);
    for (const auto& sig : candidates) {
        auto resolved = sol::resolve_signature(sig, inventory);
        if (resolved.match) {
            bool dup = std::any_of(out.validated.begin(), out.validated.end(),
                                   [&](const sol::FunctionInfo& f) {
                                       return f.contract_name == resolved.match->contract_name &&
                                              f.signature() == resolved.match->signature();
                                   });
            if (!dup) out.validated.push_back(*resolved.match);
        } else {
            out.hallucinated.push_back(sig.raw);
        }
    }
    return out;
}

} // namespace acscan::extract
