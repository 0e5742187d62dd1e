#pragma once

#include <map>
#include <string>
#include <vector>

#include "extract/sensitive.hpp"
#include "frontend/inventory.hpp"
#include "ir/cfg_builder.hpp"

namespace acscan::detect {

struct FcgNode {
    int id = 0;
    sol::FunctionInfo info;            // name, kind, visibility
    const sol::ContractDef* contract = nullptr;
    const sol::FunctionDef* def = nullptr;
    ir::Cfg cfg;
    extract::SensitiveLabel sensitivity;
    std::vector<int> modifier_nodes;   // resolved modifier references
    bool is_modifier = false;
};

struct FcgEdge {
    int caller = 0;
    int callee = 0;
    int call_index = 0;  // call-site instruction index in the caller
};

struct UnresolvedCall {
    int caller = 0;
    std::string name;
    int call_index = 0;
};

// (contract name, canonical signature) -> sensitivity label
using LabelMap = std::map<std::pair<std::string, std::string>, extract::SensitiveLabel>;

struct Fcg {
    std::vector<FcgNode> nodes;
    std::vector<FcgEdge> edges;
    std::vector<UnresolvedCall> externals;  // opaque callees

    std::vector<const FcgEdge*> edges_from(int node) const {
        std::vector<const FcgEdge*> out;
        for (const auto& e : edges)
            if (e.caller == node) out.push_back(&e);
        return out;
    }

    const FcgNode* find(const std::string& contract, const std::string& signature) const {
        for (const auto& n : nodes)
            if (n.info.contract_name == contract && n.info.signature() == signature) return &n;
        return nullptr;
    }
};

// Nodes for every function and modifier in the unit; call edges resolved by
// name + arity within the unit, unresolvable callees recorded as external.
// The optional deadline is honored at node granularity.
Fcg build_fcg(const sol::SourceUnit& unit, const LabelMap& labels,
              const ir::LowerOptions& opts = {}, const Deadline* deadline = nullptr);

} // namespace acscan::detect
