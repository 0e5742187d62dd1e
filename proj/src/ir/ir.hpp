#pragma once

#include <string>
#include <vector>

#include "frontend/ast.hpp"
#include "support/source_span.hpp"

namespace acscan::ir {

enum class IrKind {
    Transfer,       // value-bearing transfer/send/call{value: ...}
    StateWrite,     // assignment whose target root is a contract-level variable
    LowLevelCall,   // .call / .delegatecall / .staticcall without value
    HighLevelCall,  // member call on an expression (resolved at FCG build)
    InternalCall,   // bare-identifier call to a declared function
    SolidityCall,   // builtin: selfdestruct, require, revert, keccak256, ...
    Condition,      // branch predicate (if/loops/require/assert)
    Assign,         // assignment to a local
    Return,
    Other,
};

const char* to_string(IrKind kind);

struct IrInstruction {
    int index = 0;  // linear position, source statement order
    IrKind kind = IrKind::Other;
    std::string detail;  // state variable root / callee name / builtin name
    const sol::Expr* expr = nullptr;       // primary expression node
    const sol::Expr* call_base = nullptr;  // member-call base, when any
    std::vector<const sol::Expr*> operands;  // assignment sources / call args
    std::string target;  // assign target root name
    Span span;
    bool unsupported = false;
};

struct BasicBlock {
    int id = 0;
    std::vector<IrInstruction> instrs;
    bool is_revert = false;  // require/revert failure sink
};

struct Cfg {
    std::vector<BasicBlock> blocks;
    std::vector<std::pair<int, int>> edges;
    int entry = 0;
    std::vector<Span> unsupported;  // spans of constructs analyzed opaquely

    std::vector<int> successors(int block) const {
        std::vector<int> out;
        for (const auto& [from, to] : edges)
            if (from == block) out.push_back(to);
        return out;
    }

    // All instructions in index order.
    std::vector<const IrInstruction*> instructions() const;

    std::string to_dot(const std::string& name) const;
};

struct StateVariable {
    std::string name;
    std::string contract_name;
    std::string declared_type;
};

} // namespace acscan::ir
