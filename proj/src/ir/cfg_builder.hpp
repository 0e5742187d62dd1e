#pragma once

#include <set>
#include <string>
#include <vector>

#include "frontend/ast.hpp"
#include "ir/ir.hpp"

namespace acscan::ir {

struct LowerOptions {
    // Member-call names promoted to Transfer in addition to the builtins
    // (opt-in for token-style transfer/transferFrom).
    std::vector<std::string> promote_transfer_names;
};

// State variables visible in `contract`, including inherited ones whose base
// contracts are present in the same source unit.
std::vector<StateVariable> state_variables(const sol::SourceUnit& unit,
                                           const sol::ContractDef& contract);

// Lower one function body to basic blocks of IR instructions. if/else, loops,
// require/revert and returns produce the standard block structure; inline
// assembly and try/catch become opaque instructions recorded in
// Cfg::unsupported.
Cfg build_cfg(const sol::FunctionDef& fn, const sol::ContractDef* contract,
              const sol::SourceUnit& unit, const LowerOptions& opts = {});

// Primary classification of a single statement, as used by the lowering.
IrKind classify_statement(const sol::Stmt& stmt, const sol::ContractDef* contract,
                          const sol::SourceUnit& unit,
                          const std::set<std::string>& local_names,
                          const LowerOptions& opts = {});

} // namespace acscan::ir
