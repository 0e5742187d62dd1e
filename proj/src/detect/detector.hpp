#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detect/fcg.hpp"
#include "detect/taint.hpp"
#include "support/deadline.hpp"

namespace acscan::detect {

struct AcLocation {
    enum class Scope { Self, Callee, Modifier };
    Scope scope = Scope::Self;
    std::string where;  // callee path / modifier name
    int index = 0;      // effective linear index in the sensitive function
};

enum class RiskyAction { RiskyTransfer, RiskyStateWrite, LowLevelExternalCall, Selfdestruct };

const char* to_string(RiskyAction action);

struct RiskyLocation {
    RiskyAction action;
    int index = 0;
    Span span;
};

enum class AcStatus { NoCheck, CheckAfterAction };

struct Finding {
    std::string contract_name;
    std::string function_signature;
    RiskyAction action = RiskyAction::RiskyStateWrite;
    int index = 0;  // instruction index of the risky action
    Span span;      // source span of the risky action in the analyzed source
    AcStatus ac_status = AcStatus::NoCheck;
    std::optional<AcLocation> check;
};

struct DetectOptions {
    int max_call_depth = 3;
    bool internal_reachable = false;  // extend findings to reachable internals
};

// Earliest qualifying permission check: Condition instructions involving a
// msg.sender-dependent operand in the function itself, its callees within the
// depth bound, or its modifiers. Modifier checks map to index 0; callee
// checks map to the call-site index in the sensitive function.
std::optional<AcLocation> access_control_search(const FcgNode& node, const Fcg& fcg,
                                                const DetectOptions& opts,
                                                const Deadline& deadline);

// The four risky-action rules. Triggers are scanned in the node's own CFG;
// the complementary evidence (state writes for RiskyTransfer, transfers for
// RiskyStateWrite) is searched across the node and its callees within depth.
// At most one location per action kind, anchored at the earliest trigger.
std::vector<RiskyLocation> risky_actions_search(const FcgNode& node, const Fcg& fcg,
                                                const DetectOptions& opts,
                                                const Deadline& deadline);

struct FunctionAnalysis {
    int node_id = 0;
    std::optional<AcLocation> ac;
    std::vector<RiskyLocation> risky;
    std::vector<Finding> findings;
};

struct DetectResult {
    std::vector<FunctionAnalysis> analyses;  // one per analyzed sensitive function
    std::vector<Finding> findings;           // flattened
};

// Algorithm: for every sensitive node, flag each risky action that has no
// check at all or whose earliest check comes after the action.
DetectResult detect(const Fcg& fcg, const DetectOptions& opts, const Deadline& deadline);

} // namespace acscan::detect
