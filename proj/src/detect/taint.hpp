#pragma once

#include <map>
#include <string>

#include "detect/fcg.hpp"
#include "support/deadline.hpp"

namespace acscan::detect {

struct TaintOptions {
    int max_call_depth = 3;
};

// Caller-context binding for a callee parameter, so that
// `require(isOwner(msg.sender))` sees through the call boundary.
struct ParamBinding;
using ParamEnv = std::map<std::string, ParamBinding>;

struct ParamBinding {
    const sol::Expr* arg = nullptr;
    const FcgNode* caller = nullptr;
    int caller_use_index = 0;
    const ParamEnv* caller_env = nullptr;
    int caller_depth = 0;
};

// True iff the value is msg.sender, is assigned from a dependent value
// (transitively, backward over Assign instructions), indexes storage by a
// dependent key, or is the return of a callee within the depth bound whose
// returned expression is dependent.
bool is_msg_sender_dependent(const sol::Expr* value, const FcgNode& node, int use_index,
                             const Fcg& fcg, const TaintOptions& opts, const Deadline& deadline,
                             int depth = 0, const ParamEnv& env = {});

} // namespace acscan::detect
