#include "detect/detector.hpp"

#include <algorithm>
#include <set>

namespace acscan::detect {

const char* to_string(RiskyAction action) {
    switch (action) {
        case RiskyAction::RiskyTransfer: return "risky-transfer";
        case RiskyAction::RiskyStateWrite: return "risky-state-write";
        case RiskyAction::LowLevelExternalCall: return "low-level-call";
        case RiskyAction::Selfdestruct: return "selfdestruct";
    }
    return "?";
}

namespace {

// Operand leaves of the condition expression: both sides of every logical
// and comparison operator, recursively; a condition without logical shape is
// its own single leaf.
void collect_condition_operands(const sol::Expr* e, std::vector<const sol::Expr*>& out) {
    if (!e) return;
    if (e->kind == sol::ExprKind::Binary &&
        (e->text == "&&" || e->text == "||" || e->text == "==" || e->text == "!=" ||
         e->text == "<" || e->text == "<=" || e->text == ">" || e->text == ">=")) {
        collect_condition_operands(e->a.get(), out);
        collect_condition_operands(e->b.get(), out);
        return;
    }
    if (e->kind == sol::ExprKind::Unary && e->text == "!") {
        collect_condition_operands(e->a.get(), out);
        return;
    }
    out.push_back(e);
}

struct Searcher {
    const Fcg& fcg;
    const DetectOptions& opts;
    const Deadline& deadline;

    bool condition_qualifies(const ir::IrInstruction& instr, const FcgNode& node, int depth,
                             const ParamEnv& env) const {
        std::vector<const sol::Expr*> operands;
        collect_condition_operands(instr.expr, operands);
        TaintOptions taint_opts{opts.max_call_depth};
        for (const auto* operand : operands) {
            if (is_msg_sender_dependent(operand, node, instr.index, fcg, taint_opts, deadline,
                                        depth, env))
                return true;
        }
        return false;
    }

    // any qualifying Condition inside `node` or its callees within the
    // remaining depth budget
    bool scope_has_check(const FcgNode& node, int depth, const ParamEnv& env,
                         std::set<int>& visited) const {
        deadline.check();
        if (visited.count(node.id)) return false;
        visited.insert(node.id);
        for (const auto* instr : node.cfg.instructions()) {
            if (instr->kind == ir::IrKind::Condition &&
                condition_qualifies(*instr, node, depth, env))
                return true;
        }
        if (depth >= opts.max_call_depth) return false;
        for (const auto* edge : fcg.edges_from(node.id)) {
            const FcgNode& callee = fcg.nodes[edge->callee];
            ParamEnv callee_env = bind_call_env(node, callee, edge->call_index, depth, env);
            if (scope_has_check(callee, depth + 1, callee_env, visited)) return true;
        }
        return false;
    }

    // bind callee parameters to the argument expressions at the call site
    ParamEnv bind_call_env(const FcgNode& caller, const FcgNode& callee, int call_index,
                           int caller_depth, const ParamEnv& caller_env) const {
        ParamEnv env;
        if (!callee.def) return env;
        const ir::IrInstruction* site = nullptr;
        for (const auto* instr : caller.cfg.instructions()) {
            if (instr->index == call_index) {
                site = instr;
                break;
            }
        }
        if (!site || !site->expr || site->expr->kind != sol::ExprKind::Call) return env;
        const auto& args = site->expr->items;
        const auto& params = callee.def->params;
        for (std::size_t i = 0; i < params.size() && i < args.size(); ++i) {
            if (params[i].name.empty() || !args[i]) continue;
            // caller_env lifetime is managed by the caller frame; bindings are
            // only consulted during this search
            env[params[i].name] =
                ParamBinding{args[i].get(), &caller, call_index, &caller_env, caller_depth};
        }
        return env;
    }

    std::optional<AcLocation> find_check(const FcgNode& node) const {
        std::optional<AcLocation> best;
        auto consider = [&](AcLocation loc) {
            if (!best || loc.index < best->index) best = std::move(loc);
        };

        // (a) the function's own cfg
        for (const auto* instr : node.cfg.instructions()) {
            if (instr->kind != ir::IrKind::Condition) continue;
            if (condition_qualifies(*instr, node, 0, {}))
                consider({AcLocation::Scope::Self, "", instr->index});
        }

        // (c) modifiers run before the body: index 0
        for (int mod_id : node.modifier_nodes) {
            const FcgNode& mod = fcg.nodes[mod_id];
            ParamEnv mod_env = bind_modifier_env(node, mod);
            std::set<int> visited{node.id};
            if (scope_has_check(mod, 0, mod_env, visited))
                consider({AcLocation::Scope::Modifier, mod.info.name, 0});
        }

        // (b) callees: a check found anywhere in the callee subtree maps to
        // the call-site index in the sensitive function
        for (const auto* edge : fcg.edges_from(node.id)) {
            if (best && best->index <= edge->call_index) continue;  // cannot improve
            const FcgNode& callee = fcg.nodes[edge->callee];
            ParamEnv env = bind_call_env(node, callee, edge->call_index, 0, {});
            std::set<int> visited{node.id};
            if (scope_has_check(callee, 1, env, visited))
                consider({AcLocation::Scope::Callee, callee.info.signature(), edge->call_index});
        }
        return best;
    }

    // modifier parameters bound to invocation arguments from the function header
    ParamEnv bind_modifier_env(const FcgNode& fn, const FcgNode& mod) const {
        ParamEnv env;
        if (!fn.def || !mod.def) return env;
        for (const auto& inv : fn.def->invocations) {
            if (inv.name != mod.info.name) continue;
            const auto& params = mod.def->params;
            for (std::size_t i = 0; i < params.size() && i < inv.args.size(); ++i) {
                if (params[i].name.empty() || !inv.args[i]) continue;
                env[params[i].name] = ParamBinding{inv.args[i].get(), &fn, 0, nullptr, 0};
            }
            break;
        }
        return env;
    }

    bool scope_has_kind(const FcgNode& node, ir::IrKind kind, int depth,
                        std::set<int>& visited) const {
        deadline.check();
        if (visited.count(node.id)) return false;
        visited.insert(node.id);
        for (const auto* instr : node.cfg.instructions())
            if (instr->kind == kind) return true;
        if (depth >= opts.max_call_depth) return false;
        for (const auto* edge : fcg.edges_from(node.id)) {
            if (scope_has_kind(fcg.nodes[edge->callee], kind, depth + 1, visited)) return true;
        }
        return false;
    }

    std::vector<RiskyLocation> find_risky(const FcgNode& node) const {
        const ir::IrInstruction* first_transfer = nullptr;
        const ir::IrInstruction* first_write = nullptr;
        const ir::IrInstruction* first_lowlevel = nullptr;
        const ir::IrInstruction* first_selfdestruct = nullptr;
        for (const auto* instr : node.cfg.instructions()) {
            switch (instr->kind) {
                case ir::IrKind::Transfer:
                    if (!first_transfer) first_transfer = instr;
                    break;
                case ir::IrKind::StateWrite:
                    if (!first_write) first_write = instr;
                    break;
                case ir::IrKind::LowLevelCall:
                    if (!first_lowlevel) first_lowlevel = instr;
                    break;
                case ir::IrKind::SolidityCall:
                    if (instr->detail == "selfdestruct" && !first_selfdestruct)
                        first_selfdestruct = instr;
                    break;
                default: break;
            }
        }

        std::vector<RiskyLocation> out;
        if (first_transfer) {
            std::set<int> visited;
            if (!scope_has_kind(node, ir::IrKind::StateWrite, 0, visited))
                out.push_back({RiskyAction::RiskyTransfer, first_transfer->index,
                               first_transfer->span});
        }
        if (first_write) {
            std::set<int> visited;
            if (!scope_has_kind(node, ir::IrKind::Transfer, 0, visited))
                out.push_back({RiskyAction::RiskyStateWrite, first_write->index,
                               first_write->span});
        }
        if (first_lowlevel)
            out.push_back({RiskyAction::LowLevelExternalCall, first_lowlevel->index,
                           first_lowlevel->span});
        if (first_selfdestruct)
            out.push_back({RiskyAction::Selfdestruct, first_selfdestruct->index,
                           first_selfdestruct->span});
        std::sort(out.begin(), out.end(),
                  [](const RiskyLocation& a, const RiskyLocation& b) { return a.index < b.index; });
        return out;
    }
};

} // namespace

std::optional<AcLocation> access_control_search(const FcgNode& node, const Fcg& fcg,
                                                const DetectOptions& opts,
                                                const Deadline& deadline) {
    Searcher searcher{fcg, opts, deadline};
    return searcher.find_check(node);
}

std::vector<RiskyLocation> risky_actions_search(const FcgNode& node, const Fcg& fcg,
                                                const DetectOptions& opts,
                                                const Deadline& deadline) {
    Searcher searcher{fcg, opts, deadline};
    return searcher.find_risky(node);
}

DetectResult detect(const Fcg& fcg, const DetectOptions& opts, const Deadline& deadline) {
    DetectResult result;
    Searcher searcher{fcg, opts, deadline};

    // entry-point policy: public/external sensitive functions; optionally
    // internal ones reachable within depth from an unguarded public entry
    std::set<int> reachable_internal;
    if (opts.internal_reachable) {
        for (const auto& entry : fcg.nodes) {
            if (entry.is_modifier || !entry.def || !entry.def->body) continue;
            if (entry.info.visibility != sol::Visibility::Public &&
                entry.info.visibility != sol::Visibility::External)
                continue;
            if (searcher.find_check(entry)) continue;  // guarded entry
            // BFS within depth
            std::vector<std::pair<int, int>> work{{entry.id, 0}};
            std::set<int> seen{entry.id};
            while (!work.empty()) {
                auto [id, d] = work.back();
                work.pop_back();
                if (d >= opts.max_call_depth) continue;
                for (const auto* edge : fcg.edges_from(id)) {
                    if (seen.count(edge->callee)) continue;
                    seen.insert(edge->callee);
                    reachable_internal.insert(edge->callee);
                    work.push_back({edge->callee, d + 1});
                }
            }
        }
    }

    for (const auto& node : fcg.nodes) {
        deadline.check();
        if (!node.sensitivity.is_sensitive || node.is_modifier) continue;
        if (!node.def || !node.def->body) continue;
        // proper constructors run once at deployment and are not callable
        // entry points; the misnamed-constructor case never reaches here
        // because it parses as a plain public function
        if (node.info.kind == sol::FnKind::Constructor) continue;
        bool is_entry = node.info.visibility == sol::Visibility::Public ||
                        node.info.visibility == sol::Visibility::External;
        if (!is_entry && !(opts.internal_reachable && reachable_internal.count(node.id)))
            continue;

        FunctionAnalysis analysis;
        analysis.node_id = node.id;
        analysis.ac = searcher.find_check(node);
        analysis.risky = searcher.find_risky(node);

        for (const auto& r : analysis.risky) {
            bool flagged = !analysis.ac || analysis.ac->index > r.index;
            if (!flagged) continue;
            Finding f;
            f.contract_name = node.info.contract_name;
            f.function_signature = node.info.signature();
            f.action = r.action;
            f.index = r.index;
            f.span = r.span;
            if (analysis.ac) {
                f.ac_status = AcStatus::CheckAfterAction;
                f.check = analysis.ac;
            } else {
                f.ac_status = AcStatus::NoCheck;
            }
            analysis.findings.push_back(f);
            result.findings.push_back(std::move(f));
        }
        result.analyses.push_back(std::move(analysis));
    }
    return result;
}

} // namespace acscan::detect
