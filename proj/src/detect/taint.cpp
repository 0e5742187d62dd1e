#include "detect/taint.hpp"

#include <limits>
#include <set>

namespace acscan::detect {

namespace {

const std::set<std::string_view> kOpaqueBuiltins = {
    "keccak256", "sha3", "sha256", "ripemd160", "ecrecover", "addmod", "mulmod",
    "blockhash", "gasleft"};

struct Tracer {
    const Fcg& fcg;
    const TaintOptions& opts;
    const Deadline& deadline;

    bool trace(const sol::Expr* e, const FcgNode& node, int use_index, int depth,
               const ParamEnv& env) const {
        if (!e) return false;
        deadline.check();

        switch (e->kind) {
            case sol::ExprKind::Member:
                if (e->text == "sender" && e->a && e->a->kind == sol::ExprKind::Ident &&
                    e->a->text == "msg")
                    return true;
                return trace(e->a.get(), node, use_index, depth, env);

            case sol::ExprKind::Ident: {
                const std::string& name = e->text;
                if (auto it = env.find(name); it != env.end()) {
                    const ParamBinding& b = it->second;
                    return trace(b.arg, *b.caller, b.caller_use_index, b.caller_depth,
                                 b.caller_env ? *b.caller_env : ParamEnv{});
                }
                return trace_local(name, node, use_index, depth, env);
            }

            case sol::ExprKind::Index:
                return trace(e->a.get(), node, use_index, depth, env) ||
                       trace(e->b.get(), node, use_index, depth, env);

            case sol::ExprKind::Binary:
                return trace(e->a.get(), node, use_index, depth, env) ||
                       trace(e->b.get(), node, use_index, depth, env);

            case sol::ExprKind::Unary:
                return trace(e->a.get(), node, use_index, depth, env);

            case sol::ExprKind::Conditional:
                return trace(e->a.get(), node, use_index, depth, env) ||
                       trace(e->b.get(), node, use_index, depth, env) ||
                       trace(e->c.get(), node, use_index, depth, env);

            case sol::ExprKind::Tuple: {
                for (const auto& item : e->items)
                    if (item && trace(item.get(), node, use_index, depth, env)) return true;
                return false;
            }

            case sol::ExprKind::Assign:
                return trace(e->b.get(), node, use_index, depth, env);

            case sol::ExprKind::Call:
                return trace_call(*e, node, use_index, depth, env);

            default:
                return false;
        }
    }

    // Backward walk over Assign instructions: the latest write to `name`
    // before `use_index` carries the dependency.
    bool trace_local(const std::string& name, const FcgNode& node, int use_index, int depth,
                     const ParamEnv& env) const {
        if (name.empty()) return false;
        const ir::IrInstruction* latest = nullptr;
        for (const auto* instr : node.cfg.instructions()) {
            if (instr->index >= use_index) break;
            if (instr->kind != ir::IrKind::Assign || instr->target != name) continue;
            if (!latest || instr->index > latest->index) latest = instr;
        }
        if (!latest) return false;
        for (const auto* op : latest->operands)
            if (trace(op, node, latest->index, depth, env)) return true;
        return false;
    }

    bool trace_call(const sol::Expr& call, const FcgNode& node, int use_index, int depth,
                    const ParamEnv& env) const {
        const sol::Expr* callee = call.a.get();
        if (!callee) return false;

        // elementary casts propagate; hashes and provider namespaces do not
        if (callee->kind == sol::ExprKind::TypeName) {
            for (const auto& arg : call.items)
                if (arg && trace(arg.get(), node, use_index, depth, env)) return true;
            return false;
        }
        if (callee->kind == sol::ExprKind::Ident && kOpaqueBuiltins.count(callee->text))
            return false;
        if (callee->kind == sol::ExprKind::Member && callee->a &&
            callee->a->kind == sol::ExprKind::Ident) {
            const std::string& ns = callee->a->text;
            if (ns == "abi" || ns == "msg" || ns == "block" || ns == "tx") return false;
        }

        if (depth >= opts.max_call_depth) return false;

        // find the call-site instruction to follow the FCG edge
        int call_index = -1;
        for (const auto* instr : node.cfg.instructions()) {
            if (instr->expr == &call &&
                (instr->kind == ir::IrKind::InternalCall ||
                 instr->kind == ir::IrKind::HighLevelCall)) {
                call_index = instr->index;
                break;
            }
        }
        if (call_index < 0) return false;
        const FcgNode* target = nullptr;
        for (const auto& edge : fcg.edges) {
            if (edge.caller == node.id && edge.call_index == call_index) {
                target = &fcg.nodes[edge.callee];
                break;
            }
        }
        if (!target || !target->def) return false;

        // bind callee parameters to caller argument expressions
        ParamEnv callee_env;
        const auto& params = target->def->params;
        for (std::size_t i = 0; i < params.size() && i < call.items.size(); ++i) {
            if (params[i].name.empty() || !call.items[i]) continue;
            callee_env[params[i].name] =
                ParamBinding{call.items[i].get(), &node, use_index, &env, depth};
        }

        // dependent iff some returned expression is dependent
        constexpr int kEnd = std::numeric_limits<int>::max();
        for (const auto* instr : target->cfg.instructions()) {
            if (instr->kind != ir::IrKind::Return || !instr->expr) continue;
            if (trace(instr->expr, *target, instr->index, depth + 1, callee_env)) return true;
        }
        // named return variables assigned in the body
        for (const auto& r : target->def->returns) {
            if (r.name.empty()) continue;
            Tracer sub{fcg, opts, deadline};
            if (sub.trace_local(r.name, *target, kEnd, depth + 1, callee_env)) return true;
        }
        return false;
    }
};

} // namespace

bool is_msg_sender_dependent(const sol::Expr* value, const FcgNode& node, int use_index,
                             const Fcg& fcg, const TaintOptions& opts, const Deadline& deadline,
                             int depth, const ParamEnv& env) {
    Tracer tracer{fcg, opts, deadline};
    return tracer.trace(value, node, use_index, depth, env);
}

} // namespace acscan::detect
