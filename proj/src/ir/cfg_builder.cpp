#include "ir/cfg_builder.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace acscan::ir {

const char* to_string(IrKind kind) {
    switch (kind) {
        case IrKind::Transfer: return "Transfer";
        case IrKind::StateWrite: return "StateWrite";
        case IrKind::LowLevelCall: return "LowLevelCall";
        case IrKind::HighLevelCall: return "HighLevelCall";
        case IrKind::InternalCall: return "InternalCall";
        case IrKind::SolidityCall: return "SolidityCall";
        case IrKind::Condition: return "Condition";
        case IrKind::Assign: return "Assign";
        case IrKind::Return: return "Return";
        case IrKind::Other: return "Other";
    }
    return "Other";
}

std::vector<const IrInstruction*> Cfg::instructions() const {
    std::vector<const IrInstruction*> out;
    for (const auto& b : blocks)
        for (const auto& i : b.instrs) out.push_back(&i);
    std::sort(out.begin(), out.end(),
              [](const IrInstruction* a, const IrInstruction* b) { return a->index < b->index; });
    return out;
}

std::string Cfg::to_dot(const std::string& name) const {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    for (const auto& b : blocks) {
        os << "  b" << b.id << " [shape=box,label=\"B" << b.id;
        if (b.is_revert) os << " (revert)";
        for (const auto& i : b.instrs) {
            os << "\\n" << i.index << ": " << to_string(i.kind);
            if (!i.detail.empty()) os << "(" << i.detail << ")";
        }
        os << "\"];\n";
    }
    for (const auto& [from, to] : edges) os << "  b" << from << " -> b" << to << ";\n";
    os << "}\n";
    return os.str();
}

std::vector<StateVariable> state_variables(const sol::SourceUnit& unit,
                                           const sol::ContractDef& contract) {
    std::vector<StateVariable> out;
    std::vector<const sol::ContractDef*> chain;
    std::vector<const sol::ContractDef*> work{&contract};
    while (!work.empty()) {
        const sol::ContractDef* c = work.back();
        work.pop_back();
        if (std::find(chain.begin(), chain.end(), c) != chain.end()) continue;
        chain.push_back(c);
        for (const auto& base : c->bases) {
            if (const auto* b = unit.find_contract(base)) work.push_back(b);
        }
    }
    // derived declarations win over same-named base declarations
    for (const auto* c : chain) {
        for (const auto& v : c->state_vars) {
            bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const StateVariable& s) { return s.name == v.name; });
            if (!seen) out.push_back(StateVariable{v.name, c->name, v.type_name});
        }
    }
    return out;
}

namespace {

const std::set<std::string_view> kHashBuiltins = {"keccak256", "sha3",   "sha256", "ripemd160",
                                                  "ecrecover", "addmod", "mulmod", "blockhash"};
const std::set<std::string_view> kGlobalNamespaces = {"abi", "msg", "block", "tx", "string",
                                                      "bytes", "type"};

class Lowerer {
public:
    Lowerer(const sol::ContractDef* contract, const sol::SourceUnit& unit,
            const LowerOptions& opts)
        : unit_(unit), opts_(opts) {
        if (contract) {
            for (const auto& v : state_variables(unit, *contract)) state_roots_.insert(v.name);
        }
        for (const auto& c : unit.contracts) {
            contract_names_.insert(c->name);
            for (const auto& s : c->struct_names) type_like_.insert(s);
            for (const auto& e : c->enum_names) type_like_.insert(e);
            for (const auto& e : c->event_names) type_like_.insert(e);
            for (const auto& e : c->error_names) type_like_.insert(e);
        }
    }

    Cfg lower(const sol::FunctionDef& fn) {
        cfg_ = Cfg{};
        next_index_ = 0;
        revert_block_ = -1;
        cur_ = new_block();  // entry, id 0

        scopes_.clear();
        push_scope();
        for (const auto& p : fn.params)
            if (!p.name.empty()) declare(p.name);
        for (const auto& r : fn.returns)
            if (!r.name.empty()) declare(r.name);

        if (fn.body) lower_stmt(*fn.body);
        pop_scope();
        prune_unreachable();
        return std::move(cfg_);
    }

    void seed_locals(const std::set<std::string>& names) {
        push_scope();
        for (const auto& n : names) declare(n);
    }

    // Lower one statement into a scratch cfg; used by classify_statement.
    IrKind classify_one(const sol::Stmt& stmt) {
        cfg_ = Cfg{};
        next_index_ = 0;
        revert_block_ = -1;
        cur_ = new_block();
        if (scopes_.empty()) push_scope();
        lower_stmt(stmt);
        const IrInstruction* last = nullptr;
        for (const auto& b : cfg_.blocks)
            for (const auto& i : b.instrs)
                if (!last || i.index > last->index) last = &i;
        return last ? last->kind : IrKind::Other;
    }

private:
    const sol::SourceUnit& unit_;
    const LowerOptions& opts_;
    std::set<std::string> state_roots_;
    std::set<std::string> contract_names_;
    std::set<std::string> type_like_;

    Cfg cfg_;
    int cur_ = 0;  // -1 after a terminator
    int next_index_ = 0;
    int revert_block_ = -1;
    struct LoopCtx {
        int continue_target;
        int break_target;
    };
    std::vector<LoopCtx> loops_;
    std::vector<std::set<std::string>> scopes_;

    // ---- plumbing ----------------------------------------------------------

    int new_block() {
        BasicBlock b;
        b.id = static_cast<int>(cfg_.blocks.size());
        cfg_.blocks.push_back(std::move(b));
        return cfg_.blocks.back().id;
    }

    void edge(int from, int to) { cfg_.edges.emplace_back(from, to); }

    int ensure_current() {
        if (cur_ < 0) cur_ = new_block();  // dead code; pruned afterwards
        return cur_;
    }

    IrInstruction& emit(IrKind kind, Span span) {
        int b = ensure_current();
        IrInstruction instr;
        instr.index = next_index_++;
        instr.kind = kind;
        instr.span = span;
        cfg_.blocks[b].instrs.push_back(std::move(instr));
        return cfg_.blocks[b].instrs.back();
    }

    int revert_block() {
        if (revert_block_ < 0) {
            revert_block_ = new_block();
            cfg_.blocks[revert_block_].is_revert = true;
        }
        return revert_block_;
    }

    void push_scope() { scopes_.emplace_back(); }
    void pop_scope() { scopes_.pop_back(); }
    void declare(const std::string& name) {
        if (!scopes_.empty()) scopes_.back().insert(name);
    }
    bool is_local(const std::string& name) const {
        for (const auto& s : scopes_)
            if (s.count(name)) return true;
        return false;
    }
    bool is_state_root(const std::string& name) const {
        return !name.empty() && state_roots_.count(name) && !is_local(name);
    }

    static std::string target_root(const sol::Expr* e) {
        while (e) {
            switch (e->kind) {
                case sol::ExprKind::Ident: return e->text;
                case sol::ExprKind::Index:
                case sol::ExprKind::Member: e = e->a.get(); break;
                default: return "";
            }
        }
        return "";
    }

    // ---- call classification ------------------------------------------------

    struct CallInfo {
        IrKind kind = IrKind::Other;
        std::string detail;
        const sol::Expr* base = nullptr;
    };

    // Peels old-style .value(...)/.gas(...) option chains:
    //   a.call.value(1 ether)(data)  ->  member chain head a.call, value-bearing
    static const sol::Expr* unwrap_option_chain(const sol::Expr* callee, bool& has_value) {
        const sol::Expr* cur = callee;
        while (cur) {
            if (cur->kind == sol::ExprKind::Call) {
                for (const auto& opt : cur->call_options)
                    if (opt.name == "value") has_value = true;
                cur = cur->a.get();
                continue;
            }
            if (cur->kind == sol::ExprKind::Member && (cur->text == "value" || cur->text == "gas")) {
                if (cur->text == "value") has_value = true;
                cur = cur->a.get();
                continue;
            }
            break;
        }
        return cur;
    }

    bool is_promoted_transfer(const std::string& member) const {
        return std::find(opts_.promote_transfer_names.begin(), opts_.promote_transfer_names.end(),
                         member) != opts_.promote_transfer_names.end();
    }

    CallInfo classify_call(const sol::Expr& call) const {
        CallInfo info;
        bool has_value = false;
        for (const auto& opt : call.call_options)
            if (opt.name == "value") has_value = true;
        const sol::Expr* callee = unwrap_option_chain(call.a.get(), has_value);
        if (!callee) return info;

        if (callee->kind == sol::ExprKind::Member) {
            const std::string& m = callee->text;
            const sol::Expr* base = callee->a.get();
            info.base = base;
            bool base_is_namespace =
                base && ((base->kind == sol::ExprKind::Ident && kGlobalNamespaces.count(base->text)) ||
                         base->kind == sol::ExprKind::TypeName);
            if (m == "call" || m == "delegatecall" || m == "staticcall" || m == "callcode") {
                if (m == "call" && has_value) {
                    info.kind = IrKind::Transfer;
                    info.detail = "call.value";
                } else {
                    info.kind = IrKind::LowLevelCall;
                    info.detail = m;
                }
                return info;
            }
            if ((m == "transfer" || m == "send") && call.items.size() == 1 && !base_is_namespace) {
                info.kind = IrKind::Transfer;
                info.detail = m;
                return info;
            }
            if (is_promoted_transfer(m)) {
                info.kind = IrKind::Transfer;
                info.detail = m;
                return info;
            }
            if (base_is_namespace) {
                info.kind = IrKind::SolidityCall;
                info.detail = base->text + "." + m;
                return info;
            }
            if (m == "push" || m == "pop") {
                std::string root = target_root(base);
                if (is_state_root(root)) {
                    info.kind = IrKind::StateWrite;
                    info.detail = root;
                } else {
                    info.kind = IrKind::Other;
                    info.detail = m;
                }
                return info;
            }
            info.kind = IrKind::HighLevelCall;
            info.detail = m;
            return info;
        }

        if (callee->kind == sol::ExprKind::Ident) {
            const std::string& name = callee->text;
            if (name == "selfdestruct" || name == "suicide") {
                info.kind = IrKind::SolidityCall;
                info.detail = "selfdestruct";
                return info;
            }
            if (name == "require" || name == "assert" || name == "revert") {
                info.kind = IrKind::SolidityCall;
                info.detail = name;
                return info;
            }
            if (kHashBuiltins.count(name) || name == "gasleft") {
                info.kind = IrKind::SolidityCall;
                info.detail = name;
                return info;
            }
            if (contract_names_.count(name) || type_like_.count(name) || is_local(name)) {
                info.kind = IrKind::Other;  // cast, struct construction, event, fn-typed local
                info.detail = name;
                return info;
            }
            info.kind = IrKind::InternalCall;
            info.detail = name;
            return info;
        }

        // elementary cast, new-expression, computed callee
        info.kind = IrKind::Other;
        if (callee->kind == sol::ExprKind::TypeName) info.detail = callee->text;
        if (callee->kind == sol::ExprKind::New) info.detail = "new";
        return info;
    }

    // ---- expression-level emission -------------------------------------------

    static bool is_mutation_unary(const sol::Expr& e) {
        return e.kind == sol::ExprKind::Unary &&
               (e.text == "++" || e.text == "--" || e.text == "delete");
    }

    // Calls that belong to an enclosing call's option chain must not emit twice.
    void collect_chained(const sol::Expr* e, std::set<const sol::Expr*>& consumed) const {
        if (!e) return;
        if (e->kind == sol::ExprKind::Call) {
            const sol::Expr* cur = e->a.get();
            while (cur) {
                if (cur->kind == sol::ExprKind::Call) {
                    consumed.insert(cur);
                    cur = cur->a.get();
                    continue;
                }
                if (cur->kind == sol::ExprKind::Member &&
                    (cur->text == "value" || cur->text == "gas")) {
                    cur = cur->a.get();
                    continue;
                }
                break;
            }
        }
        for_each_child(*e, [&](const sol::Expr* c) { collect_chained(c, consumed); });
    }

    template <typename Fn>
    static void for_each_child(const sol::Expr& e, Fn&& fn) {
        if (e.a) fn(e.a.get());
        if (e.b) fn(e.b.get());
        if (e.c) fn(e.c.get());
        for (const auto& item : e.items)
            if (item) fn(item.get());
        for (const auto& opt : e.call_options)
            if (opt.value) fn(opt.value.get());
    }

    void emit_sub(const sol::Expr* e, const sol::Expr* skip_top,
                  const std::set<const sol::Expr*>& consumed) {
        if (!e) return;
        for_each_child(*e, [&](const sol::Expr* c) { emit_sub(c, skip_top, consumed); });
        if (e == skip_top || consumed.count(e)) return;
        if (e->kind == sol::ExprKind::Call) {
            CallInfo info = classify_call(*e);
            // sub-expression noise (casts, hashes) stays out of the stream;
            // anything the detectors or the FCG need is kept
            bool keep = info.kind == IrKind::Transfer || info.kind == IrKind::StateWrite ||
                        info.kind == IrKind::LowLevelCall || info.kind == IrKind::HighLevelCall ||
                        info.kind == IrKind::InternalCall ||
                        (info.kind == IrKind::SolidityCall && info.detail == "selfdestruct");
            if (keep) emit_call(*e, info);
            return;
        }
        if (e->kind == sol::ExprKind::Assign) {
            emit_assign(*e);
            return;
        }
        if (is_mutation_unary(*e)) {
            emit_mutation(*e);
            return;
        }
    }

    void emit_for_statement_expr(const sol::Expr& e) {
        std::set<const sol::Expr*> consumed;
        collect_chained(&e, consumed);
        emit_sub(&e, &e, consumed);
        // primary instruction for the top-level node
        if (e.kind == sol::ExprKind::Call) {
            emit_call(e, classify_call(e));
        } else if (e.kind == sol::ExprKind::Assign) {
            emit_assign(e);
        } else if (is_mutation_unary(e)) {
            emit_mutation(e);
        } else {
            auto& i = emit(IrKind::Other, e.span);
            i.expr = &e;
        }
    }

    void emit_subtree_only(const sol::Expr& e) {
        std::set<const sol::Expr*> consumed;
        collect_chained(&e, consumed);
        emit_sub(&e, nullptr, consumed);
    }

    void emit_sub_excluding_top(const sol::Expr& e) {
        std::set<const sol::Expr*> consumed;
        collect_chained(&e, consumed);
        emit_sub(&e, &e, consumed);
    }

    void emit_call(const sol::Expr& call, const CallInfo& info) {
        auto& i = emit(info.kind, call.span);
        i.detail = info.detail;
        i.expr = &call;
        i.call_base = info.base;
        for (const auto& arg : call.items)
            if (arg) i.operands.push_back(arg.get());
    }

    void emit_assign(const sol::Expr& assign) {
        const sol::Expr* target = assign.a.get();
        const sol::Expr* value = assign.b.get();
        bool compound = assign.text != "=";
        if (target && target->kind == sol::ExprKind::Tuple) {
            for (const auto& elem : target->items) {
                if (!elem) continue;
                emit_single_assign(elem.get(), value, compound, assign.span, &assign);
            }
            return;
        }
        emit_single_assign(target, value, compound, assign.span, &assign);
    }

    void emit_single_assign(const sol::Expr* target, const sol::Expr* value, bool compound,
                            Span span, const sol::Expr* whole) {
        std::string root = target_root(target);
        bool state = is_state_root(root);
        auto& i = emit(state ? IrKind::StateWrite : IrKind::Assign, span);
        i.detail = state ? root : "";
        i.target = root;
        i.expr = whole;
        if (value) i.operands.push_back(value);
        if (compound && target) i.operands.push_back(target);
    }

    void emit_mutation(const sol::Expr& unary) {
        std::string root = target_root(unary.a.get());
        bool state = is_state_root(root);
        auto& i = emit(state ? IrKind::StateWrite : IrKind::Assign, unary.span);
        i.detail = state ? root : "";
        i.target = root;
        i.expr = &unary;
        if (unary.a) i.operands.push_back(unary.a.get());
    }

    // ---- statements -----------------------------------------------------------

    static const sol::Expr* callee_ident(const sol::Expr& e) {
        if (e.kind != sol::ExprKind::Call || !e.a) return nullptr;
        return e.a->kind == sol::ExprKind::Ident ? e.a.get() : nullptr;
    }

    void lower_stmt(const sol::Stmt& stmt) {
        switch (stmt.kind) {
            case sol::StmtKind::Block:
            case sol::StmtKind::Unchecked: {
                push_scope();
                for (const auto& s : stmt.stmts) lower_stmt(*s);
                pop_scope();
                return;
            }
            case sol::StmtKind::VarDecl: {
                if (stmt.expr) emit_subtree_only(*stmt.expr);
                for (const auto& b : stmt.decls) {
                    if (b.name.empty()) continue;
                    if (stmt.expr) {
                        auto& i = emit(IrKind::Assign, stmt.span);
                        i.target = b.name;
                        i.operands.push_back(stmt.expr.get());
                    }
                    declare(b.name);
                }
                return;
            }
            case sol::StmtKind::ExprStmt: {
                const sol::Expr& e = *stmt.expr;
                if (const sol::Expr* name = callee_ident(e)) {
                    if (name->text == "require" || name->text == "assert") {
                        lower_guard(e);
                        return;
                    }
                    if (name->text == "revert") {
                        emit_sub_excluding_top(e);
                        auto& i = emit(IrKind::SolidityCall, e.span);
                        i.detail = "revert";
                        i.expr = &e;
                        terminate_into(revert_block());
                        return;
                    }
                }
                emit_for_statement_expr(e);
                return;
            }
            case sol::StmtKind::If: {
                emit_sub_excluding_top(*stmt.expr);
                auto& cond = emit(IrKind::Condition, stmt.expr->span);
                cond.expr = stmt.expr.get();
                int cond_block = cur_;
                int then_block = new_block();
                edge(cond_block, then_block);
                cur_ = then_block;
                lower_stmt(*stmt.sub1);
                int then_end = cur_;
                int else_end = -1;
                int else_block = -1;
                if (stmt.sub2) {
                    else_block = new_block();
                    edge(cond_block, else_block);
                    cur_ = else_block;
                    lower_stmt(*stmt.sub2);
                    else_end = cur_;
                }
                int merge = new_block();
                if (!stmt.sub2) edge(cond_block, merge);  // false edge
                if (then_end >= 0) edge(then_end, merge);
                if (else_end >= 0) edge(else_end, merge);
                cur_ = merge;
                return;
            }
            case sol::StmtKind::While: {
                int cond_block = new_block();
                if (cur_ >= 0) edge(cur_, cond_block);
                cur_ = cond_block;
                emit_sub_excluding_top(*stmt.expr);
                auto& cond = emit(IrKind::Condition, stmt.expr->span);
                cond.expr = stmt.expr.get();
                cond_block = cur_;
                int body = new_block();
                int exit = new_block();
                edge(cond_block, body);
                edge(cond_block, exit);
                loops_.push_back({cond_block, exit});
                cur_ = body;
                lower_stmt(*stmt.sub1);
                if (cur_ >= 0) edge(cur_, cond_block);
                loops_.pop_back();
                cur_ = exit;
                return;
            }
            case sol::StmtKind::DoWhile: {
                int body = new_block();
                if (cur_ >= 0) edge(cur_, body);
                int cond_block = new_block();
                int exit = new_block();
                loops_.push_back({cond_block, exit});
                cur_ = body;
                lower_stmt(*stmt.sub1);
                if (cur_ >= 0) edge(cur_, cond_block);
                loops_.pop_back();
                cur_ = cond_block;
                emit_sub_excluding_top(*stmt.expr);
                auto& cond = emit(IrKind::Condition, stmt.expr->span);
                cond.expr = stmt.expr.get();
                edge(cur_, body);
                edge(cur_, exit);
                cur_ = exit;
                return;
            }
            case sol::StmtKind::For: {
                push_scope();
                if (stmt.sub2) lower_stmt(*stmt.sub2);  // init
                int cond_block = new_block();
                if (cur_ >= 0) edge(cur_, cond_block);
                cur_ = cond_block;
                if (stmt.expr) {
                    emit_sub_excluding_top(*stmt.expr);
                    auto& cond = emit(IrKind::Condition, stmt.expr->span);
                    cond.expr = stmt.expr.get();
                }
                cond_block = cur_;
                int body = new_block();
                int post = new_block();
                int exit = new_block();
                edge(cond_block, body);
                if (stmt.expr) edge(cond_block, exit);
                loops_.push_back({post, exit});
                cur_ = body;
                lower_stmt(*stmt.sub1);
                if (cur_ >= 0) edge(cur_, post);
                loops_.pop_back();
                cur_ = post;
                if (stmt.expr2) emit_for_statement_expr(*stmt.expr2);
                edge(cur_, cond_block);
                cur_ = exit;
                pop_scope();
                return;
            }
            case sol::StmtKind::Return: {
                if (stmt.expr) emit_subtree_only(*stmt.expr);
                auto& i = emit(IrKind::Return, stmt.span);
                i.expr = stmt.expr.get();
                if (stmt.expr) i.operands.push_back(stmt.expr.get());
                cur_ = -1;
                return;
            }
            case sol::StmtKind::Break: {
                ensure_current();
                if (!loops_.empty()) edge(cur_, loops_.back().break_target);
                cur_ = -1;
                return;
            }
            case sol::StmtKind::Continue: {
                ensure_current();
                if (!loops_.empty()) edge(cur_, loops_.back().continue_target);
                cur_ = -1;
                return;
            }
            case sol::StmtKind::Emit: {
                if (stmt.expr) {
                    emit_sub_excluding_top(*stmt.expr);
                    auto& i = emit(IrKind::Other, stmt.span);
                    i.detail = "emit";
                    i.expr = stmt.expr.get();
                }
                return;
            }
            case sol::StmtKind::Revert:
            case sol::StmtKind::Throw: {
                if (stmt.expr) emit_subtree_only(*stmt.expr);
                auto& i = emit(IrKind::SolidityCall, stmt.span);
                i.detail = "revert";
                i.expr = stmt.expr.get();
                terminate_into(revert_block());
                return;
            }
            case sol::StmtKind::Placeholder: {
                auto& i = emit(IrKind::Other, stmt.span);
                i.detail = "_";
                return;
            }
            case sol::StmtKind::Unsupported: {
                auto& i = emit(IrKind::Other, stmt.span);
                i.detail = stmt.note;
                i.unsupported = true;
                cfg_.unsupported.push_back(stmt.span);
                return;
            }
        }
    }

    // require/assert: Condition followed by a conditional revert edge
    void lower_guard(const sol::Expr& call) {
        const sol::Expr* condition = call.items.empty() ? nullptr : call.items[0].get();
        if (condition) emit_subtree_only(*condition);
        auto& cond = emit(IrKind::Condition, call.span);
        cond.expr = condition;
        int cond_block = cur_;
        edge(cond_block, revert_block());
        int next = new_block();
        edge(cond_block, next);
        cur_ = next;
    }

    void terminate_into(int target) {
        ensure_current();
        edge(cur_, target);
        cur_ = -1;
    }

    void prune_unreachable() {
        std::vector<bool> reachable(cfg_.blocks.size(), false);
        std::vector<int> work{cfg_.entry};
        reachable[cfg_.entry] = true;
        while (!work.empty()) {
            int b = work.back();
            work.pop_back();
            for (const auto& [from, to] : cfg_.edges) {
                if (from == b && !reachable[to]) {
                    reachable[to] = true;
                    work.push_back(to);
                }
            }
        }
        std::map<int, int> remap;
        std::vector<BasicBlock> kept;
        for (auto& b : cfg_.blocks) {
            if (!reachable[b.id]) continue;
            int new_id = static_cast<int>(kept.size());
            remap[b.id] = new_id;
            b.id = new_id;
            kept.push_back(std::move(b));
        }
        std::vector<std::pair<int, int>> edges;
        for (const auto& [from, to] : cfg_.edges) {
            auto f = remap.find(from);
            auto t = remap.find(to);
            if (f != remap.end() && t != remap.end()) edges.emplace_back(f->second, t->second);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        cfg_.blocks = std::move(kept);
        cfg_.edges = std::move(edges);
        cfg_.entry = 0;
    }
};

} // namespace

Cfg build_cfg(const sol::FunctionDef& fn, const sol::ContractDef* contract,
              const sol::SourceUnit& unit, const LowerOptions& opts) {
    Lowerer lowerer(contract, unit, opts);
    return lowerer.lower(fn);
}

IrKind classify_statement(const sol::Stmt& stmt, const sol::ContractDef* contract,
                          const sol::SourceUnit& unit, const std::set<std::string>& local_names,
                          const LowerOptions& opts) {
    Lowerer lowerer(contract, unit, opts);
    lowerer.seed_locals(local_names);
    return lowerer.classify_one(stmt);
}

} // namespace acscan::ir
