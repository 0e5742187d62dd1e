#include "detect/fcg.hpp"

#include <algorithm>

namespace acscan::detect {

namespace {

// Linearized inheritance chain: the contract itself, then bases depth-first,
// restricted to contracts present in the unit.
std::vector<const sol::ContractDef*> contract_chain(const sol::SourceUnit& unit,
                                                    const sol::ContractDef* contract) {
    std::vector<const sol::ContractDef*> chain;
    if (!contract) return chain;
    std::vector<const sol::ContractDef*> work{contract};
    while (!work.empty()) {
        const sol::ContractDef* c = work.front();
        work.erase(work.begin());
        if (std::find(chain.begin(), chain.end(), c) != chain.end()) continue;
        chain.push_back(c);
        for (const auto& base : c->bases)
            if (const auto* b = unit.find_contract(base)) work.push_back(b);
    }
    return chain;
}

struct NodeIndex {
    // (contract, name) -> node ids; visibility of overloads preserved
    std::map<std::pair<std::string, std::string>, std::vector<int>> by_contract_and_name;
    std::map<std::string, std::vector<int>> by_name;
};

bool arity_matches(const FcgNode& node, std::size_t args) {
    return node.info.parameter_types.size() == args;
}

} // namespace

Fcg build_fcg(const sol::SourceUnit& unit, const LabelMap& labels, const ir::LowerOptions& opts,
              const Deadline* deadline) {
    Fcg fcg;
    NodeIndex index;

    auto add_node = [&](const sol::ContractDef* contract, const sol::FunctionDef* def) {
        if (deadline) deadline->check();
        FcgNode node;
        node.id = static_cast<int>(fcg.nodes.size());
        node.info = sol::make_function_info(contract, *def);
        node.contract = contract;
        node.def = def;
        node.is_modifier = def->fkind == sol::FnKind::Modifier;
        if (def->body) node.cfg = ir::build_cfg(*def, contract, unit, opts);
        auto label = labels.find({node.info.contract_name, node.info.signature()});
        if (label != labels.end()) node.sensitivity = label->second;
        index.by_contract_and_name[{node.info.contract_name, node.info.name}].push_back(node.id);
        index.by_name[node.info.name].push_back(node.id);
        fcg.nodes.push_back(std::move(node));
    };

    for (const auto& c : unit.contracts)
        for (const auto& f : c->functions) add_node(c.get(), f.get());
    for (const auto& f : unit.free_functions) add_node(nullptr, f.get());

    // resolve a (name, arity) in a contract chain; modifiers excluded
    auto resolve_in_chain = [&](const sol::ContractDef* contract, const std::string& name,
                                std::size_t args) -> int {
        for (const auto* c : contract_chain(unit, contract)) {
            auto it = index.by_contract_and_name.find({c->name, name});
            if (it == index.by_contract_and_name.end()) continue;
            for (int id : it->second) {
                if (fcg.nodes[id].is_modifier) continue;
                if (arity_matches(fcg.nodes[id], args)) return id;
            }
        }
        // free functions
        auto it = index.by_contract_and_name.find({std::string(), name});
        if (it != index.by_contract_and_name.end()) {
            for (int id : it->second)
                if (!fcg.nodes[id].is_modifier && arity_matches(fcg.nodes[id], args)) return id;
        }
        return -1;
    };

    auto resolve_anywhere = [&](const std::string& name, std::size_t args) -> int {
        auto it = index.by_name.find(name);
        if (it == index.by_name.end()) return -1;
        int found = -1;
        for (int id : it->second) {
            if (fcg.nodes[id].is_modifier || !arity_matches(fcg.nodes[id], args)) continue;
            if (found >= 0) return -1;  // ambiguous
            found = id;
        }
        return found;
    };

    // declared type of a member-call base, for Contract-typed variables
    auto base_contract_of = [&](const FcgNode& node, const sol::Expr* base) -> const sol::ContractDef* {
        if (!base) return nullptr;
        if (base->kind == sol::ExprKind::Ident) {
            const std::string& name = base->text;
            if (const auto* direct = unit.find_contract(name)) return direct;  // library style
            // parameter or state variable with a contract type
            if (node.def) {
                for (const auto& p : node.def->params)
                    if (p.name == name)
                        if (const auto* c = unit.find_contract(p.type_name)) return c;
            }
            for (const auto* c : contract_chain(unit, node.contract)) {
                for (const auto& v : c->state_vars)
                    if (v.name == name)
                        if (const auto* t = unit.find_contract(v.type_name)) return t;
            }
        }
        if (base->kind == sol::ExprKind::Call && base->a &&
            base->a->kind == sol::ExprKind::Ident) {
            // cast: OtherContract(addr).f()
            return unit.find_contract(base->a->text);
        }
        return nullptr;
    };

    for (auto& node : fcg.nodes) {
        if (deadline) deadline->check();
        // modifier references
        if (node.def && !node.is_modifier) {
            for (const auto& inv : node.def->invocations) {
                for (const auto* c : contract_chain(unit, node.contract)) {
                    auto it = index.by_contract_and_name.find({c->name, inv.name});
                    if (it == index.by_contract_and_name.end()) continue;
                    int found = -1;
                    for (int id : it->second)
                        if (fcg.nodes[id].is_modifier) found = id;
                    if (found >= 0) {
                        node.modifier_nodes.push_back(found);
                        break;
                    }
                }
            }
        }

        for (const auto* instr : node.cfg.instructions()) {
            if (instr->kind == ir::IrKind::InternalCall) {
                int callee = resolve_in_chain(node.contract, instr->detail,
                                              instr->operands.size());
                if (callee >= 0)
                    fcg.edges.push_back({node.id, callee, instr->index});
                else
                    fcg.externals.push_back({node.id, instr->detail, instr->index});
                continue;
            }
            if (instr->kind == ir::IrKind::HighLevelCall) {
                const sol::Expr* base = instr->call_base;
                bool on_this = base && base->kind == sol::ExprKind::Ident && base->text == "this";
                int callee = -1;
                if (on_this) {
                    callee = resolve_in_chain(node.contract, instr->detail,
                                              instr->operands.size());
                } else if (const auto* target = base_contract_of(node, base)) {
                    callee = resolve_in_chain(target, instr->detail, instr->operands.size());
                } else {
                    callee = resolve_anywhere(instr->detail, instr->operands.size());
                }
                if (callee >= 0)
                    fcg.edges.push_back({node.id, callee, instr->index});
                else
                    fcg.externals.push_back({node.id, instr->detail, instr->index});
            }
        }
    }
    return fcg;
}

} // namespace acscan::detect
