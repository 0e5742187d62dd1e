#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "support/source_span.hpp"

namespace acscan::sol {

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class ExprKind {
    Ident,
    Number,
    StringLit,
    BoolLit,
    TypeName,  // elementary type used as an expression (casts)
    Member,
    Index,
    Call,
    New,
    Unary,
    Binary,
    Assign,
    Conditional,
    Tuple,
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct NamedArg {
    std::string name;
    ExprPtr value;
};

struct Expr {
    ExprKind kind;
    Span span;

    // Ident / TypeName / Number / StringLit / BoolLit / Member(member name) / Unary,Binary,Assign(op)
    std::string text;

    ExprPtr a;  // Member.object, Index.object, Call.callee, Unary.operand, Binary.lhs, Assign.target, Conditional.cond
    ExprPtr b;  // Index.index, Binary.rhs, Assign.value, Conditional.then
    ExprPtr c;  // Conditional.else

    std::vector<ExprPtr> items;       // Call args, Tuple elements (null holes allowed)
    std::vector<NamedArg> call_options;  // {value: ..., gas: ...}
    bool prefix = true;               // Unary position
    bool is_array_literal = false;    // Tuple: [a, b, c]

    explicit Expr(ExprKind k) : kind(k) {}
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

enum class StmtKind {
    Block,
    VarDecl,
    ExprStmt,
    If,
    While,
    DoWhile,
    For,
    Return,
    Break,
    Continue,
    Emit,
    Revert,   // revert statement with custom error
    Throw,    // 0.4-era
    Placeholder,  // `_;` inside modifiers
    Unchecked,
    Unsupported,  // inline assembly, try/catch: analyzed as opaque
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct VarBinding {
    std::string type_name;  // empty for `var` or tuple holes
    std::string name;
    Span span;
};

struct Stmt {
    StmtKind kind;
    Span span;

    std::vector<StmtPtr> stmts;  // Block / Unchecked
    std::vector<VarBinding> decls;  // VarDecl (tuple declarations have several)
    ExprPtr expr;   // ExprStmt, Return value, If/While/DoWhile cond, VarDecl init, Emit/Revert call, For cond
    ExprPtr expr2;  // For post
    StmtPtr sub1;   // If.then, While/DoWhile/For body
    StmtPtr sub2;   // If.else, For init (statement)
    std::string note;  // Unsupported: construct name

    explicit Stmt(StmtKind k) : kind(k) {}
};

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

enum class Visibility { Public, External, Internal, Private };

enum class FnKind { Function, Constructor, Modifier, Fallback, Receive };

struct Param {
    std::string type_name;
    std::string storage;  // memory/calldata/storage or empty
    std::string name;
    Span span;
};

struct ModifierInvocation {
    std::string name;
    std::vector<ExprPtr> args;
    bool has_args = false;
    Span span;
};

struct FunctionDef {
    FnKind fkind = FnKind::Function;
    std::string name;  // "constructor"/"fallback"/"receive" for keyword forms
    std::vector<Param> params;
    std::vector<Param> returns;
    Visibility visibility = Visibility::Public;  // pre-0.5 default
    bool explicit_visibility = false;
    std::string mutability;  // view/pure/payable/constant or empty
    std::vector<ModifierInvocation> invocations;  // modifiers and base-constructor calls
    std::unique_ptr<Stmt> body;  // null for unimplemented declarations
    Span span;        // full definition including body
    Span header_span; // signature part
};

struct StateVarDef {
    std::string type_name;
    std::string name;
    Visibility visibility = Visibility::Internal;
    bool is_constant = false;
    bool is_immutable = false;
    ExprPtr init;
    Span span;
};

enum class ContractKind { Contract, Interface, Library };

struct ContractDef {
    ContractKind ckind = ContractKind::Contract;
    bool is_abstract = false;
    std::string name;
    std::vector<std::string> bases;
    std::vector<std::unique_ptr<FunctionDef>> functions;  // functions, constructors, modifiers
    std::vector<StateVarDef> state_vars;
    std::vector<std::string> struct_names;
    std::vector<std::string> enum_names;
    std::vector<std::string> event_names;
    std::vector<std::string> error_names;
    Span span;
};

struct SourceUnit {
    std::vector<std::unique_ptr<ContractDef>> contracts;
    std::vector<std::unique_ptr<FunctionDef>> free_functions;
    std::vector<std::string> imports;
    std::string pragma_text;
    Span span;

    const ContractDef* find_contract(std::string_view name) const {
        for (const auto& c : contracts)
            if (c->name == name) return c.get();
        return nullptr;
    }
};

const char* to_string(Visibility v);
const char* to_string(FnKind k);

} // namespace acscan::sol
