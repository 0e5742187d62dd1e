#include "frontend/parser.hpp"

#include <cctype>
#include <set>
#include <stdexcept>

#include "frontend/lexer.hpp"
#include "support/strings.hpp"

namespace acscan::sol {

namespace {

struct ParseError {
    std::size_t offset;
    std::string message;
};

const std::set<std::string_view> kElementaryTypes = {
    "address", "bool", "string", "bytes", "byte", "int", "uint", "fixed", "ufixed", "var"};

bool is_elementary_type(std::string_view name) {
    if (kElementaryTypes.count(name)) return true;
    auto sized = [&](std::string_view prefix, int max) {
        if (!strings::starts_with(name, prefix)) return false;
        std::string_view rest = name.substr(prefix.size());
        if (rest.empty()) return false;
        int value = 0;
        for (char c : rest) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            value = value * 10 + (c - '0');
        }
        return value >= 1 && value <= max;
    };
    if (sized("uint", 256) || sized("int", 256)) {
        // widths are multiples of 8; anything else is an identifier
        int width = std::stoi(std::string(name.substr(name[0] == 'u' ? 4 : 3)));
        return width % 8 == 0;
    }
    return sized("bytes", 32);
}

const std::set<std::string_view> kMutability = {"view", "pure", "payable", "constant"};
const std::set<std::string_view> kVisibility = {"public", "external", "internal", "private"};
const std::set<std::string_view> kStorage = {"memory", "calldata", "storage"};
const std::set<std::string_view> kUnits = {"wei",     "gwei",  "szabo", "finney", "ether",
                                           "seconds", "minutes", "hours", "days",  "weeks",
                                           "years"};

class Parser {
public:
    Parser(std::string_view source, std::vector<Token> tokens)
        : source_(source), tokens_(std::move(tokens)) {}

    std::unique_ptr<SourceUnit> run() {
        auto unit = std::make_unique<SourceUnit>();
        unit->span = Span{0, source_.size()};
        while (!at_end()) {
            parse_top_level(*unit);
        }
        return unit;
    }

private:
    std::string_view source_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    // ---- token plumbing -------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token& cur() const { return peek(0); }
    bool at_end() const { return cur().kind == TokenKind::EndOfFile; }
    Token advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool accept(std::string_view text) {
        if (cur().is(text)) {
            advance();
            return true;
        }
        return false;
    }

    Token expect(std::string_view text, const char* context) {
        if (!cur().is(text))
            fail(std::string("expected '") + std::string(text) + "' " + context + ", found '" +
                 std::string(cur().text) + "'");
        return advance();
    }

    Token expect_identifier(const char* context) {
        if (cur().kind != TokenKind::Identifier)
            fail(std::string("expected identifier ") + context + ", found '" +
                 std::string(cur().text) + "'");
        return advance();
    }

    [[noreturn]] void fail(std::string message) const {
        throw ParseError{cur().span.begin, std::move(message)};
    }

    std::size_t save() const { return pos_; }
    void restore(std::size_t p) { pos_ = p; }

    std::string slice(Span s) const { return std::string(source_.substr(s.begin, s.size())); }

    void skip_balanced(std::string_view open, std::string_view close) {
        expect(open, "to open a skipped region");
        int depth = 1;
        while (depth > 0 && !at_end()) {
            if (cur().is(open)) ++depth;
            else if (cur().is(close)) --depth;
            advance();
        }
        if (depth > 0) fail("unterminated block");
    }

    void skip_to_semicolon() {
        while (!at_end() && !cur().is(";")) {
            if (cur().is("{")) {
                skip_balanced("{", "}");
                continue;
            }
            advance();
        }
        accept(";");
    }

    // ---- top level -------------------------------------------------------

    void parse_top_level(SourceUnit& unit) {
        const Token& t = cur();
        if (t.is_ident("pragma")) {
            std::size_t begin = t.span.begin;
            while (!at_end() && !cur().is(";")) advance();
            Token semi = cur();
            expect(";", "to end pragma");
            if (unit.pragma_text.empty())
                unit.pragma_text = slice(Span{begin, semi.span.end});
            return;
        }
        if (t.is_ident("import")) {
            std::size_t begin = t.span.begin;
            skip_to_semicolon();
            unit.imports.push_back(slice(Span{begin, cur().span.begin}));
            return;
        }
        if (t.is_ident("abstract") || t.is_ident("contract") || t.is_ident("interface") ||
            t.is_ident("library")) {
            unit.contracts.push_back(parse_contract());
            return;
        }
        if (t.is_ident("function")) {
            unit.free_functions.push_back(parse_function_def(""));
            return;
        }
        if (t.is_ident("struct") || t.is_ident("enum")) {
            advance();
            expect_identifier("after struct/enum");
            skip_balanced("{", "}");
            return;
        }
        if (t.is_ident("using") || t.is_ident("type") || t.is_ident("error") || t.is_ident("event")) {
            skip_to_semicolon();
            return;
        }
        // file-level constants and anything else harmless
        if (t.kind == TokenKind::Identifier) {
            skip_to_semicolon();
            return;
        }
        fail("unexpected token at file level: '" + std::string(t.text) + "'");
    }

    std::unique_ptr<ContractDef> parse_contract() {
        auto contract = std::make_unique<ContractDef>();
        contract->span.begin = cur().span.begin;
        if (accept("abstract")) contract->is_abstract = true;
        if (accept("interface")) contract->ckind = ContractKind::Interface;
        else if (accept("library")) contract->ckind = ContractKind::Library;
        else expect("contract", "to begin a contract definition");
        contract->name = std::string(expect_identifier("as contract name").text);

        if (accept("is")) {
            while (true) {
                std::string base = parse_dotted_name("as base contract");
                if (cur().is("(")) skip_balanced("(", ")");  // base constructor args
                contract->bases.push_back(base);
                if (!accept(",")) break;
            }
        }
        expect("{", "to open contract body");
        while (!cur().is("}") && !at_end()) {
            parse_contract_part(*contract);
        }
        Token close = cur();
        expect("}", "to close contract body");
        contract->span.end = close.span.end;
        return contract;
    }

    std::string parse_dotted_name(const char* context) {
        std::string name(expect_identifier(context).text);
        while (cur().is(".") && peek(1).kind == TokenKind::Identifier) {
            advance();
            name += ".";
            name += std::string(advance().text);
        }
        return name;
    }

    void parse_contract_part(ContractDef& contract) {
        const Token& t = cur();
        if (t.is_ident("function") || t.is_ident("constructor") || t.is_ident("fallback") ||
            t.is_ident("receive") || t.is_ident("modifier")) {
            contract.functions.push_back(parse_function_def(contract.name));
            return;
        }
        if (t.is_ident("struct")) {
            advance();
            contract.struct_names.push_back(std::string(expect_identifier("as struct name").text));
            skip_balanced("{", "}");
            return;
        }
        if (t.is_ident("enum")) {
            advance();
            contract.enum_names.push_back(std::string(expect_identifier("as enum name").text));
            skip_balanced("{", "}");
            return;
        }
        if (t.is_ident("event")) {
            advance();
            contract.event_names.push_back(std::string(expect_identifier("as event name").text));
            skip_to_semicolon();
            return;
        }
        if (t.is_ident("error")) {
            advance();
            contract.error_names.push_back(std::string(expect_identifier("as error name").text));
            skip_to_semicolon();
            return;
        }
        if (t.is_ident("using") || t.is_ident("type")) {
            skip_to_semicolon();
            return;
        }
        parse_state_var(contract);
    }

    void parse_state_var(ContractDef& contract) {
        StateVarDef var;
        var.span.begin = cur().span.begin;
        auto type = try_parse_type_name();
        if (!type) fail("expected a state variable or definition in contract body");
        var.type_name = *type;
        while (true) {
            if (cur().is_ident("public")) { var.visibility = Visibility::Public; advance(); }
            else if (cur().is_ident("internal")) { var.visibility = Visibility::Internal; advance(); }
            else if (cur().is_ident("private")) { var.visibility = Visibility::Private; advance(); }
            else if (cur().is_ident("constant")) { var.is_constant = true; advance(); }
            else if (cur().is_ident("immutable")) { var.is_immutable = true; advance(); }
            else if (cur().is_ident("override")) {
                advance();
                if (cur().is("(")) skip_balanced("(", ")");
            }
            else break;
        }
        var.name = std::string(expect_identifier("as state variable name").text);
        if (accept("=")) var.init = parse_expression();
        Token semi = cur();
        expect(";", "to end state variable declaration");
        var.span.end = semi.span.end;
        contract.state_vars.push_back(std::move(var));
    }

    // ---- functions ---------------------------------------------------------

    std::unique_ptr<FunctionDef> parse_function_def(const std::string& contract_name) {
        auto fn = std::make_unique<FunctionDef>();
        fn->span.begin = cur().span.begin;

        if (accept("constructor")) {
            fn->fkind = FnKind::Constructor;
            fn->name = "constructor";
        } else if (accept("receive")) {
            fn->fkind = FnKind::Receive;
            fn->name = "receive";
        } else if (accept("fallback")) {
            fn->fkind = FnKind::Fallback;
            fn->name = "fallback";
        } else if (accept("modifier")) {
            fn->fkind = FnKind::Modifier;
            fn->name = std::string(expect_identifier("as modifier name").text);
        } else {
            expect("function", "to begin function definition");
            if (cur().kind == TokenKind::Identifier) {
                fn->name = std::string(advance().text);
                // pre-0.5 constructors are functions named exactly after the contract
                fn->fkind = (!contract_name.empty() && fn->name == contract_name)
                                ? FnKind::Constructor
                                : FnKind::Function;
            } else {
                fn->fkind = FnKind::Fallback;  // old-style unnamed fallback
                fn->name = "";
            }
        }

        if (cur().is("(")) fn->params = parse_param_list();
        else if (fn->fkind != FnKind::Modifier) expect("(", "to open parameter list");

        // attribute soup: visibility, mutability, virtual/override, modifiers, returns
        while (true) {
            const Token& t = cur();
            if (t.kind != TokenKind::Identifier) break;
            if (kVisibility.count(t.text)) {
                fn->explicit_visibility = true;
                if (t.is("public")) fn->visibility = Visibility::Public;
                else if (t.is("external")) fn->visibility = Visibility::External;
                else if (t.is("internal")) fn->visibility = Visibility::Internal;
                else fn->visibility = Visibility::Private;
                advance();
                continue;
            }
            if (kMutability.count(t.text)) {
                fn->mutability = std::string(t.text);
                advance();
                continue;
            }
            if (t.is("virtual")) { advance(); continue; }
            if (t.is("override")) {
                advance();
                if (cur().is("(")) skip_balanced("(", ")");
                continue;
            }
            if (t.is("returns")) {
                advance();
                fn->returns = parse_param_list();
                continue;
            }
            // modifier invocation / base constructor call
            ModifierInvocation inv;
            inv.span.begin = t.span.begin;
            inv.name = parse_dotted_name("as modifier name");
            if (cur().is("(")) {
                inv.has_args = true;
                advance();
                if (!cur().is(")")) {
                    while (true) {
                        inv.args.push_back(parse_expression());
                        if (!accept(",")) break;
                    }
                }
                expect(")", "to close modifier arguments");
            }
            inv.span.end = peek(0).span.begin;
            fn->invocations.push_back(std::move(inv));
        }

        fn->header_span = Span{fn->span.begin, cur().span.begin};

        if (fn->fkind == FnKind::Receive || fn->fkind == FnKind::Fallback) {
            if (!fn->explicit_visibility) fn->visibility = Visibility::External;
        }

        if (accept(";")) {
            fn->span.end = tokens_[pos_ - 1].span.end;
            return fn;  // unimplemented declaration
        }
        fn->body = parse_block();
        fn->span.end = fn->body->span.end;
        return fn;
    }

    std::vector<Param> parse_param_list() {
        std::vector<Param> params;
        expect("(", "to open parameter list");
        if (accept(")")) return params;
        while (true) {
            Param p;
            p.span.begin = cur().span.begin;
            auto type = try_parse_type_name();
            if (!type) fail("expected parameter type");
            p.type_name = *type;
            if (cur().kind == TokenKind::Identifier && kStorage.count(cur().text)) {
                p.storage = std::string(advance().text);
            }
            if (cur().kind == TokenKind::Identifier && !cur().is("memory")) {
                // 'indexed' appears in event params; treat like a name slot
                if (cur().is("indexed")) advance();
                if (cur().kind == TokenKind::Identifier) p.name = std::string(advance().text);
            }
            p.span.end = peek(0).span.begin;
            params.push_back(std::move(p));
            if (!accept(",")) break;
        }
        expect(")", "to close parameter list");
        return params;
    }

    // ---- types ---------------------------------------------------------

    // Returns the type's textual form, or nullopt (with position restored).
    std::optional<std::string> try_parse_type_name() {
        std::size_t start = save();
        try {
            return parse_type_name();
        } catch (const ParseError&) {
            restore(start);
            return std::nullopt;
        }
    }

    std::string parse_type_name() {
        std::string type;
        const Token& t = cur();
        if (t.is_ident("mapping")) {
            advance();
            expect("(", "after mapping");
            std::string key = parse_type_name();
            if (cur().kind == TokenKind::Identifier && !cur().is("=>")) advance();  // named key
            expect("=>", "in mapping type");
            std::string value = parse_type_name();
            if (cur().kind == TokenKind::Identifier && !cur().is(")")) advance();  // named value
            expect(")", "to close mapping type");
            type = "mapping(" + key + " => " + value + ")";
        } else if (t.is_ident("function")) {
            advance();
            std::size_t open = cur().span.begin;
            skip_balanced("(", ")");
            type = "function" + slice(Span{open, tokens_[pos_ - 1].span.end});
            while (cur().kind == TokenKind::Identifier &&
                   (kVisibility.count(cur().text) || kMutability.count(cur().text)))
                advance();
            if (cur().is_ident("returns")) {
                advance();
                skip_balanced("(", ")");
            }
        } else if (t.kind == TokenKind::Identifier) {
            if (is_elementary_type(t.text)) {
                type = std::string(advance().text);
                if (type == "address" && cur().is_ident("payable")) {
                    advance();
                    type += " payable";
                }
            } else {
                static const std::set<std::string_view> kNotTypes = {
                    "delete", "new", "this", "true", "false", "emit", "return",
                    "require", "assert", "revert", "throw"};
                if (kMutability.count(t.text) || kVisibility.count(t.text) ||
                    kStorage.count(t.text) || t.is("returns") || kNotTypes.count(t.text))
                    fail("keyword is not a type");
                type = parse_dotted_name("as type name");
            }
        } else {
            fail("expected a type");
        }
        // array suffixes
        while (cur().is("[")) {
            std::size_t open = cur().span.begin;
            advance();
            if (!cur().is("]")) parse_expression();
            Token close = cur();
            expect("]", "to close array type");
            type += slice(Span{open, close.span.end});
        }
        return type;
    }

    // ---- statements ------------------------------------------------------

    std::unique_ptr<Stmt> parse_block() {
        auto block = std::make_unique<Stmt>(StmtKind::Block);
        block->span.begin = cur().span.begin;
        expect("{", "to open block");
        while (!cur().is("}") && !at_end()) {
            block->stmts.push_back(parse_statement());
        }
        Token close = cur();
        expect("}", "to close block");
        block->span.end = close.span.end;
        return block;
    }

    std::unique_ptr<Stmt> parse_statement() {
        const Token& t = cur();
        std::size_t begin = t.span.begin;

        if (t.is("{")) return parse_block();

        if (t.is_ident("if")) {
            auto s = std::make_unique<Stmt>(StmtKind::If);
            s->span.begin = begin;
            advance();
            expect("(", "after if");
            s->expr = parse_expression();
            expect(")", "to close if condition");
            s->sub1 = parse_statement();
            if (accept("else")) s->sub2 = parse_statement();
            s->span.end = (s->sub2 ? s->sub2 : s->sub1)->span.end;
            return s;
        }
        if (t.is_ident("while")) {
            auto s = std::make_unique<Stmt>(StmtKind::While);
            s->span.begin = begin;
            advance();
            expect("(", "after while");
            s->expr = parse_expression();
            expect(")", "to close while condition");
            s->sub1 = parse_statement();
            s->span.end = s->sub1->span.end;
            return s;
        }
        if (t.is_ident("do")) {
            auto s = std::make_unique<Stmt>(StmtKind::DoWhile);
            s->span.begin = begin;
            advance();
            s->sub1 = parse_statement();
            expect("while", "after do body");
            expect("(", "after while");
            s->expr = parse_expression();
            expect(")", "to close do-while condition");
            Token semi = cur();
            expect(";", "after do-while");
            s->span.end = semi.span.end;
            return s;
        }
        if (t.is_ident("for")) {
            auto s = std::make_unique<Stmt>(StmtKind::For);
            s->span.begin = begin;
            advance();
            expect("(", "after for");
            if (!accept(";")) {
                s->sub2 = parse_simple_statement();  // init (consumes ';')
            }
            if (!cur().is(";")) s->expr = parse_expression();
            expect(";", "after for condition");
            if (!cur().is(")")) s->expr2 = parse_expression();
            expect(")", "to close for header");
            s->sub1 = parse_statement();
            s->span.end = s->sub1->span.end;
            return s;
        }
        if (t.is_ident("return")) {
            auto s = std::make_unique<Stmt>(StmtKind::Return);
            s->span.begin = begin;
            advance();
            if (!cur().is(";")) s->expr = parse_expression();
            Token semi = cur();
            expect(";", "after return");
            s->span.end = semi.span.end;
            return s;
        }
        if (t.is_ident("break") || t.is_ident("continue")) {
            auto s = std::make_unique<Stmt>(t.is_ident("break") ? StmtKind::Break
                                                                : StmtKind::Continue);
            s->span.begin = begin;
            advance();
            Token semi = cur();
            expect(";", "after break/continue");
            s->span.end = semi.span.end;
            return s;
        }
        if (t.is_ident("emit")) {
            auto s = std::make_unique<Stmt>(StmtKind::Emit);
            s->span.begin = begin;
            advance();
            s->expr = parse_expression();
            Token semi = cur();
            expect(";", "after emit");
            s->span.end = semi.span.end;
            return s;
        }
        if (t.is_ident("revert") && peek(1).kind == TokenKind::Identifier) {
            // `revert CustomError(...)`; plain revert(...) parses as a call
            auto s = std::make_unique<Stmt>(StmtKind::Revert);
            s->span.begin = begin;
            advance();
            s->expr = parse_expression();
            Token semi = cur();
            expect(";", "after revert statement");
            s->span.end = semi.span.end;
            return s;
        }
        if (t.is_ident("throw")) {
            auto s = std::make_unique<Stmt>(StmtKind::Throw);
            s->span.begin = begin;
            advance();
            Token semi = cur();
            expect(";", "after throw");
            s->span.end = semi.span.end;
            return s;
        }
        if (t.is_ident("unchecked")) {
            auto s = std::make_unique<Stmt>(StmtKind::Unchecked);
            s->span.begin = begin;
            advance();
            auto body = parse_block();
            s->span.end = body->span.end;
            s->stmts = std::move(body->stmts);
            return s;
        }
        if (t.is_ident("assembly")) {
            auto s = std::make_unique<Stmt>(StmtKind::Unsupported);
            s->note = "inline assembly";
            s->span.begin = begin;
            advance();
            if (cur().kind == TokenKind::StringLiteral) advance();  // "evmasm"
            if (cur().is("(")) skip_balanced("(", ")");             // flags
            skip_balanced("{", "}");
            s->span.end = tokens_[pos_ - 1].span.end;
            return s;
        }
        if (t.is_ident("try")) {
            auto s = std::make_unique<Stmt>(StmtKind::Unsupported);
            s->note = "try/catch";
            s->span.begin = begin;
            advance();
            parse_expression();
            if (accept("returns")) parse_param_list();
            skip_balanced("{", "}");
            while (cur().is_ident("catch")) {
                advance();
                if (cur().kind == TokenKind::Identifier) advance();
                if (cur().is("(")) skip_balanced("(", ")");
                skip_balanced("{", "}");
            }
            s->span.end = tokens_[pos_ - 1].span.end;
            return s;
        }
        if (t.is("_") && peek(1).is(";")) {
            auto s = std::make_unique<Stmt>(StmtKind::Placeholder);
            s->span.begin = begin;
            advance();
            Token semi = cur();
            expect(";", "after placeholder");
            s->span.end = semi.span.end;
            return s;
        }
        return parse_simple_statement();
    }

    // Variable declaration or expression statement; consumes the ';'.
    std::unique_ptr<Stmt> parse_simple_statement() {
        std::size_t begin = cur().span.begin;
        if (auto decl = try_parse_var_decl()) {
            return decl;
        }
        auto s = std::make_unique<Stmt>(StmtKind::ExprStmt);
        s->span.begin = begin;
        s->expr = parse_expression();
        Token semi = cur();
        expect(";", "after expression statement");
        s->span.end = semi.span.end;
        return s;
    }

    std::unique_ptr<Stmt> try_parse_var_decl() {
        std::size_t start = save();
        std::size_t begin = cur().span.begin;
        try {
            auto s = std::make_unique<Stmt>(StmtKind::VarDecl);
            s->span.begin = begin;
            if (cur().is("(")) {
                // tuple declaration: every slot must be empty or `type [storage] name`
                advance();
                while (true) {
                    if (cur().is(",") || cur().is(")")) {
                        s->decls.push_back(VarBinding{});  // hole
                    } else {
                        VarBinding b;
                        b.span.begin = cur().span.begin;
                        auto type = try_parse_type_name();
                        if (!type) throw ParseError{cur().span.begin, "not a tuple declaration"};
                        b.type_name = *type;
                        if (cur().kind == TokenKind::Identifier && kStorage.count(cur().text))
                            advance();
                        b.name = std::string(expect_identifier("in tuple declaration").text);
                        b.span.end = tokens_[pos_ - 1].span.end;
                        s->decls.push_back(std::move(b));
                    }
                    if (cur().is(")")) break;
                    expect(",", "in tuple declaration");
                }
                expect(")", "to close tuple declaration");
                expect("=", "after tuple declaration");
                s->expr = parse_expression();
            } else {
                VarBinding b;
                b.span.begin = begin;
                auto type = try_parse_type_name();
                if (!type) throw ParseError{cur().span.begin, "not a declaration"};
                b.type_name = *type;
                if (cur().kind == TokenKind::Identifier && kStorage.count(cur().text)) advance();
                if (cur().kind != TokenKind::Identifier)
                    throw ParseError{cur().span.begin, "not a declaration"};
                b.name = std::string(advance().text);
                b.span.end = tokens_[pos_ - 1].span.end;
                if (!cur().is("=") && !cur().is(";"))
                    throw ParseError{cur().span.begin, "not a declaration"};
                s->decls.push_back(std::move(b));
                if (accept("=")) s->expr = parse_expression();
            }
            Token semi = cur();
            expect(";", "after variable declaration");
            s->span.end = semi.span.end;
            return s;
        } catch (const ParseError&) {
            restore(start);
            return nullptr;
        }
    }

    // ---- expressions -------------------------------------------------------

    ExprPtr parse_expression() { return parse_assignment(); }

    ExprPtr parse_assignment() {
        ExprPtr lhs = parse_conditional();
        const Token& t = cur();
        static const std::set<std::string_view> ops = {"=",  "+=", "-=",  "*=",  "/=",  "%=",
                                                       "|=", "&=", "^=",  "<<=", ">>=", ">>>="};
        if (t.kind == TokenKind::Punct && ops.count(t.text)) {
            auto e = std::make_unique<Expr>(ExprKind::Assign);
            e->text = std::string(advance().text);
            e->span.begin = lhs->span.begin;
            e->a = std::move(lhs);
            e->b = parse_assignment();
            e->span.end = e->b->span.end;
            return e;
        }
        return lhs;
    }

    ExprPtr parse_conditional() {
        ExprPtr cond = parse_binary(0);
        if (!cur().is("?")) return cond;
        advance();
        auto e = std::make_unique<Expr>(ExprKind::Conditional);
        e->span.begin = cond->span.begin;
        e->a = std::move(cond);
        e->b = parse_expression();
        expect(":", "in conditional expression");
        e->c = parse_expression();
        e->span.end = e->c->span.end;
        return e;
    }

    struct BinOp {
        std::string_view text;
        int prec;
    };

    static int binary_prec(std::string_view op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "==" || op == "!=") return 3;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
        if (op == "|") return 5;
        if (op == "^") return 6;
        if (op == "&") return 7;
        if (op == "<<" || op == ">>" || op == ">>>") return 8;
        if (op == "+" || op == "-") return 9;
        if (op == "*" || op == "/" || op == "%") return 10;
        if (op == "**") return 11;
        return -1;
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr lhs = parse_unary();
        while (true) {
            const Token& t = cur();
            if (t.kind != TokenKind::Punct) break;
            int prec = binary_prec(t.text);
            if (prec < 0 || prec < min_prec) break;
            std::string op(advance().text);
            // ** is right-associative
            ExprPtr rhs = parse_binary(op == "**" ? prec : prec + 1);
            auto e = std::make_unique<Expr>(ExprKind::Binary);
            e->text = op;
            e->span = Span{lhs->span.begin, rhs->span.end};
            e->a = std::move(lhs);
            e->b = std::move(rhs);
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        const Token& t = cur();
        if (t.is("!") || t.is("~") || t.is("-") || t.is("+") || t.is("++") || t.is("--") ||
            t.is_ident("delete")) {
            auto e = std::make_unique<Expr>(ExprKind::Unary);
            e->span.begin = t.span.begin;
            e->text = std::string(advance().text);
            e->a = parse_unary();
            e->span.end = e->a->span.end;
            return e;
        }
        if (t.is_ident("new")) {
            auto e = std::make_unique<Expr>(ExprKind::New);
            e->span.begin = t.span.begin;
            advance();
            e->text = parse_type_name();
            e->span.end = tokens_[pos_ - 1].span.end;
            return parse_postfix(std::move(e));
        }
        return parse_postfix(parse_primary());
    }

    ExprPtr parse_postfix(ExprPtr base) {
        while (true) {
            const Token& t = cur();
            if (t.is(".")) {
                advance();
                auto e = std::make_unique<Expr>(ExprKind::Member);
                e->span.begin = base->span.begin;
                if (cur().kind == TokenKind::Identifier ||
                    cur().kind == TokenKind::Number /* tuple access like .0 is not Solidity; tolerate */) {
                    e->text = std::string(advance().text);
                } else {
                    fail("expected member name after '.'");
                }
                e->a = std::move(base);
                e->span.end = tokens_[pos_ - 1].span.end;
                base = std::move(e);
                continue;
            }
            if (t.is("[")) {
                advance();
                auto e = std::make_unique<Expr>(ExprKind::Index);
                e->span.begin = base->span.begin;
                e->a = std::move(base);
                if (!cur().is("]")) e->b = parse_expression();
                Token close = cur();
                expect("]", "to close index expression");
                e->span.end = close.span.end;
                base = std::move(e);
                continue;
            }
            if (t.is("{") && peek(1).kind == TokenKind::Identifier && peek(2).is(":")) {
                // call options: f{value: 1 ether}(...)
                advance();
                std::vector<NamedArg> options;
                while (!cur().is("}")) {
                    NamedArg arg;
                    arg.name = std::string(expect_identifier("as call option").text);
                    expect(":", "in call option");
                    arg.value = parse_expression();
                    options.push_back(std::move(arg));
                    if (!accept(",")) break;
                }
                expect("}", "to close call options");
                auto e = std::make_unique<Expr>(ExprKind::Call);
                e->span.begin = base->span.begin;
                e->a = std::move(base);
                e->call_options = std::move(options);
                expect("(", "after call options");
                parse_call_arguments(*e);
                e->span.end = tokens_[pos_ - 1].span.end;
                base = std::move(e);
                continue;
            }
            if (t.is("(")) {
                advance();
                auto e = std::make_unique<Expr>(ExprKind::Call);
                e->span.begin = base->span.begin;
                e->a = std::move(base);
                parse_call_arguments(*e);
                e->span.end = tokens_[pos_ - 1].span.end;
                base = std::move(e);
                continue;
            }
            if (t.is("++") || t.is("--")) {
                auto e = std::make_unique<Expr>(ExprKind::Unary);
                e->prefix = false;
                e->text = std::string(advance().text);
                e->span = Span{base->span.begin, tokens_[pos_ - 1].span.end};
                e->a = std::move(base);
                base = std::move(e);
                continue;
            }
            break;
        }
        return base;
    }

    // assumes '(' already consumed; fills args and consumes ')'
    void parse_call_arguments(Expr& call) {
        if (accept(")")) return;
        if (cur().is("{")) {
            // struct-style named arguments: f({a: 1, b: 2})
            advance();
            while (!cur().is("}")) {
                NamedArg arg;
                arg.name = std::string(expect_identifier("as named argument").text);
                expect(":", "in named argument");
                arg.value = parse_expression();
                call.items.push_back(std::move(arg.value));
                if (!accept(",")) break;
            }
            expect("}", "to close named arguments");
            expect(")", "to close call");
            return;
        }
        while (true) {
            call.items.push_back(parse_expression());
            if (!accept(",")) break;
        }
        expect(")", "to close call");
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        if (t.kind == TokenKind::Number) {
            auto e = std::make_unique<Expr>(ExprKind::Number);
            e->span = t.span;
            e->text = std::string(advance().text);
            if (cur().kind == TokenKind::Identifier && kUnits.count(cur().text)) {
                Token unit = advance();
                e->text += " " + std::string(unit.text);
                e->span.end = unit.span.end;
            }
            return e;
        }
        if (t.kind == TokenKind::StringLiteral) {
            auto e = std::make_unique<Expr>(ExprKind::StringLit);
            e->span = t.span;
            e->text = std::string(advance().text);
            while (cur().kind == TokenKind::StringLiteral) {  // adjacent literal concatenation
                Token next = advance();
                e->text += std::string(next.text);
                e->span.end = next.span.end;
            }
            return e;
        }
        if (t.is("(") ) {
            std::size_t begin = t.span.begin;
            advance();
            auto tuple = std::make_unique<Expr>(ExprKind::Tuple);
            tuple->span.begin = begin;
            bool saw_comma = false;
            while (!cur().is(")")) {
                if (cur().is(",")) {
                    tuple->items.push_back(nullptr);
                    advance();
                    saw_comma = true;
                    continue;
                }
                tuple->items.push_back(parse_expression());
                if (cur().is(",")) {
                    advance();
                    saw_comma = true;
                    if (cur().is(")")) tuple->items.push_back(nullptr);
                }
            }
            Token close = cur();
            expect(")", "to close parenthesized expression");
            tuple->span.end = close.span.end;
            if (!saw_comma && tuple->items.size() == 1 && tuple->items[0]) {
                ExprPtr inner = std::move(tuple->items[0]);
                inner->span = tuple->span;  // keep the parenthesized extent
                return inner;
            }
            return tuple;
        }
        if (t.is("[")) {
            std::size_t begin = t.span.begin;
            advance();
            auto arr = std::make_unique<Expr>(ExprKind::Tuple);
            arr->is_array_literal = true;
            arr->span.begin = begin;
            while (!cur().is("]")) {
                arr->items.push_back(parse_expression());
                if (!accept(",")) break;
            }
            Token close = cur();
            expect("]", "to close array literal");
            arr->span.end = close.span.end;
            return arr;
        }
        if (t.kind == TokenKind::Identifier) {
            if (t.is("true") || t.is("false")) {
                auto e = std::make_unique<Expr>(ExprKind::BoolLit);
                e->span = t.span;
                e->text = std::string(advance().text);
                return e;
            }
            if (is_elementary_type(t.text) && !t.is("var")) {
                auto e = std::make_unique<Expr>(ExprKind::TypeName);
                e->span = t.span;
                e->text = std::string(advance().text);
                return e;
            }
            if (t.is("payable") && peek(1).is("(")) {
                auto e = std::make_unique<Expr>(ExprKind::TypeName);
                e->span = t.span;
                e->text = std::string(advance().text);
                return e;
            }
            auto e = std::make_unique<Expr>(ExprKind::Ident);
            e->span = t.span;
            e->text = std::string(advance().text);
            return e;
        }
        fail("expected an expression, found '" + std::string(t.text) + "'");
    }
};

} // namespace

ParseResult parse(std::string_view source) {
    ParseResult result;
    LexResult lexed = lex(source);
    if (!lexed.errors.empty()) {
        for (const auto& err : lexed.errors) {
            auto lc = strings::line_col_at(source, err.offset);
            result.diagnostics.push_back(Diagnostic{err.offset, lc.line, lc.column, err.message});
        }
        return result;
    }
    Parser parser(source, std::move(lexed.tokens));
    try {
        result.unit = parser.run();
    } catch (const ParseError& err) {
        auto lc = strings::line_col_at(source, err.offset);
        result.diagnostics.push_back(Diagnostic{err.offset, lc.line, lc.column, err.message});
        result.unit.reset();
    }
    return result;
}

} // namespace acscan::sol
