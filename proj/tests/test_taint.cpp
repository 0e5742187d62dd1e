#include "doctest.h"
#include "detect/taint.hpp"

using namespace acscan;
using namespace acscan::detect;

namespace {

struct Built {
    sol::ParseResult parsed;
    Fcg fcg;

    const FcgNode* node(const std::string& name) const {
        for (const auto& n : fcg.nodes)
            if (n.info.name == name) return &n;
        return nullptr;
    }
};

Built build(const std::string& source) {
    Built b;
    b.parsed = sol::parse(source);
    REQUIRE(b.parsed.ok());
    b.fcg = build_fcg(*b.parsed.unit, {});
    return b;
}

// dependence of the condition operand of the function's Condition at `nth`
bool condition_operand_dependent(const Built& built, const std::string& fn, int nth = 0) {
    const FcgNode* node = built.node(fn);
    REQUIRE(node != nullptr);
    const ir::IrInstruction* cond = nullptr;
    int seen = 0;
    for (const auto* i : node->cfg.instructions()) {
        if (i->kind == ir::IrKind::Condition && seen++ == nth) {
            cond = i;
            break;
        }
    }
    REQUIRE(cond != nullptr);
    Deadline none;
    TaintOptions opts{3};
    // either comparison operand may carry the dependence
    const sol::Expr* e = cond->expr;
    if (e && e->kind == sol::ExprKind::Binary) {
        return is_msg_sender_dependent(e->a.get(), *node, cond->index, built.fcg, opts, none) ||
               is_msg_sender_dependent(e->b.get(), *node, cond->index, built.fcg, opts, none);
    }
    return is_msg_sender_dependent(e, *node, cond->index, built.fcg, opts, none);
}

} // namespace

TEST_CASE("direct msg.sender operand") {
    auto built = build(R"(
contract C {
    address owner;
    function f() public view {
        require(msg.sender == owner);
    }
})");
    CHECK(condition_operand_dependent(built, "f"));
}

TEST_CASE("constants and state variables are not dependent") {
    auto built = build(R"(
contract C {
    address owner;
    uint256 x;
    function f() public view {
        require(x == 42);
    }
})");
    CHECK_FALSE(condition_operand_dependent(built, "f"));
}

TEST_CASE("assignment chains propagate: s = msg.sender") {
    auto built = build(R"(
contract C {
    address owner;
    function f() public view {
        address s = msg.sender;
        address t = s;
        require(t == owner);
    }
})");
    CHECK(condition_operand_dependent(built, "f"));
}

TEST_CASE("storage indexed by a dependent key is dependent") {
    auto built = build(R"(
contract C {
    mapping(address => uint256) balances;
    function f(uint256 amount) public view {
        require(balances[msg.sender] >= amount);
    }
})");
    CHECK(condition_operand_dependent(built, "f"));
}

TEST_CASE("callee return dependence within depth") {
    auto built = build(R"(
contract C {
    address owner;
    function caller() public view {
        require(isOwner());
    }
    function isOwner() internal view returns (bool) {
        return msg.sender == owner;
    }
})");
    CHECK(condition_operand_dependent(built, "caller"));
}

TEST_CASE("parameter binding: require(check(msg.sender))") {
    auto built = build(R"(
contract C {
    address owner;
    function caller() public view {
        require(check(msg.sender));
    }
    function check(address who) internal view returns (bool) {
        return who == owner;
    }
})");
    CHECK(condition_operand_dependent(built, "caller"));
}

TEST_CASE("parameter binding distinguishes clean arguments") {
    auto built = build(R"(
contract C {
    address owner;
    function caller(address candidate) public view {
        require(check(candidate));
    }
    function check(address who) internal view returns (bool) {
        return who == owner;
    }
})");
    CHECK_FALSE(condition_operand_dependent(built, "caller"));
}

TEST_CASE("arithmetic over msg.sender propagates; hashes do not") {
    auto cast_case = build(R"(
contract C {
    uint256 key;
    function f() public view {
        require(uint256(uint160(msg.sender)) + 1 == key);
    }
})");
    CHECK(condition_operand_dependent(cast_case, "f"));

    auto hashed = build(R"(
contract C {
    bytes32 expected;
    function f() public view {
        require(keccak256(abi.encodePacked(msg.sender)) == expected);
    }
})");
    CHECK_FALSE(condition_operand_dependent(hashed, "f"));
}

TEST_CASE("depth bound cuts off deep return chains") {
    auto built = build(R"(
contract C {
    address owner;
    function top() public view { require(l1()); }
    function l1() internal view returns (bool) { return l2(); }
    function l2() internal view returns (bool) { return l3(); }
    function l3() internal view returns (bool) { return l4(); }
    function l4() internal view returns (bool) { return msg.sender == owner; }
})");
    // dependence sits 4 calls deep; the depth-3 bound cannot see it
    CHECK_FALSE(condition_operand_dependent(built, "top"));

    auto shallow = build(R"(
contract C {
    address owner;
    function top() public view { require(l1()); }
    function l1() internal view returns (bool) { return l2(); }
    function l2() internal view returns (bool) { return l3(); }
    function l3() internal view returns (bool) { return msg.sender == owner; }
})");
    CHECK(condition_operand_dependent(shallow, "top"));
}

TEST_CASE("named return variables carry dependence") {
    auto built = build(R"(
contract C {
    address owner;
    function caller() public view {
        require(who() == owner);
    }
    function who() internal view returns (address result) {
        result = msg.sender;
    }
})");
    CHECK(condition_operand_dependent(built, "caller"));
}

// Independent oracle on a straight-line fixture: textually inline every local
// assignment into the condition until fixpoint, then look for "msg.sender".
TEST_CASE("backward-slice inlining oracle agrees on the ten-instruction fixture") {
    struct Row {
        const char* body;       // statements before the require
        const char* condition;  // require operand source text
        bool expected;          // computed by the inlining oracle below
    };
    const Row rows[] = {
        {"address a = msg.sender; address b = a;", "b == owner", true},
        {"address a = owner; address b = a;", "b == owner", false},
        {"uint256 k = 1; uint256 m = k + 2;", "m == 3", false},
        {"address a = msg.sender; uint256 h = balances[a];", "h > 0", true},
        {"address a = tx.origin;", "a == owner", false},
        {"uint256 v = uint256(uint160(msg.sender)); uint256 w = v * 2;", "w != 0", true},
    };

    for (const auto& row : rows) {
        CAPTURE(row.condition);
        std::string source = std::string("contract C {\n"
                                         "  address owner;\n"
                                         "  mapping(address => uint256) balances;\n"
                                         "  function f() public view {\n    ") +
                             row.body + "\n    require(" + row.condition + ");\n  }\n}";
        // oracle: repeated textual substitution of `name = expr;` bindings
        {
            std::string cond = row.condition;
            std::string statements = row.body;
            for (int round = 0; round < 8; ++round) {
                std::size_t pos = 0;
                std::string stmts = statements;
                while (true) {
                    auto eq = stmts.find(" = ", pos);
                    if (eq == std::string::npos) break;
                    auto start = stmts.rfind(' ', eq - 1);
                    std::string name = stmts.substr(start + 1, eq - start - 1);
                    auto end = stmts.find(';', eq);
                    std::string value = stmts.substr(eq + 3, end - eq - 3);
                    // substitute whole-word occurrences of name in cond
                    std::string out;
                    for (std::size_t i = 0; i < cond.size();) {
                        if (cond.compare(i, name.size(), name) == 0 &&
                            (i == 0 || !isalnum(static_cast<unsigned char>(cond[i - 1]))) &&
                            (i + name.size() == cond.size() ||
                             !isalnum(static_cast<unsigned char>(cond[i + name.size()])))) {
                            out += "(" + value + ")";
                            i += name.size();
                        } else {
                            out += cond[i++];
                        }
                    }
                    cond = out;
                    pos = end;
                }
            }
            bool oracle_says = cond.find("msg.sender") != std::string::npos;
            CHECK(oracle_says == row.expected);  // the frozen column matches the oracle
        }

        auto built = build(source);
        CHECK(condition_operand_dependent(built, "f") == row.expected);
    }
}
