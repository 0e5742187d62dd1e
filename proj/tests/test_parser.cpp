#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "frontend/parser.hpp"

using namespace acscan;
using namespace acscan::sol;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string kFixtures = ACSCAN_FIXTURE_DIR;

} // namespace

TEST_CASE("empty source parses to zero contracts") {
    auto r = parse("");
    REQUIRE(r.ok());
    CHECK(r.unit->contracts.empty());
}

TEST_CASE("simple bank parses to one contract with one function") {
    auto source = read_file(kFixtures + "/known/simple_bank.sol");
    auto r = parse(source);
    REQUIRE(r.ok());
    REQUIRE(r.unit->contracts.size() == 1);
    const auto& bank = *r.unit->contracts[0];
    CHECK(bank.name == "SimpleBank");
    REQUIRE(bank.functions.size() == 1);
    CHECK(bank.functions[0]->name == "withdraw");
    CHECK(bank.functions[0]->visibility == Visibility::External);
    REQUIRE(bank.state_vars.size() == 1);
    CHECK(bank.state_vars[0].name == "balances");
    CHECK(bank.state_vars[0].type_name == "mapping(address => uint256)");
}

TEST_CASE("parse failure carries line/column diagnostics") {
    auto r = parse("contract X {\n  function f( {}\n}");
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].line >= 2);
    CHECK_FALSE(r.diagnostics[0].message.empty());
}

TEST_CASE("inheritance, modifiers and attribute soup") {
    auto r = parse(R"(
pragma solidity ^0.8.0;
contract Base {
    address internal owner;
}
abstract contract Child is Base {
    modifier onlyOwner() virtual {
        require(msg.sender == owner);
        _;
    }
    function act() public virtual onlyOwner returns (uint256 out) {
        out = 1;
    }
    function abstractHook() internal virtual returns (bool);
}
)");
    REQUIRE(r.ok());
    REQUIRE(r.unit->contracts.size() == 2);
    const auto& child = *r.unit->contracts[1];
    CHECK(child.is_abstract);
    REQUIRE(child.bases.size() == 1);
    CHECK(child.bases[0] == "Base");
    REQUIRE(child.functions.size() == 3);
    CHECK(child.functions[0]->fkind == FnKind::Modifier);
    CHECK(child.functions[1]->invocations.size() == 1);
    CHECK(child.functions[1]->invocations[0].name == "onlyOwner");
    CHECK(child.functions[2]->body == nullptr);
}

TEST_CASE("statement and expression variety") {
    auto r = parse(R"(
pragma solidity ^0.8.19;
contract Kitchen {
    uint256[] public xs;
    mapping(address => mapping(uint256 => bool)) public seen;
    event Logged(uint256 indexed v);

    function sink(address payable to, uint256 n) external payable returns (uint256 total) {
        uint256 acc = 0;
        for (uint256 i = 0; i < n; i++) {
            if (i % 2 == 0) { acc += i; } else { acc -= 1; }
        }
        while (acc > 100) { acc /= 2; }
        do { acc++; } while (acc < 3);
        uint256[] memory local = new uint256[](n);
        local[0] = acc;
        xs.push(acc);
        seen[msg.sender][acc] = true;
        (bool ok, bytes memory ret) = address(to).call{value: msg.value}("");
        require(ok, "low-level failed");
        ret;
        emit Logged(acc);
        unchecked { acc += 1; }
        total = acc > 0 ? acc : 0;
        return total;
    }
}
)");
    REQUIRE(r.ok());
    REQUIRE(r.unit->contracts.size() == 1);
    CHECK(r.unit->contracts[0]->functions.size() == 1);
}

TEST_CASE("legacy 0.4 syntax variety") {
    auto r = parse(R"(
pragma solidity ^0.4.24;
contract Legacy {
    uint256 public stock;
    function Legacy() public { stock = 1; }
    function () public payable {}
    function risky(address t, bytes data) public {
        t.call.value(1 ether)(data);
        if (stock > 0) throw;
    }
}
)");
    REQUIRE(r.ok());
    const auto& legacy = *r.unit->contracts[0];
    REQUIRE(legacy.functions.size() == 3);
    CHECK(legacy.functions[0]->fkind == FnKind::Constructor);
    CHECK(legacy.functions[1]->fkind == FnKind::Fallback);
}

TEST_CASE("assembly and try/catch become unsupported statements") {
    auto r = parse(R"(
pragma solidity ^0.8.19;
contract Opaque {
    function peek() external view returns (uint256 size) {
        assembly { size := calldatasize() }
    }
    function attempt(address t) external returns (bool) {
        try IThing(t).ping() returns (bool got) {
            return got;
        } catch (bytes memory) {
            return false;
        }
    }
}
interface IThing { function ping() external returns (bool); }
)");
    REQUIRE(r.ok());
    const auto& opaque = *r.unit->contracts[0];
    bool saw_assembly = false;
    bool saw_try = false;
    for (const auto& fn : opaque.functions) {
        if (!fn->body) continue;
        for (const auto& stmt : fn->body->stmts) {
            if (stmt->kind == StmtKind::Unsupported) {
                if (stmt->note == "inline assembly") saw_assembly = true;
                if (stmt->note == "try/catch") saw_try = true;
            }
        }
    }
    CHECK(saw_assembly);
    CHECK(saw_try);
}

TEST_CASE("harder declaration shapes") {
    auto r = parse(R"(
pragma solidity ^0.8.19;
library Lib {
    event Traced(uint256 v);
    struct Pair { uint256 a; uint256 b; }
}
contract Base {
    uint256 internal stock;
    constructor(uint256 initial) { stock = initial; }
}
contract Derived is Base {
    using Lib for uint256;
    mapping(address => mapping(uint256 => Lib.Pair)) internal table;

    constructor() Base(7) {}

    function pick(function(uint256) external returns (bool) cb, uint256 v)
        public
        returns (bool)
    {
        emit Lib.Traced(v);
        return cb(v);
    }

    function choose(uint256 a, uint256 b) public pure returns (uint256) {
        uint256 best = a > b ? a : b;
        (uint256 lo, uint256 hi) = a < b ? (a, b) : (b, a);
        return best + lo + hi;
    }
})");
    REQUIRE(r.ok());
    const auto* derived = r.unit->find_contract("Derived");
    REQUIRE(derived != nullptr);
    REQUIRE(derived->functions.size() == 3);
    CHECK(derived->functions[0]->fkind == FnKind::Constructor);
    REQUIRE(derived->functions[0]->invocations.size() == 1);
    CHECK(derived->functions[0]->invocations[0].name == "Base");
}

TEST_CASE("function spans cover the complete definition") {
    std::string source = "contract C {\n    function f() public { uint256 a = 1; a; }\n}";
    auto r = parse(source);
    REQUIRE(r.ok());
    const auto& fn = *r.unit->contracts[0]->functions[0];
    std::string slice = source.substr(fn.span.begin, fn.span.end - fn.span.begin);
    CHECK(slice == "function f() public { uint256 a = 1; a; }");
}

// Fuzz: random mutations of real fixtures must parse or fail cleanly —
// never crash — and behave identically across runs.
TEST_CASE("mutation fuzzing never crashes and is deterministic") {
    std::vector<std::string> seeds;
    for (const auto& entry :
         std::filesystem::directory_iterator(kFixtures + "/corpus")) {
        if (entry.path().extension() == ".sol") seeds.push_back(read_file(entry.path().string()));
    }
    REQUIRE_FALSE(seeds.empty());

    std::mt19937 rng(20240817);
    auto mutate = [&](std::string s) {
        if (s.empty()) return s;
        switch (rng() % 5) {
            case 0: {  // delete a random slice
                std::size_t at = rng() % s.size();
                std::size_t len = 1 + rng() % 16;
                s.erase(at, std::min(len, s.size() - at));
                break;
            }
            case 1: {  // duplicate a random slice
                std::size_t at = rng() % s.size();
                std::size_t len = 1 + rng() % 16;
                s.insert(at, s.substr(at, std::min(len, s.size() - at)));
                break;
            }
            case 2: {  // flip a byte to random printable
                s[rng() % s.size()] = static_cast<char>(32 + rng() % 95);
                break;
            }
            case 3:  // truncate
                s.resize(rng() % s.size());
                break;
            case 4: {  // splice two seeds
                const std::string& other = seeds[rng() % seeds.size()];
                std::size_t at = rng() % s.size();
                s = s.substr(0, at) + other.substr(other.size() / 2);
                break;
            }
        }
        return s;
    };

    int parsed_ok = 0;
    for (int i = 0; i < 100; ++i) {
        std::string mutant = seeds[rng() % seeds.size()];
        int rounds = 1 + int(rng() % 3);
        for (int r = 0; r < rounds; ++r) mutant = mutate(mutant);

        auto first = parse(mutant);
        auto second = parse(mutant);
        CHECK(first.ok() == second.ok());  // deterministic outcome
        if (first.ok()) {
            ++parsed_ok;
        } else {
            CHECK_FALSE(first.diagnostics.empty());
            REQUIRE(second.diagnostics.size() == first.diagnostics.size());
            CHECK(first.diagnostics[0].message == second.diagnostics[0].message);
        }
    }
    // both outcomes must actually occur over the corpus
    CHECK(parsed_ok > 0);
    CHECK(parsed_ok < 100);
}
