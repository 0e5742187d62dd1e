#include <algorithm>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "scanner/repo_scanner.hpp"

using namespace acscan;
using namespace acscan::scan;

namespace fs = std::filesystem;

namespace {

const std::string kTree = std::string(ACSCAN_FIXTURE_DIR) + "/tree";

// Independent oracle: recursive walk applying exact-segment exclusion,
// written against the raw filesystem API rather than the scanner.
std::vector<std::string> oracle_walk(const std::string& root,
                                     const std::vector<std::string>& excluded) {
    std::vector<std::string> out;
    for (auto it = fs::recursive_directory_iterator(root);
         it != fs::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file()) continue;
        std::string rel = fs::relative(it->path(), root).generic_string();
        if (rel.size() < 4 || rel.substr(rel.size() - 4) != ".sol") continue;
        auto segments = [&] {
            std::vector<std::string> parts;
            std::string cur;
            for (char c : rel) {
                if (c == '/') {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            parts.push_back(cur);
            return parts;
        }();
        bool exclude = false;
        for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
            std::string low = segments[i];
            std::transform(low.begin(), low.end(), low.begin(), ::tolower);
            for (const auto& name : excluded)
                if (low == name) exclude = true;
        }
        if (!exclude) out.push_back(rel);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("discovery matches the independent walk oracle") {
    ScanConfig config;
    config.root = kTree;
    auto contracts = discover_contracts(config);
    std::vector<std::string> got;
    for (const auto& c : contracts) got.push_back(c.path);

    auto expected = oracle_walk(kTree, default_excluded_dirs());
    CHECK(got == expected);
    // frozen expectations from the oracle
    CHECK(std::find(got.begin(), got.end(), "contracts/Vault.sol") != got.end());
    CHECK(std::find(got.begin(), got.end(), "a/core/Engine.sol") != got.end());
    CHECK(std::find(got.begin(), got.end(), "src/mockery/Real.sol") != got.end());
    CHECK(std::find(got.begin(), got.end(), "test/MockVault.sol") == got.end());
    CHECK(std::find(got.begin(), got.end(), "a/utils/Helpers.sol") == got.end());
    CHECK(std::find(got.begin(), got.end(), "deep/mocks/token/Fake.sol") == got.end());
    CHECK(std::find(got.begin(), got.end(), "src/MOCKS/Weird.sol") == got.end());
}

TEST_CASE("discovery is deterministic and ordered") {
    ScanConfig config;
    config.root = kTree;
    auto first = discover_contracts(config);
    auto second = discover_contracts(config);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].path == second[i].path);
        CHECK(first[i].source == second[i].source);
    }
    CHECK(std::is_sorted(first.begin(), first.end(),
                         [](const ContractFile& a, const ContractFile& b) {
                             return a.path < b.path;
                         }));
}

TEST_CASE("every discovered path classifies as Include") {
    ScanConfig config;
    config.root = kTree;
    for (const auto& c : discover_contracts(config))
        CHECK(classify_path(c.path, config.excluded_dirs) == PathClass::Include);
}

TEST_CASE("excluded files are reported") {
    ScanConfig config;
    config.root = kTree;
    auto outcome = scan_tree(config);
    CHECK(std::find(outcome.excluded_paths.begin(), outcome.excluded_paths.end(),
                    "test/MockVault.sol") != outcome.excluded_paths.end());
    CHECK_FALSE(outcome.root_missing);
}

TEST_CASE("missing root") {
    ScanConfig config;
    config.root = kTree + "/does-not-exist";
    auto outcome = scan_tree(config);
    CHECK(outcome.root_missing);
    CHECK(outcome.contracts.empty());
}

TEST_CASE("empty directory yields nothing") {
    fs::path dir = fs::temp_directory_path() / "acscan-empty-fixture";
    fs::create_directories(dir);
    ScanConfig config;
    config.root = dir.string();
    CHECK(discover_contracts(config).empty());
    fs::remove_all(dir);
}

TEST_CASE("classify_path oracle table") {
    auto excluded = default_excluded_dirs();
    struct Row {
        const char* path;
        PathClass expected;  // oracle: exact case-insensitive segment match
    };
    const Row rows[] = {
        {"src/mock/Token.sol", PathClass::Exclude},
        {"Token.sol", PathClass::Include},
        {"src/mockery/Token.sol", PathClass::Include},
        {"test/A.sol", PathClass::Exclude},
        {"tests/A.sol", PathClass::Exclude},
        {"Test/A.sol", PathClass::Exclude},
        {"TESTS/nested/A.sol", PathClass::Exclude},
        {"contracts/test.sol", PathClass::Include},       // file name is never matched
        {"contracts/tests.sol", PathClass::Include},
        {"a/b/c/d/e/utils/X.sol", PathClass::Exclude},
        {"utilities/X.sol", PathClass::Include},
        {"util/X.sol", PathClass::Exclude},
        {"interface/I.sol", PathClass::Exclude},
        {"interfaces/I.sol", PathClass::Exclude},
        {"interfaced/I.sol", PathClass::Include},
        {"library/L.sol", PathClass::Exclude},
        {"libraries/L.sol", PathClass::Exclude},
        {"lib/L.sol", PathClass::Include},
        {"mocks/M.sol", PathClass::Exclude},
        {"mockingbird/M.sol", PathClass::Include},
        {"a/Mock/M.sol", PathClass::Exclude},
        {"a/MOCKS/M.sol", PathClass::Exclude},
        {"testing/M.sol", PathClass::Include},
        {"protest/M.sol", PathClass::Include},
        {"src/main/Token.sol", PathClass::Include},
    };
    for (const auto& row : rows) {
        CAPTURE(row.path);
        CHECK(classify_path(row.path, excluded) == row.expected);
    }
}

TEST_CASE("classify_path honors custom exclusion lists") {
    std::vector<std::string> custom = {"vendor"};
    CHECK(classify_path("vendor/X.sol", custom) == PathClass::Exclude);
    CHECK(classify_path("test/X.sol", custom) == PathClass::Include);
}

TEST_CASE("extract_pragma basics") {
    auto r = extract_pragma("pragma solidity ^0.8.0;\ncontract C {}");
    REQUIRE(r.present);
    CHECK(r.error.empty());
    REQUIRE(r.constraint.has_value());
    CHECK(r.constraint->satisfies({0, 8, 4}));
    CHECK_FALSE(r.constraint->satisfies({0, 9, 0}));

    CHECK_FALSE(extract_pragma("").present);
    CHECK_FALSE(extract_pragma("contract C {}").present);
}

TEST_CASE("extract_pragma range form") {
    auto r = extract_pragma("pragma solidity >=0.5.0 <0.9.0;");
    REQUIRE(r.present);
    REQUIRE(r.constraint.has_value());
    CHECK(r.constraint->satisfies({0, 5, 0}));
    CHECK(r.constraint->satisfies({0, 8, 30}));
    CHECK_FALSE(r.constraint->satisfies({0, 9, 0}));
    CHECK_FALSE(r.constraint->satisfies({0, 4, 26}));
}

TEST_CASE("extract_pragma ignores comments and strings") {
    auto commented = extract_pragma("// pragma solidity ^0.4.0;\npragma solidity ^0.8.0;");
    REQUIRE(commented.present);
    CHECK(commented.constraint->satisfies({0, 8, 0}));
    CHECK_FALSE(commented.constraint->satisfies({0, 4, 26}));

    auto in_string = extract_pragma("contract C { string s = \"pragma solidity ^0.4.0;\"; }");
    CHECK_FALSE(in_string.present);
}

TEST_CASE("malformed pragma is an error, not a crash") {
    auto r = extract_pragma("pragma solidity banana;\n");
    CHECK(r.present);
    CHECK_FALSE(r.error.empty());
    CHECK_FALSE(r.constraint.has_value());

    auto unterminated = extract_pragma("pragma solidity ^0.8.0");
    CHECK(unterminated.present);
    CHECK_FALSE(unterminated.error.empty());
}

TEST_CASE("scanner keeps files with malformed pragmas in scope") {
    fs::path dir = fs::temp_directory_path() / "acscan-badpragma";
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "Bad.sol");
        f << "pragma solidity banana;\ncontract Bad { uint256 x; }\n";
    }
    ScanConfig config;
    config.root = dir.string();
    auto outcome = scan_tree(config);
    REQUIRE(outcome.contracts.size() == 1);
    CHECK_FALSE(outcome.contracts[0].version_constraint.has_value());
    CHECK_FALSE(outcome.contracts[0].pragma_error.empty());
    fs::remove_all(dir);
}

TEST_CASE("symlinked directories are not followed") {
    fs::path dir = fs::temp_directory_path() / "acscan-symlinks";
    fs::remove_all(dir);
    fs::create_directories(dir / "real");
    {
        std::ofstream f(dir / "real" / "A.sol");
        f << "pragma solidity ^0.8.0;\ncontract A {}\n";
    }
    std::error_code ec;
    fs::create_directory_symlink(dir / "real", dir / "loop", ec);
    if (!ec) {
        ScanConfig config;
        config.root = dir.string();
        auto contracts = discover_contracts(config);
        REQUIRE(contracts.size() == 1);
        CHECK(contracts[0].path == "real/A.sol");
    }
    fs::remove_all(dir);
}
