#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "frontend/lexer.hpp"
#include "frontend/normalize.hpp"
#include "mutators.hpp"

using namespace acscan;
using namespace acscan::sol;

namespace {

const std::string kFixtures = ACSCAN_FIXTURE_DIR;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// token-stream oracle: kinds and spellings, whitespace/comments ignored
std::vector<std::string> token_stream(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& t : lex(text).tokens)
        if (t.kind != TokenKind::EndOfFile) out.emplace_back(t.text);
    return out;
}

} // namespace

TEST_CASE("normalize: definition of the rule") {
    CHECK(normalize("a  =\n 1; // hi").text == "a = 1;");
    CHECK(normalize("").text == "");
    CHECK(normalize("   \n\t ").text == "");
    CHECK(normalize("/* only a comment */").text == "");
    CHECK(normalize("a/* glue */ b").text == "a b");
}

TEST_CASE("normalize preserves string literals byte-exactly") {
    CHECK(normalize("x = \"a  b\";").text == "x = \"a  b\";");
    CHECK(normalize("x = \"// not a comment\";").text == "x = \"// not a comment\";");
    CHECK(normalize("y = '  ';").text == "y = '  ';");
    CHECK(normalize("z = \"tab\\t end  \";").text == "z = \"tab\\t end  \";");
}

TEST_CASE("normalize is idempotent on fixtures and mutants") {
    std::mt19937 rng(7);
    for (const auto& entry : std::filesystem::directory_iterator(kFixtures + "/corpus")) {
        if (entry.path().extension() != ".sol") continue;
        std::string source = read_file(entry.path().string());
        auto once = normalize(source);
        CHECK(normalize(once.text).text == once.text);
        auto mutated = testing::mutate_layout(source, rng);
        auto mutated_once = normalize(mutated);
        CHECK(normalize(mutated_once.text).text == mutated_once.text);
    }
}

TEST_CASE("reformatting with tabs leaves normalized form and token stream alone") {
    std::string original = read_file(kFixtures + "/known/simple_bank.sol");
    // rewrite code-region spaces to tabs; string literals must survive intact
    std::string retabbed;
    scan_text(original, [&](TextRegion region, std::size_t, char c) {
        if (region == TextRegion::Code && c == ' ') retabbed += '\t';
        else retabbed += c;
    });
    CHECK(normalize(original).text == normalize(retabbed).text);
    CHECK(token_stream(original) == token_stream(retabbed));
}

TEST_CASE("contains_unmodified: wrapping keeps the snippet") {
    std::string snippet =
        "function withdraw(uint256 amount) external {\n"
        "    require(balances[msg.sender] >= amount);\n"
        "    balances[msg.sender] -= amount;\n"
        "}";
    std::string completed = "pragma solidity ^0.8.0;\ncontract Wrap {\n" + snippet + "\n}\n";
    CHECK(contains_unmodified(completed, snippet));
    CHECK_FALSE(contains_unmodified("contract Empty {}", snippet));
}

TEST_CASE("layout mutations never flip; token mutations always flip") {
    std::string snippet = read_file(kFixtures + "/known/simple_bank.sol");
    // use the withdraw definition as the snippet of record
    auto start = snippet.find("function withdraw");
    auto end = snippet.rfind('}');
    end = snippet.rfind('}', end - 1);  // closing brace of withdraw
    std::string fn = snippet.substr(start, end - start + 1);
    std::string completed = "pragma solidity ^0.8.0;\ncontract W {\n  " + fn + "\n}\n";
    REQUIRE(contains_unmodified(completed, fn));

    std::mt19937 rng(424242);
    int flips = 0;
    for (int i = 0; i < 60; ++i) {
        std::string relayout = testing::mutate_layout(completed, rng);
        CHECK(contains_unmodified(relayout, fn));
        std::string snippet_relayout = testing::mutate_layout(fn, rng);
        CHECK(contains_unmodified(completed, snippet_relayout));

        // mutate one token of the snippet occurrence inside the completed text
        std::string mutated_fn = testing::mutate_one_token(fn, rng);
        REQUIRE_FALSE(mutated_fn.empty());
        std::string mutated_completed = completed;
        auto at = mutated_completed.find(fn);
        REQUIRE(at != std::string::npos);
        mutated_completed.replace(at, fn.size(), mutated_fn);
        if (!contains_unmodified(mutated_completed, fn)) ++flips;
    }
    CHECK(flips == 60);
}

TEST_CASE("single identifier rename breaks the match") {
    std::string snippet = "function donate(address b) external { selfdestruct(b); }";
    std::string completed = "contract C { " + snippet + " }";
    REQUIRE(contains_unmodified(completed, snippet));
    std::string renamed = completed;
    auto at = renamed.find("donate");
    renamed.replace(at, 6, "donatx");
    CHECK_FALSE(contains_unmodified(renamed, snippet));
}
