#pragma once

// Test-only mutation generators for the unmodified-code properties:
// layout mutations that must never flip contains_unmodified, and
// single-token mutations that must always flip it.

#include <random>
#include <string>
#include <vector>

#include "frontend/lexer.hpp"
#include "frontend/textscan.hpp"

namespace acscan::testing {

// Whitespace runs inside code regions (never inside string literals).
inline std::vector<Span> whitespace_runs(const std::string& text) {
    std::vector<Span> runs;
    bool in_run = false;
    std::size_t start = 0;
    sol::scan_text(text, [&](sol::TextRegion region, std::size_t i, char c) {
        bool ws = region == sol::TextRegion::Code &&
                  (c == ' ' || c == '\t' || c == '\n' || c == '\r');
        if (ws && !in_run) {
            in_run = true;
            start = i;
        } else if (!ws && in_run) {
            in_run = false;
            runs.push_back({start, i});
        }
    });
    if (in_run) runs.push_back({start, text.size()});
    return runs;
}

// Layout-only rewrite: whitespace runs reshuffled, comments planted inside
// existing whitespace. A run containing a newline keeps one — that newline
// may terminate a line comment, and dropping it would change the token
// stream. The token stream is unchanged by construction.
inline std::string mutate_layout(const std::string& text, std::mt19937& rng) {
    auto runs = whitespace_runs(text);
    if (runs.empty()) return text + " ";
    std::string out;
    std::size_t cursor = 0;
    const char* plain_fills[] = {" ", "  ", "\t", " \t "};
    const char* newline_fills[] = {"\n", "\n\t", " \n ", "\n\n"};
    for (const auto& run : runs) {
        out.append(text, cursor, run.begin - cursor);
        bool has_newline =
            text.find('\n', run.begin) < run.end;
        switch (rng() % 4) {
            case 0:
                out += has_newline ? newline_fills[rng() % 4] : plain_fills[rng() % 4];
                break;
            case 1:
                out += has_newline ? " /* shuffled */\n" : " /* shuffled */ ";
                break;
            case 2:
                out += " // note\n";  // adds a newline; extra whitespace is harmless
                break;
            default:
                out.append(text, run.begin, run.end - run.begin);
                break;
        }
        cursor = run.end;
    }
    out.append(text, cursor, text.size() - cursor);
    if (rng() % 2) out = "\n" + out;
    if (rng() % 2) out += "\n\t";
    return out;
}

// One token changed; empty string when the text has no mutable token.
inline std::string mutate_one_token(const std::string& text, std::mt19937& rng) {
    auto lexed = sol::lex(text);
    std::vector<const sol::Token*> candidates;
    for (const auto& t : lexed.tokens) {
        if (t.kind == sol::TokenKind::Identifier || t.kind == sol::TokenKind::Number)
            candidates.push_back(&t);
        if (t.kind == sol::TokenKind::Punct &&
            (t.text == "+" || t.text == "-" || t.text == "==" || t.text == "!=" ||
             t.text == "<" || t.text == ">" || t.text == ">=" || t.text == "<="))
            candidates.push_back(&t);
    }
    if (candidates.empty()) return {};
    const sol::Token& victim = *candidates[rng() % candidates.size()];
    std::string replacement;
    if (victim.kind == sol::TokenKind::Identifier) {
        replacement = std::string(victim.text) + "_m";
    } else if (victim.kind == sol::TokenKind::Number) {
        replacement = std::string(victim.text) + "7";
    } else {
        if (victim.text == "+") replacement = "-";
        else if (victim.text == "-") replacement = "+";
        else if (victim.text == "==") replacement = "!=";
        else if (victim.text == "!=") replacement = "==";
        else if (victim.text == "<") replacement = ">";
        else if (victim.text == ">") replacement = "<";
        else if (victim.text == ">=") replacement = "<=";
        else replacement = ">=";
    }
    std::string out = text;
    out.replace(victim.span.begin, victim.span.end - victim.span.begin, replacement);
    return out;
}

} // namespace acscan::testing
