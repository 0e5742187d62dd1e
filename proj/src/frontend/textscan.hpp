#pragma once

#include <cstddef>
#include <string_view>

namespace acscan::sol {

enum class TextRegion { Code, Comment, StringLit };

// Walks source classifying every byte as code, comment, or string-literal
// content (quotes included in StringLit). Unterminated comments/strings run
// to end of input. fn(region, index, ch) is called once per byte.
template <typename Fn>
void scan_text(std::string_view src, Fn&& fn) {
    enum class State { Code, Line, Block, DQuote, SQuote } state = State::Code;
    for (std::size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        switch (state) {
            case State::Code:
                if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
                    state = State::Line;
                    fn(TextRegion::Comment, i, c);
                } else if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
                    state = State::Block;
                    fn(TextRegion::Comment, i, c);
                } else if (c == '"') {
                    state = State::DQuote;
                    fn(TextRegion::StringLit, i, c);
                } else if (c == '\'') {
                    state = State::SQuote;
                    fn(TextRegion::StringLit, i, c);
                } else {
                    fn(TextRegion::Code, i, c);
                }
                break;
            case State::Line:
                if (c == '\n') {
                    state = State::Code;
                    fn(TextRegion::Code, i, c);  // newline itself is code whitespace
                } else {
                    fn(TextRegion::Comment, i, c);
                }
                break;
            case State::Block:
                fn(TextRegion::Comment, i, c);
                if (c == '*' && i + 1 < src.size() && src[i + 1] == '/') {
                    fn(TextRegion::Comment, i + 1, src[i + 1]);
                    ++i;
                    state = State::Code;
                }
                break;
            case State::DQuote:
            case State::SQuote: {
                fn(TextRegion::StringLit, i, c);
                if (c == '\\' && i + 1 < src.size()) {
                    fn(TextRegion::StringLit, i + 1, src[i + 1]);
                    ++i;
                } else if ((state == State::DQuote && c == '"') ||
                           (state == State::SQuote && c == '\'')) {
                    state = State::Code;
                } else if (c == '\n') {
                    // Solidity string literals do not span lines; recover.
                    state = State::Code;
                }
                break;
            }
        }
    }
}

} // namespace acscan::sol
