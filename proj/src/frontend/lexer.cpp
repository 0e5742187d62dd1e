#include "frontend/lexer.hpp"

#include <array>
#include <cctype>

namespace acscan::sol {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Longest-match table, ordered by length.
constexpr std::array<std::string_view, 51> kPuncts = {
    ">>>=", ">>=", "<<=", ">>>", "**=", "...", "=>", "->", "++", "--", "**", "<<", ">>",
    "<=",  ">=",  "==",  "!=",  "&&", "||", "+=", "-=", "*=", "/=", "%=", "|=", "&=",
    "^=",  "(",   ")",   "[",   "]",  "{",  "}",  ";",  ",",  ".",  "?",  ":",  "=",
    "+",   "-",   "*",   "/",   "%",  "!",  "~",  "&",  "|",  "^",  "<",  ">"};

} // namespace

LexResult lex(std::string_view src) {
    LexResult out;
    std::size_t i = 0;
    const std::size_t n = src.size();

    auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
        out.tokens.push_back(Token{kind, src.substr(begin, end - begin), Span{begin, end}});
    };

    while (i < n) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            std::size_t start = i;
            i += 2;
            while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) ++i;
            if (i + 1 < n) {
                i += 2;
            } else {
                out.errors.push_back({start, "unterminated block comment"});
                i = n;
            }
            continue;
        }
        if (c == '"' || c == '\'') {
            std::size_t start = i;
            char quote = c;
            ++i;
            bool closed = false;
            while (i < n) {
                if (src[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (src[i] == quote) {
                    ++i;
                    closed = true;
                    break;
                }
                if (src[i] == '\n') break;  // unterminated on this line
                ++i;
            }
            if (!closed) out.errors.push_back({start, "unterminated string literal"});
            push(TokenKind::StringLiteral, start, i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t start = i;
            if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X')) {
                i += 2;
                while (i < n && (std::isxdigit(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                    ++i;
            } else {
                while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                    ++i;
                if (i < n && src[i] == '.' && i + 1 < n &&
                    std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
                    ++i;
                    while (i < n &&
                           (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                        ++i;
                }
                if (i < n && (src[i] == 'e' || src[i] == 'E')) {
                    std::size_t save = i;
                    ++i;
                    if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
                    if (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) {
                        while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                    } else {
                        i = save;  // 'e' belongs to a following identifier (e.g. `1 ether`)
                    }
                }
            }
            push(TokenKind::Number, start, i);
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t start = i;
            while (i < n && is_ident_char(src[i])) ++i;
            // unicode"..." / hex"..." string prefixes
            if ((src.substr(start, i - start) == "unicode" || src.substr(start, i - start) == "hex") &&
                i < n && (src[i] == '"' || src[i] == '\'')) {
                char quote = src[i];
                ++i;
                while (i < n && src[i] != quote && src[i] != '\n') {
                    if (src[i] == '\\' && i + 1 < n) ++i;
                    ++i;
                }
                if (i < n && src[i] == quote) ++i;
                push(TokenKind::StringLiteral, start, i);
                continue;
            }
            push(TokenKind::Identifier, start, i);
            continue;
        }
        bool matched = false;
        for (std::string_view p : kPuncts) {
            if (src.substr(i, p.size()) == p) {
                push(TokenKind::Punct, i, i + p.size());
                i += p.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            out.errors.push_back({i, std::string("unexpected character '") + c + "'"});
            ++i;
        }
    }
    out.tokens.push_back(Token{TokenKind::EndOfFile, src.substr(n, 0), Span{n, n}});
    return out;
}

} // namespace acscan::sol
