#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "support/source_span.hpp"

namespace acscan::sol {

enum class TokenKind {
    Identifier,
    Number,
    StringLiteral,
    Punct,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string_view text;  // view into the lexed source
    Span span;

    bool is(std::string_view t) const { return text == t; }
    bool is_ident(std::string_view t) const { return kind == TokenKind::Identifier && text == t; }
};

struct LexError {
    std::size_t offset = 0;
    std::string message;
};

struct LexResult {
    std::vector<Token> tokens;  // always terminated by EndOfFile
    std::vector<LexError> errors;
};

LexResult lex(std::string_view source);

} // namespace acscan::sol
