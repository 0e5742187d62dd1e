#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "frontend/ast.hpp"

namespace acscan::sol {

struct Diagnostic {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
    std::string message;
};

// A failed parse yields a null unit plus diagnostics; it never throws out.
struct ParseResult {
    std::unique_ptr<SourceUnit> unit;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return unit != nullptr; }
};

ParseResult parse(std::string_view source);

} // namespace acscan::sol
