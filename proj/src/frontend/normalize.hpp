#pragma once

#include <string>
#include <string_view>

namespace acscan::sol {

struct NormalizedCode {
    std::string text;
};

// Comments removed, every maximal whitespace run collapsed to one space,
// leading/trailing space trimmed. String literals are preserved byte-exactly.
// Idempotent: normalize(normalize(x).text).text == normalize(x).text.
NormalizedCode normalize(std::string_view source);

// True iff the normalized snippet occurs verbatim inside the normalized
// completed source. Case-sensitive, as Solidity identifiers are.
bool contains_unmodified(std::string_view completed, std::string_view original_snippet);

} // namespace acscan::sol
