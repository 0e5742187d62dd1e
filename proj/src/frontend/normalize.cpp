#include "frontend/normalize.hpp"

#include <cctype>

#include "frontend/textscan.hpp"

namespace acscan::sol {

NormalizedCode normalize(std::string_view source) {
    std::string out;
    out.reserve(source.size());
    scan_text(source, [&](TextRegion region, std::size_t, char c) {
        switch (region) {
            case TextRegion::Comment:
                break;  // removed entirely
            case TextRegion::StringLit:
                out.push_back(c);
                break;
            case TextRegion::Code:
                if (std::isspace(static_cast<unsigned char>(c))) {
                    if (!out.empty() && out.back() != ' ') out.push_back(' ');
                } else {
                    out.push_back(c);
                }
                break;
        }
    });
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return NormalizedCode{std::move(out)};
}

bool contains_unmodified(std::string_view completed, std::string_view original_snippet) {
    std::string needle = normalize(original_snippet).text;
    if (needle.empty()) return true;
    return normalize(completed).text.find(needle) != std::string::npos;
}

} // namespace acscan::sol
