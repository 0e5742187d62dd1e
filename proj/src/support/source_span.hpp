#pragma once

#include <cstddef>

namespace acscan {

// Half-open byte range [begin, end) into a source buffer.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end > begin ? end - begin : 0; }
    bool contains(std::size_t pos) const { return pos >= begin && pos < end; }
    bool operator==(const Span&) const = default;
};

struct LineCol {
    std::size_t line = 1;  // 1-based
    std::size_t column = 1;
};

} // namespace acscan
