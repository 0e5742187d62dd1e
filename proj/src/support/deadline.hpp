#pragma once

#include <chrono>
#include <stdexcept>

namespace acscan {

struct DeadlineExceeded : std::runtime_error {
    DeadlineExceeded() : std::runtime_error("per-contract time budget exceeded") {}
};

// Cooperative per-contract budget. Analysis loops call check() at block-visit
// granularity; expiry unwinds via DeadlineExceeded.
class Deadline {
public:
    Deadline() = default;
    explicit Deadline(std::chrono::milliseconds budget)
        : armed_(budget.count() > 0),
          expiry_(std::chrono::steady_clock::now() + budget) {}

    bool expired() const {
        return armed_ && std::chrono::steady_clock::now() >= expiry_;
    }

    void check() const {
        if (expired()) throw DeadlineExceeded{};
    }

private:
    bool armed_ = false;
    std::chrono::steady_clock::time_point expiry_{};
};

} // namespace acscan
