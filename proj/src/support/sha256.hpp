#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace acscan {

// FIPS 180-4 SHA-256, used for transcript request digests.
class Sha256 {
public:
    Sha256();
    void update(const void* data, std::size_t len);
    std::array<std::uint8_t, 32> finish();

    static std::string hex_digest(std::string_view data);

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::uint64_t total_len_ = 0;
    std::array<std::uint8_t, 64> buffer_{};
    std::size_t buffer_len_ = 0;
};

} // namespace acscan
