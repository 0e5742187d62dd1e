#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace acscan::llm {

struct TranscriptEntry {
    std::string digest;  // sha256 over the rendered prompt bytes
    std::string prompt;
    std::string response;
    std::int64_t latency_ms = 0;
};

// Line-delimited JSON store of provider exchanges. Replay consumes entries
// FIFO per digest; a digest with exhausted entries keeps returning the last
// recorded response so repeated identical calls stay deterministic.
class Transcript {
public:
    static std::string digest_of(const std::string& prompt);

    // Load for replay. Returns false (with error detail) on unreadable or
    // malformed files.
    bool load(const std::string& path, std::string& error);

    // Open for appending in record mode.
    bool open_for_record(const std::string& path, std::string& error);

    // Replay lookup; false means ReplayMiss.
    bool lookup(const std::string& digest, std::string& response);

    void append(const TranscriptEntry& entry);

    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::vector<TranscriptEntry> entries_;
    std::map<std::string, std::vector<std::size_t>> by_digest_;
    std::map<std::string, std::size_t> cursor_;
    std::string record_path_;
};

} // namespace acscan::llm
