#include "llm/transcript.hpp"

#include <fstream>

#include "json.hpp"
#include "support/sha256.hpp"

namespace acscan::llm {

std::string Transcript::digest_of(const std::string& prompt) {
    return Sha256::hex_digest(prompt);
}

bool Transcript::load(const std::string& path, std::string& error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        error = "cannot open transcript: " + path;
        return false;
    }
    std::lock_guard lock(mu_);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("digest") || !j.contains("response")) {
            error = "malformed transcript line " + std::to_string(line_no);
            return false;
        }
        TranscriptEntry e;
        e.digest = j["digest"].get<std::string>();
        e.prompt = j.value("prompt", "");
        e.response = j["response"].get<std::string>();
        e.latency_ms = j.value("latency_ms", std::int64_t{0});
        by_digest_[e.digest].push_back(entries_.size());
        entries_.push_back(std::move(e));
    }
    return true;
}

bool Transcript::open_for_record(const std::string& path, std::string& error) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        error = "cannot create transcript: " + path;
        return false;
    }
    std::lock_guard lock(mu_);
    record_path_ = path;
    return true;
}

bool Transcript::lookup(const std::string& digest, std::string& response) {
    std::lock_guard lock(mu_);
    auto it = by_digest_.find(digest);
    if (it == by_digest_.end() || it->second.empty()) return false;
    std::size_t& cur = cursor_[digest];
    std::size_t index = it->second[std::min(cur, it->second.size() - 1)];
    ++cur;
    response = entries_[index].response;
    return true;
}

void Transcript::append(const TranscriptEntry& entry) {
    std::lock_guard lock(mu_);
    by_digest_[entry.digest].push_back(entries_.size());
    entries_.push_back(entry);
    if (!record_path_.empty()) {
        nlohmann::json j;
        j["digest"] = entry.digest;
        j["prompt"] = entry.prompt;
        j["response"] = entry.response;
        j["latency_ms"] = entry.latency_ms;
        std::ofstream out(record_path_, std::ios::binary | std::ios::app);
        out << j.dump() << "\n";
    }
}

std::size_t Transcript::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

} // namespace acscan::llm
