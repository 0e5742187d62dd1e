#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace acscan::report {

inline constexpr const char* kToolName = "acscan";
inline constexpr const char* kToolVersion = "0.1.0";

enum class FileState { Scanned, Excluded, ParseFailed, Unreadable };

const char* to_string(FileState s);

struct FileStatus {
    std::string path;
    FileState state = FileState::Scanned;
    std::string detail;
};

struct SnippetRecord {
    std::string origin_path;
    std::string contract_name;
    std::string function_signature;
    std::string provenance;  // llm | heuristic | forced
    std::string status;      // compiled | compile-failed | modified
    int iterations = 0;
    std::string compiler_version;
    std::string detail;
    int risky_actions = 0;
    int findings = 0;
};

struct ReportFinding {
    std::string origin_path;
    std::string contract_name;
    std::string function_signature;
    std::string action;  // rule id: risky-transfer / risky-state-write / ...
    int instruction_index = 0;
    std::uint64_t span_begin = 0;  // in the analyzed source
    std::uint64_t span_end = 0;
    std::uint64_t line = 1;  // anchored in the origin file
    std::uint64_t column = 1;
    std::string ac_status;    // no-check | check-after-action
    std::string check_where;  // scope descriptor when a late check exists
    int completion_iterations = 0;
};

struct FailureRecord {
    std::string path;
    std::string reason;
};

struct HallucinationRecord {
    std::string path;
    std::string signature;
};

struct PhaseTiming {
    std::string phase;
    std::int64_t ms = 0;
};

struct ConfigEcho {
    std::string root;
    std::string mode;
    std::vector<std::string> excluded_dirs;
    int max_call_depth = 3;
    std::int64_t time_limit_ms = 0;
    int reflection_max_iters = 5;
    std::string llm_mode;
    std::string heuristic;
    std::string compiler;
    int jobs = 0;
};

struct Report {
    std::string tool_version = kToolVersion;
    ConfigEcho config;
    std::vector<FileStatus> files;
    std::vector<SnippetRecord> snippets;
    std::vector<ReportFinding> findings;
    std::vector<FailureRecord> failures;
    std::vector<HallucinationRecord> hallucinated;
    std::vector<PhaseTiming> timings;  // volatile; excluded from canonical output
    std::string fatal_error;           // nonempty -> execution error (exit 2)

    int exit_code() const {
        if (!fatal_error.empty()) return 2;
        return findings.empty() ? 0 : 1;
    }

    // Deterministic ordering of every list; called before rendering.
    void canonicalize();
};

enum class ReportFormat { Json, Sarif, Text };

// Canonical structured rendering: sorted keys, sorted findings, no volatile
// fields. Byte-identical across runs over identical inputs.
std::string render_json(const Report& report);

// SARIF 2.1.0 with one rule per risky-action kind.
std::string render_sarif(const Report& report);

// Human-readable summary table; includes timings.
std::string render_text(const Report& report);

std::string render(const Report& report, ReportFormat format);

// Write to a file path, or stdout when sink is "-". Returns false on IoError.
bool emit_report(const Report& report, ReportFormat format, const std::string& sink,
                 std::string& error);

} // namespace acscan::report
