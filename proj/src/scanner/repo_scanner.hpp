#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "support/semver.hpp"

namespace acscan::scan {

enum class ScanMode { Repository, SingleContract };

std::vector<std::string> default_excluded_dirs();

struct ScanConfig {
    std::string root;
    std::vector<std::string> excluded_dirs = default_excluded_dirs();
    ScanMode mode = ScanMode::Repository;
    int max_call_depth = 3;
    std::chrono::milliseconds time_limit = std::chrono::minutes(30);
    int reflection_max_iters = 5;
};

struct ContractFile {
    std::string path;    // repository-relative, '/' separated
    std::string source;  // full UTF-8 text
    std::optional<semver::Constraint> version_constraint;
    std::string pragma_error;  // nonempty when the pragma directive was unparsable
};

enum class PathClass { Include, Exclude };

// Exclude iff any directory segment (never the file name) equals a member of
// `excluded`, case-insensitively.
PathClass classify_path(const std::string& rel_path, const std::vector<std::string>& excluded);

struct PragmaResult {
    bool present = false;
    std::optional<semver::Constraint> constraint;
    std::string error;  // MalformedPragma detail
};

// First `pragma solidity` directive in the source, ignoring comments/strings.
PragmaResult extract_pragma(const std::string& source);

struct FileIssue {
    std::string path;
    std::string message;
};

struct ScanOutcome {
    std::vector<ContractFile> contracts;      // sorted by path
    std::vector<std::string> excluded_paths;  // pruned .sol files, sorted
    std::vector<FileIssue> issues;            // unreadable files etc., does not abort
    bool root_missing = false;
};

ScanOutcome scan_tree(const ScanConfig& config);

// Included contracts only; convenience over scan_tree.
std::vector<ContractFile> discover_contracts(const ScanConfig& config);

} // namespace acscan::scan
