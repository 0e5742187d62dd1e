// acscan command line. Talks to the scanner exclusively through the C API in
// acscan.h, the same surface external embedders get.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "acscan.h"

namespace {

struct OptionGuard {
    acscan_options* options = acscan_options_new();
    ~OptionGuard() { acscan_options_free(options); }
};

struct ReportGuard {
    acscan_report* report = nullptr;
    ~ReportGuard() { acscan_report_free(report); }
};

// key = value lines; '#' comments; keys mirror the CLI flags
bool apply_config_file(acscan_options* options, const std::string& path, std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot open config file: " + path;
        return false;
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) {
                error = path + ":" + std::to_string(line_no) + ": expected key = value";
                return false;
            }
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r\n");
            auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (acscan_options_set(options, key.c_str(), value.c_str()) != ACSCAN_OK) {
            error = path + ":" + std::to_string(line_no) + ": " + acscan_last_error();
            return false;
        }
    }
    return true;
}

int fail_config(const std::string& message) {
    std::cerr << "acscan: " << message << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"access-control vulnerability scanner for Solidity repositories"};
    app.set_version_flag("--version", acscan_version());
    app.require_subcommand(1);

    auto* scan = app.add_subcommand("scan", "scan a repository root or a single contract");
    std::string root;
    std::string mode = "repo";
    std::string exclude_dirs;
    int max_depth = -1;
    std::string time_limit;
    int reflection_iters = -1;
    std::string llm = "off";
    std::string format = "text";
    std::string out_path = "-";
    std::string config_file;
    std::string heuristic;
    std::string solc_dir;
    std::string transfer_names;
    std::string dump_cfg_dir;
    int jobs = -1;
    bool internal_reachable = false;

    scan->add_option("root", root, "repository root directory (or .sol file in single mode)")
        ->required();
    scan->add_option("--mode", mode, "repo|single")->check(CLI::IsMember({"repo", "single"}));
    scan->add_option("--exclude-dirs", exclude_dirs,
                     "comma-separated directory names pruned from the scan");
    scan->add_option("--max-depth", max_depth, "function call depth bound (default 3)");
    scan->add_option("--time-limit", time_limit, "per-contract budget, e.g. 30m, 90s, 250ms");
    scan->add_option("--reflection-max-iters", reflection_iters,
                     "self-reflection rounds per snippet (default 5)");
    scan->add_option("--llm", llm, "off|live|record:FILE|replay:FILE");
    scan->add_option("--heuristic", heuristic, "auto|on|off (default auto)");
    scan->add_option("--solc-dir", solc_dir, "directory of versioned solc binaries");
    scan->add_option("--transfer-names", transfer_names,
                     "member names promoted to transfer operations");
    scan->add_option("--format", format, "json|sarif|text")
        ->check(CLI::IsMember({"json", "sarif", "text"}));
    scan->add_option("--out", out_path, "output path ('-' = stdout)");
    scan->add_option("--config", config_file, "key=value config file (flags override)");
    scan->add_option("--jobs", jobs, "worker threads (default: processors)");
    scan->add_option("--dump-cfg-dir", dump_cfg_dir, "write per-function CFGs (DOT) here");
    scan->add_flag("--internal-reachable", internal_reachable,
                   "also flag internal functions reachable from unguarded entries");

    CLI11_PARSE(app, argc, argv);

    OptionGuard guard;
    if (!guard.options) return fail_config("out of memory");

    if (!config_file.empty()) {
        std::string error;
        if (!apply_config_file(guard.options, config_file, error)) return fail_config(error);
    }

    // flags override config-file values
    std::vector<std::pair<std::string, std::string>> pending;
    pending.emplace_back("mode", mode);
    pending.emplace_back("llm", llm);
    if (!exclude_dirs.empty()) pending.emplace_back("exclude-dirs", exclude_dirs);
    if (max_depth >= 0) pending.emplace_back("max-call-depth", std::to_string(max_depth));
    if (!time_limit.empty()) pending.emplace_back("time-limit", time_limit);
    if (reflection_iters >= 0)
        pending.emplace_back("reflection-max-iters", std::to_string(reflection_iters));
    if (!heuristic.empty()) pending.emplace_back("heuristic", heuristic);
    if (!solc_dir.empty()) pending.emplace_back("solc-dir", solc_dir);
    if (!transfer_names.empty()) pending.emplace_back("transfer-names", transfer_names);
    if (jobs >= 0) pending.emplace_back("jobs", std::to_string(jobs));
    if (internal_reachable) pending.emplace_back("internal-reachable", "true");
    if (!dump_cfg_dir.empty()) pending.emplace_back("dump-cfg-dir", dump_cfg_dir);

    for (const auto& [key, value] : pending) {
        if (acscan_options_set(guard.options, key.c_str(), value.c_str()) != ACSCAN_OK)
            return fail_config(std::string(key) + ": " + acscan_last_error());
    }

    ReportGuard report;
    acscan_status status = acscan_run(guard.options, root.c_str(), &report.report);
    if (status != ACSCAN_OK) return fail_config(acscan_last_error());

    char* rendered = nullptr;
    if (acscan_report_render(report.report, format.c_str(), &rendered) != ACSCAN_OK)
        return fail_config(acscan_last_error());

    if (out_path.empty() || out_path == "-") {
        std::fwrite(rendered, 1, std::strlen(rendered), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            acscan_string_free(rendered);
            return fail_config("cannot open output file: " + out_path);
        }
        out << rendered;
    }
    acscan_string_free(rendered);
    return acscan_report_exit_code(report.report);
}
