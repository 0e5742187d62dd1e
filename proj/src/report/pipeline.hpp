#pragma once

#include <string>

#include "ir/cfg_builder.hpp"
#include "llm/gateway.hpp"
#include "report/report.hpp"
#include "scanner/repo_scanner.hpp"

namespace acscan::report {

enum class HeuristicMode { Auto, On, Off };  // Auto: on iff the gateway is off

struct PipelineConfig {
    scan::ScanConfig scan;
    llm::GatewayConfig gateway;
    HeuristicMode heuristic = HeuristicMode::Auto;
    std::string solc_dir;  // empty -> builtin syntax-check driver
    ir::LowerOptions lower;
    bool internal_reachable = false;
    int jobs = 0;  // 0 -> hardware concurrency
    std::string dump_cfg_dir;
};

// scan -> extract -> complete -> build -> detect. Partial failures land in
// the Report; only configuration-level problems set Report::fatal_error.
Report run_pipeline(const PipelineConfig& config);

} // namespace acscan::report
