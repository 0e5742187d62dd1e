#include "acscan.h"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "report/pipeline.hpp"
#include "report/report.hpp"
#include "support/strings.hpp"

using namespace acscan;

namespace {

thread_local std::string g_last_error;

void set_error(std::string message) { g_last_error = std::move(message); }

std::optional<std::chrono::milliseconds> parse_duration(const std::string& text) {
    std::string t = strings::trim(text);
    if (t.empty()) return std::nullopt;
    std::size_t i = 0;
    while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.')) ++i;
    if (i == 0) return std::nullopt;
    double value = std::stod(t.substr(0, i));
    std::string unit = strings::trim(t.substr(i));
    double ms;
    if (unit == "ms") ms = value;
    else if (unit == "s" || unit.empty()) ms = value * 1000;
    else if (unit == "m" || unit == "min") ms = value * 60000;
    else if (unit == "h") ms = value * 3600000;
    else return std::nullopt;
    return std::chrono::milliseconds(static_cast<long long>(ms));
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct acscan_options {
    report::PipelineConfig config;
};

struct acscan_report {
    report::Report report;
};

extern "C" {

acscan_options* acscan_options_new(void) {
    auto* options = new (std::nothrow) acscan_options();
    if (!options) return nullptr;
    // environment-provided defaults; explicit sets override
    options->config.gateway.endpoint = env_or("ACSCAN_LLM_ENDPOINT", "");
    options->config.gateway.api_key = env_or("ACSCAN_LLM_API_KEY", "");
    options->config.gateway.model = env_or("ACSCAN_LLM_MODEL", "default");
    options->config.solc_dir = env_or("ACSCAN_SOLC_DIR", "");
    return options;
}

void acscan_options_free(acscan_options* options) { delete options; }

acscan_status acscan_options_set(acscan_options* options, const char* key, const char* value) {
    if (!options || !key || !value) {
        set_error("null argument");
        return ACSCAN_ERROR_INVALID_ARGUMENT;
    }
    std::string k = key;
    std::string v = value;
    auto& config = options->config;

    if (k == "mode") {
        if (v == "repo" || v == "repository") config.scan.mode = scan::ScanMode::Repository;
        else if (v == "single") config.scan.mode = scan::ScanMode::SingleContract;
        else { set_error("mode must be repo|single"); return ACSCAN_ERROR_INVALID_ARGUMENT; }
        return ACSCAN_OK;
    }
    if (k == "exclude-dirs") {
        config.scan.excluded_dirs.clear();
        for (auto& part : strings::split(v, ',')) {
            std::string name = strings::trim(part);
            if (!name.empty()) config.scan.excluded_dirs.push_back(name);
        }
        return ACSCAN_OK;
    }
    if (k == "max-call-depth") {
        int depth = std::atoi(v.c_str());
        if (depth < 1) { set_error("max-call-depth must be >= 1"); return ACSCAN_ERROR_INVALID_ARGUMENT; }
        config.scan.max_call_depth = depth;
        return ACSCAN_OK;
    }
    if (k == "time-limit") {
        auto parsed = parse_duration(v);
        if (!parsed || parsed->count() <= 0) {
            set_error("time-limit must be a positive duration (e.g. 30m, 90s, 250ms)");
            return ACSCAN_ERROR_INVALID_ARGUMENT;
        }
        config.scan.time_limit = *parsed;
        return ACSCAN_OK;
    }
    if (k == "reflection-max-iters") {
        int iters = std::atoi(v.c_str());
        if (iters < 1) { set_error("reflection-max-iters must be >= 1"); return ACSCAN_ERROR_INVALID_ARGUMENT; }
        config.scan.reflection_max_iters = iters;
        return ACSCAN_OK;
    }
    if (k == "llm") {
        if (v == "off") { config.gateway.mode = llm::LlmMode::Off; return ACSCAN_OK; }
        if (v == "live") { config.gateway.mode = llm::LlmMode::Live; return ACSCAN_OK; }
        if (strings::starts_with(v, "record:")) {
            config.gateway.mode = llm::LlmMode::Record;
            config.gateway.transcript_path = v.substr(7);
            return ACSCAN_OK;
        }
        if (strings::starts_with(v, "replay:")) {
            config.gateway.mode = llm::LlmMode::Replay;
            config.gateway.transcript_path = v.substr(7);
            return ACSCAN_OK;
        }
        set_error("llm must be off|live|record:FILE|replay:FILE");
        return ACSCAN_ERROR_INVALID_ARGUMENT;
    }
    if (k == "llm-endpoint") { config.gateway.endpoint = v; return ACSCAN_OK; }
    if (k == "llm-api-key") { config.gateway.api_key = v; return ACSCAN_OK; }
    if (k == "llm-model") { config.gateway.model = v; return ACSCAN_OK; }
    if (k == "heuristic") {
        if (v == "auto") config.heuristic = report::HeuristicMode::Auto;
        else if (v == "on") config.heuristic = report::HeuristicMode::On;
        else if (v == "off") config.heuristic = report::HeuristicMode::Off;
        else { set_error("heuristic must be auto|on|off"); return ACSCAN_ERROR_INVALID_ARGUMENT; }
        return ACSCAN_OK;
    }
    if (k == "solc-dir") { config.solc_dir = v; return ACSCAN_OK; }
    if (k == "jobs") {
        config.jobs = std::atoi(v.c_str());
        if (config.jobs < 0) { set_error("jobs must be >= 0"); return ACSCAN_ERROR_INVALID_ARGUMENT; }
        return ACSCAN_OK;
    }
    if (k == "internal-reachable") {
        config.internal_reachable = v == "true" || v == "1" || v == "yes";
        return ACSCAN_OK;
    }
    if (k == "transfer-names") {
        config.lower.promote_transfer_names.clear();
        for (auto& part : strings::split(v, ',')) {
            std::string name = strings::trim(part);
            if (!name.empty()) config.lower.promote_transfer_names.push_back(name);
        }
        return ACSCAN_OK;
    }
    if (k == "dump-cfg-dir") { config.dump_cfg_dir = v; return ACSCAN_OK; }

    set_error("unknown option key: " + k);
    return ACSCAN_ERROR_INVALID_ARGUMENT;
}

acscan_status acscan_run(const acscan_options* options, const char* root,
                         acscan_report** out_report) {
    if (!options || !root || !out_report) {
        set_error("null argument");
        return ACSCAN_ERROR_INVALID_ARGUMENT;
    }
    *out_report = nullptr;
    try {
        report::PipelineConfig config = options->config;
        config.scan.root = root;
        auto result = new acscan_report{report::run_pipeline(config)};
        if (!result->report.fatal_error.empty()) {
            set_error(result->report.fatal_error);
            delete result;
            return ACSCAN_ERROR_CONFIG;
        }
        *out_report = result;
        return ACSCAN_OK;
    } catch (const std::exception& e) {
        set_error(std::string("internal error: ") + e.what());
        return ACSCAN_ERROR_INTERNAL;
    } catch (...) {
        set_error("internal error");
        return ACSCAN_ERROR_INTERNAL;
    }
}

void acscan_report_free(acscan_report* report) { delete report; }

size_t acscan_report_finding_count(const acscan_report* report) {
    return report ? report->report.findings.size() : 0;
}

size_t acscan_report_failure_count(const acscan_report* report) {
    return report ? report->report.failures.size() : 0;
}

int acscan_report_exit_code(const acscan_report* report) {
    return report ? report->report.exit_code() : 2;
}

acscan_status acscan_report_render(const acscan_report* report, const char* format,
                                   char** out_text) {
    if (!report || !format || !out_text) {
        set_error("null argument");
        return ACSCAN_ERROR_INVALID_ARGUMENT;
    }
    std::string f = format;
    report::ReportFormat fmt;
    if (f == "json") fmt = report::ReportFormat::Json;
    else if (f == "sarif") fmt = report::ReportFormat::Sarif;
    else if (f == "text") fmt = report::ReportFormat::Text;
    else {
        set_error("format must be json|sarif|text");
        return ACSCAN_ERROR_INVALID_ARGUMENT;
    }
    try {
        std::string rendered = report::render(report->report, fmt);
        *out_text = dup_string(rendered);
        if (!*out_text) {
            set_error("out of memory");
            return ACSCAN_ERROR_INTERNAL;
        }
        return ACSCAN_OK;
    } catch (const std::exception& e) {
        set_error(std::string("render failed: ") + e.what());
        return ACSCAN_ERROR_INTERNAL;
    }
}

void acscan_string_free(char* text) { std::free(text); }

const char* acscan_version(void) { return report::kToolVersion; }

const char* acscan_status_name(acscan_status status) {
    switch (status) {
        case ACSCAN_OK: return "ok";
        case ACSCAN_ERROR_INVALID_ARGUMENT: return "invalid-argument";
        case ACSCAN_ERROR_CONFIG: return "config-error";
        case ACSCAN_ERROR_IO: return "io-error";
        case ACSCAN_ERROR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* acscan_last_error(void) { return g_last_error.c_str(); }

} // extern "C"
