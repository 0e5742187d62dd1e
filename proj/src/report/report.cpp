#include "report/report.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace acscan::report {

using nlohmann::json;

const char* to_string(FileState s) {
    switch (s) {
        case FileState::Scanned: return "scanned";
        case FileState::Excluded: return "excluded";
        case FileState::ParseFailed: return "parse-failed";
        case FileState::Unreadable: return "unreadable";
    }
    return "scanned";
}

void Report::canonicalize() {
    std::sort(files.begin(), files.end(), [](const FileStatus& a, const FileStatus& b) {
        return std::tie(a.path, a.detail) < std::tie(b.path, b.detail);
    });
    std::sort(snippets.begin(), snippets.end(), [](const SnippetRecord& a, const SnippetRecord& b) {
        return std::tie(a.origin_path, a.contract_name, a.function_signature) <
               std::tie(b.origin_path, b.contract_name, b.function_signature);
    });
    std::sort(findings.begin(), findings.end(), [](const ReportFinding& a, const ReportFinding& b) {
        return std::tie(a.origin_path, a.function_signature, a.instruction_index, a.action) <
               std::tie(b.origin_path, b.function_signature, b.instruction_index, b.action);
    });
    std::sort(failures.begin(), failures.end(), [](const FailureRecord& a, const FailureRecord& b) {
        return std::tie(a.path, a.reason) < std::tie(b.path, b.reason);
    });
    std::sort(hallucinated.begin(), hallucinated.end(),
              [](const HallucinationRecord& a, const HallucinationRecord& b) {
                  return std::tie(a.path, a.signature) < std::tie(b.path, b.signature);
              });
}

namespace {

json config_json(const ConfigEcho& c) {
    json j;
    j["root"] = c.root;
    j["mode"] = c.mode;
    j["excluded_dirs"] = c.excluded_dirs;
    j["max_call_depth"] = c.max_call_depth;
    j["time_limit_ms"] = c.time_limit_ms;
    j["reflection_max_iters"] = c.reflection_max_iters;
    j["llm"] = c.llm_mode;
    j["heuristic"] = c.heuristic;
    j["compiler"] = c.compiler;
    j["jobs"] = c.jobs;
    return j;
}

json finding_json(const ReportFinding& f) {
    json j;
    j["path"] = f.origin_path;
    j["contract"] = f.contract_name;
    j["function"] = f.function_signature;
    j["action"] = f.action;
    j["instruction_index"] = f.instruction_index;
    j["span"] = json{{"begin", f.span_begin}, {"end", f.span_end}};
    j["line"] = f.line;
    j["column"] = f.column;
    j["ac_status"] = f.ac_status;
    if (!f.check_where.empty()) j["check"] = f.check_where;
    j["completion_iterations"] = f.completion_iterations;
    return j;
}

} // namespace

std::string render_json(const Report& report) {
    Report sorted = report;
    sorted.canonicalize();

    json j;
    j["tool"] = kToolName;
    j["version"] = sorted.tool_version;
    j["config"] = config_json(sorted.config);
    if (!sorted.fatal_error.empty()) j["error"] = sorted.fatal_error;

    j["files"] = json::array();
    for (const auto& f : sorted.files) {
        json e;
        e["path"] = f.path;
        e["state"] = to_string(f.state);
        if (!f.detail.empty()) e["detail"] = f.detail;
        j["files"].push_back(e);
    }

    j["snippets"] = json::array();
    for (const auto& s : sorted.snippets) {
        json e;
        e["path"] = s.origin_path;
        e["contract"] = s.contract_name;
        e["function"] = s.function_signature;
        e["provenance"] = s.provenance;
        e["status"] = s.status;
        e["iterations"] = s.iterations;
        if (!s.compiler_version.empty()) e["compiler"] = s.compiler_version;
        if (!s.detail.empty()) e["detail"] = s.detail;
        e["risky_actions"] = s.risky_actions;
        e["findings"] = s.findings;
        j["snippets"].push_back(e);
    }

    j["findings"] = json::array();
    for (const auto& f : sorted.findings) j["findings"].push_back(finding_json(f));

    j["failures"] = json::array();
    for (const auto& f : sorted.failures)
        j["failures"].push_back(json{{"path", f.path}, {"reason", f.reason}});

    j["hallucinated"] = json::array();
    for (const auto& h : sorted.hallucinated)
        j["hallucinated"].push_back(json{{"path", h.path}, {"signature", h.signature}});

    j["summary"] = json{{"files", sorted.files.size()},
                        {"snippets", sorted.snippets.size()},
                        {"findings", sorted.findings.size()},
                        {"failures", sorted.failures.size()},
                        {"hallucinated", sorted.hallucinated.size()}};
    return j.dump(2) + "\n";
}

std::string render_sarif(const Report& report) {
    Report sorted = report;
    sorted.canonicalize();

    struct RuleDef {
        const char* id;
        const char* name;
        const char* text;
    };
    static const RuleDef kRules[] = {
        {"risky-transfer", "RiskyTransfer",
         "Value transfer without any associated state-variable modification in the function or "
         "its bounded call chain."},
        {"risky-state-write", "RiskyStateVariableModification",
         "State-variable modification without any corresponding transfer in the same scope."},
        {"low-level-call", "LowLevelExternalCall",
         "Low-level external call (.call/.delegatecall/.staticcall) bypassing type checking."},
        {"selfdestruct", "UnprotectedSelfdestruct",
         "Selfdestruct reachable without a prior caller check."},
    };

    json rules = json::array();
    for (const auto& r : kRules) {
        rules.push_back(json{{"id", r.id},
                             {"name", r.name},
                             {"shortDescription", json{{"text", r.text}}},
                             {"defaultConfiguration", json{{"level", "warning"}}}});
    }

    json results = json::array();
    for (const auto& f : sorted.findings) {
        int rule_index = 0;
        for (int i = 0; i < 4; ++i)
            if (f.action == kRules[i].id) rule_index = i;
        std::string message = f.contract_name + "." + f.function_signature + ": " + f.action +
                              (f.ac_status == "no-check"
                                   ? " with no caller check"
                                   : " before the earliest caller check (" + f.check_where + ")");
        json loc = {{"physicalLocation",
                     json{{"artifactLocation", json{{"uri", f.origin_path}}},
                          {"region", json{{"startLine", f.line}, {"startColumn", f.column}}}}}};
        results.push_back(json{{"ruleId", f.action},
                               {"ruleIndex", rule_index},
                               {"level", "warning"},
                               {"message", json{{"text", message}}},
                               {"locations", json::array({loc})}});
    }

    json run = {{"tool", json{{"driver", json{{"name", kToolName},
                                              {"version", sorted.tool_version},
                                              {"rules", rules}}}}},
                {"results", results},
                {"columnKind", "utf16CodeUnits"}};

    json j = {{"$schema",
               "https://raw.githubusercontent.com/oasis-tcs/sarif-spec/master/Schemata/"
               "sarif-schema-2.1.0.json"},
              {"version", "2.1.0"},
              {"runs", json::array({run})}};
    return j.dump(2) + "\n";
}

std::string render_text(const Report& report) {
    Report sorted = report;
    sorted.canonicalize();
    std::ostringstream os;
    os << kToolName << " " << sorted.tool_version << " — " << sorted.config.mode << " scan of "
       << sorted.config.root << "\n";
    if (!sorted.fatal_error.empty()) {
        os << "error: " << sorted.fatal_error << "\n";
        return os.str();
    }
    os << "files: " << sorted.files.size() << "  snippets: " << sorted.snippets.size()
       << "  findings: " << sorted.findings.size() << "  failures: " << sorted.failures.size()
       << "\n";
    if (!sorted.findings.empty()) {
        os << "\nfile | function | risky action | status\n";
        os << "---- | -------- | ------------ | ------\n";
        for (const auto& f : sorted.findings) {
            os << f.origin_path << ":" << f.line << " | " << f.contract_name << "."
               << f.function_signature << " | " << f.action << " | "
               << (f.ac_status == "no-check" ? "no check" : "check after action") << "\n";
        }
    }
    if (!sorted.failures.empty()) {
        os << "\nfailures:\n";
        for (const auto& f : sorted.failures) os << "  " << f.path << ": " << f.reason << "\n";
    }
    if (!sorted.hallucinated.empty()) {
        os << "\nhallucinated signatures:\n";
        for (const auto& h : sorted.hallucinated)
            os << "  " << h.path << ": " << h.signature << "\n";
    }
    if (!sorted.timings.empty()) {
        os << "\ntimings:\n";
        for (const auto& t : sorted.timings) os << "  " << t.phase << ": " << t.ms << " ms\n";
    }
    return os.str();
}

std::string render(const Report& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return render_json(report);
        case ReportFormat::Sarif: return render_sarif(report);
        case ReportFormat::Text: return render_text(report);
    }
    return render_json(report);
}

bool emit_report(const Report& report, ReportFormat format, const std::string& sink,
                 std::string& error) {
    std::string rendered = render(report, format);
    if (sink.empty() || sink == "-") {
        std::cout << rendered;
        return true;
    }
    std::ofstream out(sink, std::ios::binary | std::ios::trunc);
    if (!out) {
        error = "cannot open output file: " + sink;
        return false;
    }
    out << rendered;
    if (!out) {
        error = "short write to " + sink;
        return false;
    }
    return true;
}

} // namespace acscan::report
