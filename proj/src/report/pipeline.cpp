#include "report/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "complete/compiler.hpp"
#include "complete/engine.hpp"
#include "detect/detector.hpp"
#include "extract/sensitive.hpp"
#include "frontend/parser.hpp"
#include "support/deadline.hpp"
#include "support/strings.hpp"

namespace fs = std::filesystem;

namespace acscan::report {

namespace {

const char* provenance_name(extract::Provenance p) {
    switch (p) {
        case extract::Provenance::Llm: return "llm";
        case extract::Provenance::Heuristic: return "heuristic";
        case extract::Provenance::ForcedAllFunctions: return "forced";
    }
    return "heuristic";
}

struct FileOutcome {
    std::vector<FileStatus> files;
    std::vector<SnippetRecord> snippets;
    std::vector<ReportFinding> findings;
    std::vector<FailureRecord> failures;
    std::vector<HallucinationRecord> hallucinated;
};

struct SensitiveTarget {
    const sol::ContractDef* contract = nullptr;
    const sol::FunctionDef* def = nullptr;
    sol::FunctionInfo info;
    extract::SensitiveLabel label;
};

struct PipelineContext {
    const PipelineConfig& config;
    llm::LlmGateway* gateway = nullptr;  // null when mode is Off
    complete::CompilerDriver* driver = nullptr;
    bool heuristic_enabled = false;
};

std::string check_descriptor(const detect::AcLocation& loc) {
    switch (loc.scope) {
        case detect::AcLocation::Scope::Self:
            return "self@" + std::to_string(loc.index);
        case detect::AcLocation::Scope::Modifier:
            return "modifier " + loc.where + "@0";
        case detect::AcLocation::Scope::Callee:
            return "callee " + loc.where + "@" + std::to_string(loc.index);
    }
    return "";
}

extract::SensitiveLabel scan_operations(const sol::FunctionDef& def,
                                        const std::vector<extract::HeuristicHit>& hits) {
    for (const auto& hit : hits) {
        if (hit.def == &def) return hit.label;
    }
    return {};
}

// Targets for one parsed file per the configured extraction paths.
std::vector<SensitiveTarget> collect_targets(const PipelineContext& ctx,
                                             const scan::ContractFile& file,
                                             const sol::SourceUnit& unit, FileOutcome& out,
                                             FileStatus& status, const Deadline& deadline) {
    std::vector<SensitiveTarget> targets;
    auto refs = sol::all_function_defs(unit);

    if (ctx.config.scan.mode == scan::ScanMode::SingleContract) {
        for (const auto& ref : refs) {
            if (!ref.def->body || ref.def->fkind == sol::FnKind::Modifier) continue;
            SensitiveTarget t;
            t.contract = ref.contract;
            t.def = ref.def;
            t.info = sol::make_function_info(ref.contract, *ref.def);
            t.label.is_sensitive = true;
            t.label.provenance = extract::Provenance::ForcedAllFunctions;
            targets.push_back(std::move(t));
        }
        return targets;
    }

    auto hits = ctx.heuristic_enabled || ctx.gateway
                    ? extract::locate_sensitive_heuristic(unit, &deadline)
                    : std::vector<extract::HeuristicHit>{};

    std::set<const sol::FunctionDef*> taken;

    auto note = [&status](const std::string& text) {
        if (!status.detail.empty()) status.detail += "; ";
        status.detail += text;
    };

    if (ctx.gateway) {
        auto located = extract::locate_sensitive_llm(file, *ctx.gateway);
        if (!located.gateway_error.empty()) {
            note("llm unavailable: " + located.gateway_error);
        } else if (located.unparsable) {
            std::string head = located.raw_response.substr(0, 120);
            note("llm-response-unparsable: " + strings::trim(head));
        } else {
            auto validated = extract::validate_signatures(located.signatures, unit);
            for (const auto& sig : validated.hallucinated)
                out.hallucinated.push_back({file.path, sig});
            for (const auto& info : validated.validated) {
                // map back to the definition node
                for (const auto& ref : refs) {
                    auto candidate = sol::make_function_info(ref.contract, *ref.def);
                    if (candidate.contract_name != info.contract_name ||
                        candidate.signature() != info.signature())
                        continue;
                    if (!ref.def->body || ref.def->fkind == sol::FnKind::Modifier) break;
                    SensitiveTarget t;
                    t.contract = ref.contract;
                    t.def = ref.def;
                    t.info = candidate;
                    t.label = scan_operations(*ref.def, hits);
                    t.label.provenance = extract::Provenance::Llm;
                    t.label.is_sensitive = !t.label.operations.empty();
                    targets.push_back(std::move(t));
                    taken.insert(ref.def);
                    break;
                }
            }
        }
    }

    if (ctx.heuristic_enabled) {
        for (const auto& hit : hits) {
            if (taken.count(hit.def)) continue;
            SensitiveTarget t;
            t.contract = hit.contract;
            t.def = hit.def;
            t.info = sol::make_function_info(hit.contract, *hit.def);
            t.label = hit.label;
            targets.push_back(std::move(t));
        }
    }
    return targets;
}

detect::LabelMap labels_for(const std::vector<SensitiveTarget>& targets) {
    detect::LabelMap labels;
    for (const auto& t : targets)
        labels[{t.info.contract_name, t.info.signature()}] = t.label;
    return labels;
}

void dump_cfgs(const PipelineContext& ctx, const std::string& origin,
               const detect::Fcg& fcg) {
    if (ctx.config.dump_cfg_dir.empty()) return;
    std::error_code ec;
    fs::create_directories(ctx.config.dump_cfg_dir, ec);
    std::string base = strings::replace_all(strings::normalize_path(origin), "/", "_");
    for (const auto& node : fcg.nodes) {
        if (!node.def || !node.def->body) continue;
        std::string name = base + "." + node.info.contract_name + "." + node.info.name + ".dot";
        std::ofstream out(fs::path(ctx.config.dump_cfg_dir) / name,
                          std::ios::binary | std::ios::trunc);
        out << node.cfg.to_dot(node.info.contract_name + "." + node.info.name);
    }
}

// Detection over an already-compilable source (the original file): one FCG
// carrying every sensitive label, findings anchored at exact source spans.
void detect_in_place(const PipelineContext& ctx, const scan::ContractFile& file,
                     const sol::SourceUnit& unit, const std::vector<SensitiveTarget>& targets,
                     const std::string& compiler_version, const Deadline& deadline,
                     FileOutcome& out) {
    detect::Fcg fcg = detect::build_fcg(unit, labels_for(targets), ctx.config.lower, &deadline);
    dump_cfgs(ctx, file.path, fcg);
    detect::DetectOptions opts{ctx.config.scan.max_call_depth, ctx.config.internal_reachable};
    detect::DetectResult result = detect::detect(fcg, opts, deadline);

    for (const auto& t : targets) {
        SnippetRecord rec;
        rec.origin_path = file.path;
        rec.contract_name = t.info.contract_name;
        rec.function_signature = t.info.signature();
        rec.provenance = provenance_name(t.label.provenance);
        rec.status = to_string(complete::CompletionStatus::Compiled);
        rec.iterations = 0;
        rec.compiler_version = compiler_version;
        for (const auto& a : result.analyses) {
            const auto& node = fcg.nodes[a.node_id];
            if (node.info.contract_name != t.info.contract_name ||
                node.info.signature() != t.info.signature())
                continue;
            rec.risky_actions = static_cast<int>(a.risky.size());
            rec.findings = static_cast<int>(a.findings.size());
        }
        out.snippets.push_back(std::move(rec));
    }

    for (const auto& f : result.findings) {
        ReportFinding rf;
        rf.origin_path = file.path;
        rf.contract_name = f.contract_name;
        rf.function_signature = f.function_signature;
        rf.action = detect::to_string(f.action);
        rf.instruction_index = f.index;
        rf.span_begin = f.span.begin;
        rf.span_end = f.span.end;
        auto lc = strings::line_col_at(file.source, f.span.begin);
        rf.line = lc.line;
        rf.column = lc.column;
        rf.ac_status = f.ac_status == detect::AcStatus::NoCheck ? "no-check" : "check-after-action";
        if (f.check) rf.check_where = check_descriptor(*f.check);
        rf.completion_iterations = 0;
        out.findings.push_back(std::move(rf));
    }
}

// LLM path: per-snippet completion into a standalone contract, then
// detection over the completed source with only that snippet labeled.
void complete_and_detect(const PipelineContext& ctx, const scan::ContractFile& file,
                         const sol::SourceUnit& unit, const SensitiveTarget& target,
                         const Deadline& deadline, FileOutcome& out) {
    sol::ParsedSignature sig;
    sig.name = target.info.name;
    sig.raw = target.info.signature();
    std::vector<std::string> params;
    for (const auto& p : target.info.parameter_types) params.push_back(sol::canonical_type(p));
    sig.parameter_types = std::move(params);

    auto snip = sol::extract_snippet(file.path, file.source, unit, sig);
    SnippetRecord rec;
    rec.origin_path = file.path;
    rec.contract_name = target.info.contract_name;
    rec.function_signature = target.info.signature();
    rec.provenance = provenance_name(target.label.provenance);
    if (!snip.snippet) {
        rec.status = "extract-failed";
        rec.detail = snip.error;
        out.snippets.push_back(std::move(rec));
        return;
    }

    complete::EngineConfig engine_config;
    engine_config.reflection_max_iters = ctx.config.scan.reflection_max_iters;
    engine_config.file_constraint = file.version_constraint;
    complete::CompletedContract completed = complete::complete_until_compilable(
        *snip.snippet, *ctx.gateway, *ctx.driver, engine_config, deadline);

    rec.status = to_string(completed.status);
    rec.iterations = completed.iterations;
    rec.compiler_version = completed.compiler_version;
    rec.detail = completed.failure_detail;

    if (completed.status != complete::CompletionStatus::Compiled) {
        out.snippets.push_back(std::move(rec));
        return;  // Modified and CompileFailed never reach detection
    }

    auto parsed = sol::parse(completed.source);
    if (!parsed.ok()) {
        rec.detail = "completed source not analyzable: " +
                     (parsed.diagnostics.empty() ? "?" : parsed.diagnostics.front().message);
        out.snippets.push_back(std::move(rec));
        return;
    }

    // locate the snippet's function inside the completed source
    detect::LabelMap labels;
    auto completed_infos = sol::list_functions(*parsed.unit);
    const sol::FunctionInfo* located = nullptr;
    for (const auto& info : completed_infos) {
        if (sol::signature_matches(sig, info)) {
            located = &info;
            break;
        }
    }
    if (!located) {
        rec.detail = "completed source does not declare the snippet function";
        out.snippets.push_back(std::move(rec));
        return;
    }
    extract::SensitiveLabel label = target.label;
    labels[{located->contract_name, located->signature()}] = label;

    detect::Fcg fcg = detect::build_fcg(*parsed.unit, labels, ctx.config.lower, &deadline);
    dump_cfgs(ctx, file.path + "#" + target.info.name, fcg);
    detect::DetectOptions opts{ctx.config.scan.max_call_depth, ctx.config.internal_reachable};
    detect::DetectResult result = detect::detect(fcg, opts, deadline);

    for (const auto& a : result.analyses) {
        rec.risky_actions += static_cast<int>(a.risky.size());
        rec.findings += static_cast<int>(a.findings.size());
    }

    auto anchor = strings::line_col_at(file.source, snip.snippet->info.source_span.begin);
    for (const auto& f : result.findings) {
        ReportFinding rf;
        rf.origin_path = file.path;
        rf.contract_name = target.info.contract_name;  // report the origin contract
        rf.function_signature = f.function_signature;
        rf.action = detect::to_string(f.action);
        rf.instruction_index = f.index;
        rf.span_begin = f.span.begin;  // span within the completed source
        rf.span_end = f.span.end;
        rf.line = anchor.line;  // audits land at the function in the real file
        rf.column = anchor.column;
        rf.ac_status = f.ac_status == detect::AcStatus::NoCheck ? "no-check" : "check-after-action";
        if (f.check) rf.check_where = check_descriptor(*f.check);
        rf.completion_iterations = completed.iterations;
        out.findings.push_back(std::move(rf));
    }
    out.snippets.push_back(std::move(rec));
}

FileOutcome process_file(const PipelineContext& ctx, const scan::ContractFile& file) {
    FileOutcome out;
    Deadline deadline(ctx.config.scan.time_limit);

    FileStatus status;
    status.path = file.path;
    if (!file.pragma_error.empty()) status.detail = "malformed pragma: " + file.pragma_error;

    try {
        auto parsed = sol::parse(file.source);
        if (!parsed.ok()) {
            status.state = FileState::ParseFailed;
            if (!parsed.diagnostics.empty()) {
                const auto& d = parsed.diagnostics.front();
                status.detail = "line " + std::to_string(d.line) + ":" +
                                std::to_string(d.column) + ": " + d.message;
            }
            out.files.push_back(std::move(status));
            return out;
        }
        status.state = FileState::Scanned;
        deadline.check();

        auto targets = collect_targets(ctx, file, *parsed.unit, out, status, deadline);

        if (ctx.gateway && ctx.config.scan.mode == scan::ScanMode::Repository) {
            for (const auto& t : targets) complete_and_detect(ctx, file, *parsed.unit, t, deadline, out);
        } else if (!targets.empty()) {
            // already-parsable input: the file itself is the analyzed contract
            complete::CompileResult compiled =
                ctx.driver->compile(file.source, file.version_constraint);
            if (!compiled.success) {
                std::string why = compiled.driver_error.empty()
                                      ? (compiled.diagnostics.empty()
                                             ? "compilation failed"
                                             : compiled.diagnostics.front().message)
                                      : compiled.driver_error;
                for (const auto& t : targets) {
                    SnippetRecord rec;
                    rec.origin_path = file.path;
                    rec.contract_name = t.info.contract_name;
                    rec.function_signature = t.info.signature();
                    rec.provenance = provenance_name(t.label.provenance);
                    rec.status = to_string(complete::CompletionStatus::CompileFailed);
                    rec.detail = why;
                    out.snippets.push_back(std::move(rec));
                }
            } else {
                detect_in_place(ctx, file, *parsed.unit, targets, compiled.compiler_version,
                                deadline, out);
            }
        }
        out.files.push_back(std::move(status));
    } catch (const DeadlineExceeded&) {
        // partial results for this contract are discarded
        FileOutcome timed_out;
        status.state = FileState::Scanned;
        timed_out.files.push_back(std::move(status));
        timed_out.failures.push_back(
            {file.path, "analysis timeout: per-contract budget exceeded"});
        return timed_out;
    }
    return out;
}

std::string mode_name(scan::ScanMode mode) {
    return mode == scan::ScanMode::Repository ? "repository" : "single-contract";
}

std::string llm_mode_name(const llm::GatewayConfig& g) {
    switch (g.mode) {
        case llm::LlmMode::Off: return "off";
        case llm::LlmMode::Live: return "live";
        case llm::LlmMode::Record: return "record";
        case llm::LlmMode::Replay: return "replay";
    }
    return "off";
}

} // namespace

Report run_pipeline(const PipelineConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    Report report;

    bool heuristic_enabled = config.heuristic == HeuristicMode::On ||
                             (config.heuristic == HeuristicMode::Auto &&
                              config.gateway.mode == llm::LlmMode::Off);

    report.config.root = strings::normalize_path(config.scan.root);
    report.config.mode = mode_name(config.scan.mode);
    report.config.excluded_dirs = config.scan.excluded_dirs;
    report.config.max_call_depth = config.scan.max_call_depth;
    report.config.time_limit_ms = config.scan.time_limit.count();
    report.config.reflection_max_iters = config.scan.reflection_max_iters;
    report.config.llm_mode = llm_mode_name(config.gateway);
    report.config.heuristic = heuristic_enabled ? "on" : "off";
    report.config.jobs = config.jobs;

    if (config.scan.max_call_depth < 1) {
        report.fatal_error = "ConfigError: max-call-depth must be >= 1";
        return report;
    }
    if (config.scan.time_limit.count() <= 0) {
        report.fatal_error = "ConfigError: time-limit must be positive";
        return report;
    }

    std::unique_ptr<llm::LlmGateway> gateway;
    if (config.gateway.mode != llm::LlmMode::Off) {
        std::string error;
        gateway = llm::LlmGateway::create(config.gateway, error);
        if (!gateway) {
            report.fatal_error = "ConfigError: " + error;
            return report;
        }
    }

    std::unique_ptr<complete::CompilerDriver> driver;
    if (!config.solc_dir.empty()) {
        driver = complete::make_solc_dir_driver(config.solc_dir);
    } else {
        driver = complete::make_syntax_check_driver();
    }
    report.config.compiler = driver->describe();

    // gather inputs
    std::vector<scan::ContractFile> contracts;
    std::error_code ec;
    if (config.scan.mode == scan::ScanMode::SingleContract &&
        fs::is_regular_file(config.scan.root, ec)) {
        std::ifstream in(config.scan.root, std::ios::binary);
        if (!in) {
            report.fatal_error = "RootNotFound: cannot read " + config.scan.root;
            return report;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        scan::ContractFile cf;
        cf.path = strings::normalize_path(fs::path(config.scan.root).filename().string());
        cf.source = buf.str();
        auto pragma = scan::extract_pragma(cf.source);
        if (pragma.present && pragma.error.empty()) cf.version_constraint = pragma.constraint;
        if (!pragma.error.empty()) cf.pragma_error = pragma.error;
        contracts.push_back(std::move(cf));
    } else {
        scan::ScanOutcome scanned = scan::scan_tree(config.scan);
        if (scanned.root_missing) {
            report.fatal_error = "RootNotFound: " + config.scan.root;
            return report;
        }
        for (const auto& p : scanned.excluded_paths)
            report.files.push_back({p, FileState::Excluded, ""});
        for (const auto& issue : scanned.issues) {
            if (strings::starts_with(issue.message, "malformed pragma"))
                continue;  // carried as the file's own status detail
            report.files.push_back({issue.path, FileState::Unreadable, issue.message});
        }
        contracts = std::move(scanned.contracts);
    }

    auto t1 = std::chrono::steady_clock::now();

    PipelineContext ctx{config, gateway.get(), driver.get(), heuristic_enabled};

    std::vector<FileOutcome> outcomes(contracts.size());
    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, std::max<std::size_t>(contracts.size(), 1));

    if (jobs <= 1 || contracts.size() <= 1) {
        for (std::size_t i = 0; i < contracts.size(); ++i)
            outcomes[i] = process_file(ctx, contracts[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= contracts.size()) break;
                    outcomes[i] = process_file(ctx, contracts[i]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (auto& outcome : outcomes) {
        for (auto& f : outcome.files) report.files.push_back(std::move(f));
        for (auto& s : outcome.snippets) report.snippets.push_back(std::move(s));
        for (auto& f : outcome.findings) report.findings.push_back(std::move(f));
        for (auto& f : outcome.failures) report.failures.push_back(std::move(f));
        for (auto& h : outcome.hallucinated) report.hallucinated.push_back(std::move(h));
    }
    report.canonicalize();

    auto t2 = std::chrono::steady_clock::now();
    auto ms = [](auto d) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    };
    report.timings.push_back({"scan", ms(t1 - t0)});
    report.timings.push_back({"analyze", ms(t2 - t1)});
    report.timings.push_back({"total", ms(t2 - t0)});
    return report;
}

} // namespace acscan::report
