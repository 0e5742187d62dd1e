#include "complete/compiler.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "frontend/parser.hpp"
#include "support/strings.hpp"

namespace fs = std::filesystem;

namespace acscan::complete {

namespace {

class SyntaxCheckDriver : public CompilerDriver {
public:
    CompileResult compile(const std::string& source,
                          const std::optional<semver::Constraint>&) override {
        CompileResult out;
        out.compiler_version = "builtin-syntax";
        auto parsed = sol::parse(source);
        if (parsed.ok()) {
            out.success = true;
            return out;
        }
        for (const auto& d : parsed.diagnostics) {
            CompileDiag diag;
            diag.severity = DiagSeverity::Error;
            diag.message = d.message;
            diag.location = "line " + std::to_string(d.line) + ":" + std::to_string(d.column);
            out.diagnostics.push_back(std::move(diag));
        }
        return out;
    }

    std::string describe() const override { return "builtin syntax checker"; }
};

class SolcDirDriver : public CompilerDriver {
public:
    explicit SolcDirDriver(std::string directory) : directory_(std::move(directory)) {
        compilers_ = discover_compilers(directory_);
    }

    CompileResult compile(const std::string& source,
                          const std::optional<semver::Constraint>& constraint) override {
        CompileResult out;
        auto chosen = select_compiler(compilers_, constraint);
        if (!chosen) {
            out.driver_error = "CompilerUnavailable: no installed compiler satisfies '" +
                               (constraint ? constraint->text : std::string("<any>")) + "' in " +
                               directory_;
            return out;
        }
        out.compiler_version = chosen->version.str();

        // write source to a scratch file, run the binary, capture output
        fs::path tmp = fs::temp_directory_path() /
                       ("acscan-" + std::to_string(
                                        std::hash<std::string>{}(source + chosen->path) % 1000000) +
                        ".sol");
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) {
                out.driver_error = "CompilerCrash: cannot write scratch file";
                return out;
            }
            f << source;
        }
        std::string command = "'" + chosen->path + "' '" + tmp.string() + "' 2>&1";
        FILE* pipe = popen(command.c_str(), "r");
        if (!pipe) {
            std::error_code ec;
            fs::remove(tmp, ec);
            out.driver_error = "CompilerCrash: cannot spawn compiler";
            return out;
        }
        std::string output;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
        int status = pclose(pipe);
        std::error_code ec;
        fs::remove(tmp, ec);

        out.success = status == 0;
        if (!out.success || !output.empty()) {
            for (const auto& line : strings::split(output, '\n')) {
                if (strings::trim(line).empty()) continue;
                CompileDiag diag;
                bool warning = line.find("Warning") != std::string::npos;
                diag.severity = out.success || warning ? DiagSeverity::Warning
                                                       : DiagSeverity::Error;
                diag.message = line;  // byte-exact per line
                out.diagnostics.push_back(std::move(diag));
            }
            if (!out.success && out.diagnostics.empty()) {
                out.diagnostics.push_back(
                    {DiagSeverity::Error, "compiler exited with status " + std::to_string(status),
                     ""});
            }
        }
        return out;
    }

    std::string describe() const override {
        return "solc directory driver (" + std::to_string(compilers_.size()) + " compilers in " +
               directory_ + ")";
    }

private:
    std::string directory_;
    std::vector<InstalledCompiler> compilers_;
};

} // namespace

std::vector<InstalledCompiler> discover_compilers(const std::string& directory) {
    std::vector<InstalledCompiler> out;
    std::error_code ec;
    fs::directory_iterator it(directory, ec);
    if (ec) return out;
    for (const auto& entry : it) {
        std::error_code entry_ec;
        if (!entry.is_regular_file(entry_ec)) continue;
        std::string name = entry.path().filename().string();
        // accepted shapes: solc-0.8.21, solc-v0.8.21, solc_0.8.21
        if (!strings::starts_with(name, "solc")) continue;
        std::string rest = name.substr(4);
        while (!rest.empty() && (rest.front() == '-' || rest.front() == '_' || rest.front() == 'v'))
            rest.erase(rest.begin());
        auto version = semver::parse_version(rest);
        if (!version) continue;
        out.push_back({*version, entry.path().string()});
    }
    std::sort(out.begin(), out.end(), [](const InstalledCompiler& a, const InstalledCompiler& b) {
        return a.version < b.version;
    });
    return out;
}

std::optional<InstalledCompiler> select_compiler(
    const std::vector<InstalledCompiler>& available,
    const std::optional<semver::Constraint>& constraint) {
    std::optional<InstalledCompiler> best;
    for (const auto& c : available) {
        if (constraint && !constraint->satisfies(c.version)) continue;
        if (!best || c.version > best->version) best = c;
    }
    return best;
}

std::unique_ptr<CompilerDriver> make_syntax_check_driver() {
    return std::make_unique<SyntaxCheckDriver>();
}

std::unique_ptr<CompilerDriver> make_solc_dir_driver(const std::string& directory) {
    return std::make_unique<SolcDirDriver>(directory);
}

} // namespace acscan::complete
