#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "support/semver.hpp"

namespace acscan::complete {

enum class DiagSeverity { Error, Warning, Info };

struct CompileDiag {
    DiagSeverity severity = DiagSeverity::Error;
    std::string message;  // preserved verbatim
    std::string location;
};

struct CompileResult {
    bool success = false;
    std::vector<CompileDiag> diagnostics;
    std::string compiler_version;  // version actually used
    std::string driver_error;      // CompilerUnavailable / CompilerCrash detail

    bool has_errors() const {
        for (const auto& d : diagnostics)
            if (d.severity == DiagSeverity::Error) return true;
        return false;
    }
};

// Driver contract: (source text, version constraint) -> CompileResult.
class CompilerDriver {
public:
    virtual ~CompilerDriver() = default;
    virtual CompileResult compile(const std::string& source,
                                  const std::optional<semver::Constraint>& constraint) = 0;
    virtual std::string describe() const = 0;
};

// Backed by the internal parser: success means the source parses. The
// offline default when no compiler directory is configured.
std::unique_ptr<CompilerDriver> make_syntax_check_driver();

// Discovers versioned executables (solc-0.8.21, solc-v0.5.17, ...) in a
// directory and picks the best satisfying version per contract; no binary
// satisfying the constraint is a CompilerUnavailable error.
std::unique_ptr<CompilerDriver> make_solc_dir_driver(const std::string& directory);

struct InstalledCompiler {
    semver::Version version;
    std::string path;
};

std::vector<InstalledCompiler> discover_compilers(const std::string& directory);

std::optional<InstalledCompiler> select_compiler(const std::vector<InstalledCompiler>& available,
                                                 const std::optional<semver::Constraint>& constraint);

} // namespace acscan::complete
