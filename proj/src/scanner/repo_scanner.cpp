#include "scanner/repo_scanner.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frontend/textscan.hpp"
#include "support/strings.hpp"

namespace fs = std::filesystem;

namespace acscan::scan {

std::vector<std::string> default_excluded_dirs() {
    return {"interface", "interfaces", "library", "libraries", "util",
            "utils",     "mock",       "mocks",   "test",      "tests"};
}

PathClass classify_path(const std::string& rel_path, const std::vector<std::string>& excluded) {
    auto segments = strings::split(strings::normalize_path(rel_path), '/');
    if (segments.size() <= 1) return PathClass::Include;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {  // skip the file name
        for (const auto& name : excluded) {
            if (strings::iequals(segments[i], name)) return PathClass::Exclude;
        }
    }
    return PathClass::Include;
}

PragmaResult extract_pragma(const std::string& source) {
    // Collect code-region text with positions so the directive can be found
    // outside comments and strings.
    std::string code;
    code.reserve(source.size());
    sol::scan_text(source, [&](sol::TextRegion region, std::size_t, char c) {
        code.push_back(region == sol::TextRegion::Code ? c : ' ');
    });

    PragmaResult result;
    std::size_t pos = 0;
    while ((pos = code.find("pragma", pos)) != std::string::npos) {
        // must be a token boundary
        bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(code[pos - 1]));
        std::size_t after = pos + 6;
        bool right_ok = after < code.size() && std::isspace(static_cast<unsigned char>(code[after]));
        if (!left_ok || !right_ok) {
            pos = after;
            continue;
        }
        std::size_t semi = code.find(';', after);
        std::string body = strings::trim(code.substr(after, semi == std::string::npos
                                                                ? std::string::npos
                                                                : semi - after));
        if (strings::starts_with(body, "solidity")) {
            result.present = true;
            std::string range = strings::trim(body.substr(8));
            if (semi == std::string::npos) {
                result.error = "pragma directive not terminated by ';'";
                return result;
            }
            auto constraint = semver::parse_constraint(range);
            if (!constraint) {
                result.error = "unparsable version range: '" + range + "'";
                return result;
            }
            result.constraint = std::move(constraint);
            return result;
        }
        pos = semi == std::string::npos ? code.size() : semi + 1;
    }
    return result;  // no directive
}

ScanOutcome scan_tree(const ScanConfig& config) {
    ScanOutcome out;
    fs::path root(config.root);
    std::error_code ec;
    if (!fs::exists(root, ec) || ec) {
        out.root_missing = true;
        return out;
    }

    struct Entry {
        std::string rel;
        fs::path abs;
    };
    std::vector<Entry> files;

    // Manual recursion so symlinked directories are never followed.
    std::vector<fs::path> stack{root};
    while (!stack.empty()) {
        fs::path dir = stack.back();
        stack.pop_back();
        std::error_code iter_ec;
        fs::directory_iterator it(dir, fs::directory_options::skip_permission_denied, iter_ec);
        if (iter_ec) {
            out.issues.push_back({strings::normalize_path(
                                      fs::relative(dir, root, iter_ec).string()),
                                  "unreadable directory: " + iter_ec.message()});
            continue;
        }
        for (const auto& entry : it) {
            std::error_code entry_ec;
            if (entry.is_symlink(entry_ec)) continue;
            if (entry.is_directory(entry_ec)) {
                stack.push_back(entry.path());
            } else if (entry.is_regular_file(entry_ec)) {
                std::string rel =
                    strings::normalize_path(fs::relative(entry.path(), root, entry_ec).string());
                if (strings::ends_with(rel, ".sol")) files.push_back({rel, entry.path()});
            }
        }
    }

    std::sort(files.begin(), files.end(), [](const Entry& a, const Entry& b) { return a.rel < b.rel; });

    for (const auto& f : files) {
        if (classify_path(f.rel, config.excluded_dirs) == PathClass::Exclude) {
            out.excluded_paths.push_back(f.rel);
            continue;
        }
        std::ifstream in(f.abs, std::ios::binary);
        if (!in) {
            out.issues.push_back({f.rel, "unreadable file"});
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        ContractFile cf;
        cf.path = f.rel;
        cf.source = buf.str();
        auto pragma = extract_pragma(cf.source);
        if (pragma.present && !pragma.error.empty()) {
            // Stays in scope with no version pin; the issue is reported.
            cf.pragma_error = pragma.error;
            out.issues.push_back({f.rel, "malformed pragma: " + pragma.error});
        } else {
            cf.version_constraint = pragma.constraint;
        }
        out.contracts.push_back(std::move(cf));
    }
    return out;
}

std::vector<ContractFile> discover_contracts(const ScanConfig& config) {
    return scan_tree(config).contracts;
}

} // namespace acscan::scan
