#pragma once

#include <map>
#include <string>
#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/report/config.hpp"
#include "secrisk/report/providers.hpp"
#include "secrisk/risk/score.hpp"

namespace secrisk {

inline constexpr const char* kToolName = "secrisk";
const char* tool_version();

struct ConfigEntry {
    std::string key;
    std::string value;
    bool overridden = false;

    bool operator==(const ConfigEntry&) const = default;
};

struct Report {
    std::string tool_version;
    std::vector<ConfigEntry> config;
    std::string providers;
    std::vector<RiskFinding> findings;  // rank order
    std::vector<Diagnostic> diagnostics;
    long long alert_threshold = 800;
    bool secrets_revealed = false;

    std::map<std::string, int> count_by_value() const;
    std::map<std::string, int> count_by_ease() const;
    int alert_count() const;
};

/// Detection, keyword extraction, category mapping, ease analysis and
/// scoring over `config.root` with the given providers.
Report run_pipeline(const ScanConfig& config, const ProviderSet& providers);

/// Builds the providers from the config, runs, and persists the probe cache
/// when one is configured. Throws secrisk::Error on fatal config or I/O
/// problems.
Report run(const ScanConfig& config);

/// 2 when any finding reaches the alert threshold, else 0.
int exit_code(const Report& report);

/// First two and last two characters around "**"; shorter secrets become
/// "**" alone.
std::string mask_secret(const std::string& secret);

}  // namespace secrisk
