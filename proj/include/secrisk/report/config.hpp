#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "secrisk/category/mapper.hpp"
#include "secrisk/ease/analyzer.hpp"
#include "secrisk/risk/score.hpp"

namespace secrisk {

enum class OutputFormat { Table, Json };

const char* to_string(OutputFormat f);

/// Credentials come from the environment only and are never echoed.
struct Credentials {
    std::string scan_api_id;        // SCAN_API_ID
    std::string scan_api_secret;    // SCAN_API_SECRET
    std::string llm_api_key;        // LLM_API_KEY
    std::string translate_api_key;  // TRANSLATE_API_KEY

    static Credentials from_environment();
};

struct ScanConfig {
    std::filesystem::path root;
    bool offline = false;
    int neighbor_window = 3;
    MatcherCutoffs cutoffs;
    ScaleTables scales;
    EaseMapping ease_mapping = EaseMapping::Prose;
    OutputFormat format = OutputFormat::Table;
    long long alert_threshold = 800;
    bool reveal_secrets = false;
    std::optional<std::filesystem::path> findings;
    std::optional<std::filesystem::path> dns_fixture;
    std::optional<std::filesystem::path> scan_fixture;
    std::optional<std::filesystem::path> probe_cache;
    long long cache_ttl_hours = 24;
    std::size_t probe_concurrency = 8;
    std::size_t workers = 0;  // 0 = hardware concurrency
    std::filesystem::path data_dir;
    std::string llm_model = "gpt-4o-2024-08-06";
    Credentials credentials;

    /// Keys set by a config file or a flag, for the report header.
    std::set<std::string> overridden;
};

/// Location of the bundled data: SECRISK_DATA_DIR from the environment, else
/// the directory fixed at build time.
std::filesystem::path default_data_dir();

/// Sets one key (see config_keys()). Relative paths resolve against `base`.
/// Throws secrisk::Error for an unknown key or a bad value.
void apply_setting(ScanConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base = {});

/// `key = value` lines; `#` starts a comment.
void apply_config_text(ScanConfig& config, std::string_view text, const std::string& source,
                       const std::filesystem::path& base);
void apply_config_file(ScanConfig& config, const std::filesystem::path& path);

/// Throws secrisk::Error when a value is out of range.
void validate_config(const ScanConfig& config);

const std::vector<std::string>& config_keys();

/// Every key with its current value, in config_keys() order.
std::vector<std::pair<std::string, std::string>> config_echo(const ScanConfig& config);

}  // namespace secrisk
