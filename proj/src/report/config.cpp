#include "secrisk/report/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

#ifndef SECRISK_DEFAULT_DATA_DIR
#define SECRISK_DEFAULT_DATA_DIR "data"
#endif

namespace secrisk {

namespace {

std::string env(const char* name) {
    const char* v = std::getenv(name);
    return v ? v : "";
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
    throw Error("config key '" + std::string(key) + "': '" + std::string(value) + "' is not " + expected);
}

long long to_integer(std::string_view key, std::string_view value) {
    long long out = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size()) bad_value(key, value, "an integer");
    return out;
}

double to_real(std::string_view key, std::string_view value) {
    const std::string s(value);
    char* end = nullptr;
    const double out = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) bad_value(key, value, "a number");
    return out;
}

bool to_bool(std::string_view key, std::string_view value) {
    for (const char* t : {"true", "yes", "on", "1"})
        if (text::iequals(value, t)) return true;
    for (const char* f : {"false", "no", "off", "0"})
        if (text::iequals(value, f)) return false;
    bad_value(key, value, "a boolean");
}

std::filesystem::path to_path(std::string_view value, const std::filesystem::path& base) {
    std::filesystem::path p{std::string(value)};
    if (p.is_relative() && !base.empty()) p = base / p;
    return p.lexically_normal();
}

std::string real_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string path_text(const std::optional<std::filesystem::path>& p) { return p ? p->generic_string() : ""; }

}  // namespace

const char* to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "table"; }

Credentials Credentials::from_environment() {
    return {env("SCAN_API_ID"), env("SCAN_API_SECRET"), env("LLM_API_KEY"), env("TRANSLATE_API_KEY")};
}

std::filesystem::path default_data_dir() {
    const std::string from_env = env("SECRISK_DATA_DIR");
    return from_env.empty() ? std::filesystem::path(SECRISK_DEFAULT_DATA_DIR) : std::filesystem::path(from_env);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "offline",          "neighbor_window",      "cutoff.prefix",       "cutoff.substring",
        "cutoff.semantic",  "scale.value.high",     "scale.value.moderate", "scale.value.low",
        "scale.value.unspecified", "scale.ease.easy", "scale.ease.moderate", "scale.ease.difficult",
        "scale.ease.very_difficult", "ease_mapping", "format",             "alert_threshold",
        "reveal_secrets",   "findings",             "dns_fixture",         "scan_fixture",
        "probe_cache",      "cache_ttl_hours",      "probe_concurrency",   "workers",
        "data_dir",         "llm_model",
    };
    return keys;
}

void apply_setting(ScanConfig& c, std::string_view key, std::string_view raw, const std::filesystem::path& base) {
    const std::string_view value = text::trim(raw);
    auto points = [&](int& slot) {
        const long long v = to_integer(key, value);
        if (v < 1 || v > 1000000) bad_value(key, value, "a point value in 1..1000000");
        slot = static_cast<int>(v);
    };
    if (key == "offline") c.offline = to_bool(key, value);
    else if (key == "neighbor_window") c.neighbor_window = static_cast<int>(to_integer(key, value));
    else if (key == "cutoff.prefix") c.cutoffs.prefix = to_real(key, value);
    else if (key == "cutoff.substring") c.cutoffs.substring = to_real(key, value);
    else if (key == "cutoff.semantic") c.cutoffs.semantic = to_real(key, value);
    else if (key == "scale.value.high") points(c.scales.value_high);
    else if (key == "scale.value.moderate") points(c.scales.value_moderate);
    else if (key == "scale.value.low") points(c.scales.value_low);
    else if (key == "scale.value.unspecified") points(c.scales.value_unspecified);
    else if (key == "scale.ease.easy") points(c.scales.ease_easy);
    else if (key == "scale.ease.moderate") points(c.scales.ease_moderate);
    else if (key == "scale.ease.difficult") points(c.scales.ease_difficult);
    else if (key == "scale.ease.very_difficult") points(c.scales.ease_very_difficult);
    else if (key == "ease_mapping") {
        const auto m = parse_ease_mapping(value);
        if (!m) bad_value(key, value, "'prose' or 'table3'");
        c.ease_mapping = *m;
    } else if (key == "format") {
        if (text::iequals(value, "json")) c.format = OutputFormat::Json;
        else if (text::iequals(value, "table")) c.format = OutputFormat::Table;
        else bad_value(key, value, "'json' or 'table'");
    } else if (key == "alert_threshold") c.alert_threshold = to_integer(key, value);
    else if (key == "reveal_secrets") c.reveal_secrets = to_bool(key, value);
    else if (key == "findings") c.findings = to_path(value, base);
    else if (key == "dns_fixture") c.dns_fixture = to_path(value, base);
    else if (key == "scan_fixture") c.scan_fixture = to_path(value, base);
    else if (key == "probe_cache") c.probe_cache = to_path(value, base);
    else if (key == "cache_ttl_hours") c.cache_ttl_hours = to_integer(key, value);
    else if (key == "probe_concurrency") c.probe_concurrency = static_cast<std::size_t>(to_integer(key, value));
    else if (key == "workers") c.workers = static_cast<std::size_t>(to_integer(key, value));
    else if (key == "data_dir") c.data_dir = to_path(value, base);
    else if (key == "llm_model") c.llm_model = std::string(value);
    else throw Error("unknown config key '" + std::string(key) + "'");
    c.overridden.insert(std::string(key));
}

void apply_config_text(ScanConfig& c, std::string_view content, const std::string& source,
                       const std::filesystem::path& base) {
    int line_no = 0;
    for (const auto& raw : text::split_lines(content)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        try {
            apply_setting(c, text::trim(line.substr(0, eq)), line.substr(eq + 1), base);
        } catch (const Error& e) {
            throw Error(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(ScanConfig& c, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(c, ss.str(), path.string(), path.parent_path());
}

void validate_config(const ScanConfig& c) {
    auto cutoff = [](const char* name, double v) {
        if (!(v > 0.0 && v <= 1.0)) throw Error(std::string(name) + " must lie in (0, 1], got " + real_text(v));
    };
    cutoff("cutoff.prefix", c.cutoffs.prefix);
    cutoff("cutoff.substring", c.cutoffs.substring);
    cutoff("cutoff.semantic", c.cutoffs.semantic);
    if (c.neighbor_window < 0) throw Error("neighbor_window must be >= 0");
    if (c.cache_ttl_hours < 0) throw Error("cache_ttl_hours must be >= 0");
    if (c.probe_concurrency == 0) throw Error("probe_concurrency must be >= 1");
    if (c.root.empty()) throw Error("no repository root given");
}

std::vector<std::pair<std::string, std::string>> config_echo(const ScanConfig& c) {
    const auto& s = c.scales;
    return {
        {"offline", c.offline ? "true" : "false"},
        {"neighbor_window", std::to_string(c.neighbor_window)},
        {"cutoff.prefix", real_text(c.cutoffs.prefix)},
        {"cutoff.substring", real_text(c.cutoffs.substring)},
        {"cutoff.semantic", real_text(c.cutoffs.semantic)},
        {"scale.value.high", std::to_string(s.value_high)},
        {"scale.value.moderate", std::to_string(s.value_moderate)},
        {"scale.value.low", std::to_string(s.value_low)},
        {"scale.value.unspecified", std::to_string(s.value_unspecified)},
        {"scale.ease.easy", std::to_string(s.ease_easy)},
        {"scale.ease.moderate", std::to_string(s.ease_moderate)},
        {"scale.ease.difficult", std::to_string(s.ease_difficult)},
        {"scale.ease.very_difficult", std::to_string(s.ease_very_difficult)},
        {"ease_mapping", to_string(c.ease_mapping)},
        {"format", to_string(c.format)},
        {"alert_threshold", std::to_string(c.alert_threshold)},
        {"reveal_secrets", c.reveal_secrets ? "true" : "false"},
        {"findings", path_text(c.findings)},
        {"dns_fixture", path_text(c.dns_fixture)},
        {"scan_fixture", path_text(c.scan_fixture)},
        {"probe_cache", path_text(c.probe_cache)},
        {"cache_ttl_hours", std::to_string(c.cache_ttl_hours)},
        {"probe_concurrency", std::to_string(c.probe_concurrency)},
        {"workers", std::to_string(c.workers)},
        {"data_dir", c.data_dir.generic_string()},
        {"llm_model", c.llm_model},
    };
}

}  // namespace secrisk
