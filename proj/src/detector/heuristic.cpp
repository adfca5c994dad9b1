#include "secrisk/detector/heuristic.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <optional>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

constexpr std::array<std::string_view, 24> kFileExtensions = {
    "py",  "json", "txt", "sql", "log",  "cfg", "yaml", "yml",  "ini", "csv", "html", "js",
    "xml", "md",   "conf", "db", "sqlite", "png", "jpg", "pdf", "gz", "zip", "tar", "pem"};

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_ipv4_literal(std::string_view s) {
    const auto parts = text::split(s, '.', true);
    if (parts.size() != 4) return false;
    return std::all_of(parts.begin(), parts.end(), [](const std::string& p) { return all_digits(p) && p.size() <= 3; });
}

bool is_masked_quad(std::string_view s) {
    const auto parts = text::split(s, '.', true);
    if (parts.size() != 4) return false;
    return std::all_of(parts.begin(), parts.end(), [&](const std::string& p) { return p.size() == 1 && p == parts[0]; });
}

bool is_ipv6_literal(std::string_view s) {
    if (std::count(s.begin(), s.end(), ':') < 2) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) || c == ':' || c == '.'; });
}

bool is_dns_like(std::string_view s) {
    const auto labels = text::split(s, '.', true);
    if (labels.size() < 2) return false;
    for (const auto& l : labels) {
        if (l.empty()) return false;
        for (const char c : l)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
    }
    const std::string& top = labels.back();
    if (top.size() < 2 || !std::all_of(top.begin(), top.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); }))
        return false;
    const std::string lower = text::to_lower_ascii(top);
    return std::find(kFileExtensions.begin(), kFileExtensions.end(), lower) == kFileExtensions.end();
}

std::vector<std::string> lower_tokens(std::string_view name) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool has_token(const std::vector<std::string>& tokens, std::initializer_list<std::string_view> any) {
    for (const auto& t : tokens)
        for (const auto a : any)
            if (t == a) return true;
    return false;
}

struct Neighbor {
    Assignment assignment;
    int distance = 0;
};

// Ordering for "nearest wins": distance, then the line above, then leftmost.
bool nearer(const Neighbor& a, const Neighbor& b, int secret_line) {
    if (a.distance != b.distance) return a.distance < b.distance;
    const bool a_above = a.assignment.line <= secret_line;
    const bool b_above = b.assignment.line <= secret_line;
    if (a_above != b_above) return a_above;
    return a.assignment.name_column < b.assignment.name_column;
}

}  // namespace

std::string_view variable_stem(std::string_view name) {
    const auto dot = name.rfind('.');
    return dot == std::string_view::npos ? name : name.substr(dot + 1);
}

bool is_host_token(std::string_view value) {
    if (value.empty() || value.size() > 253) return false;
    if (value.size() > 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
    if (text::iequals(value, "localhost")) return true;
    if (is_ipv4_literal(value) || is_masked_quad(value) || is_ipv6_literal(value)) return true;
    return is_dns_like(value);
}

std::vector<SecretAssetPair> heuristic_detect(const std::vector<SecretCandidate>& secrets,
                                              const std::vector<std::string>& file_lines,
                                              const HeuristicOptions& options) {
    std::vector<SecretAssetPair> out;
    for (const auto& s : secrets) {
        if (s.variable.empty() || s.secret.empty()) continue;
        const std::string_view secret_stem = variable_stem(s.variable);
        const bool config = is_config_file(s.location.path);
        const int first = std::max(1, s.location.line - options.window);
        const int last = std::min(static_cast<int>(file_lines.size()), s.location.line + options.window);

        std::optional<Neighbor> host, port, db;
        for (int ln = first; ln <= last; ++ln) {
            for (auto& a : find_assignments(file_lines[static_cast<std::size_t>(ln - 1)], ln, config)) {
                if (ln == s.location.line && a.value_column == s.location.column) continue;
                const std::string_view stem = variable_stem(a.name);
                if (text::common_prefix_icase(secret_stem, stem) < options.min_prefix) continue;
                if (is_secret_name(a.name)) continue;
                Neighbor n{a, std::abs(ln - s.location.line)};
                const auto tokens = lower_tokens(stem);
                std::optional<Neighbor>* slot = nullptr;
                if (is_host_token(a.value)) {
                    slot = &host;
                } else if (has_token(tokens, {"port"}) && all_digits(a.value)) {
                    slot = &port;
                } else if (has_token(tokens, {"db", "database", "dbname", "schema"}) &&
                           !has_token(tokens, {"user", "username", "host", "port", "url", "uri"})) {
                    slot = &db;
                }
                if (slot && (!*slot || nearer(n, **slot, s.location.line))) *slot = std::move(n);
            }
        }
        if (!host) continue;

        SecretAssetPair p;
        p.secret = s.secret;
        p.secret_location = s.location;
        p.variable = s.variable;
        std::string h = host->assignment.value;
        std::optional<int> inline_port;
        // host:port in one value
        if (const auto colon = h.rfind(':'); colon != std::string::npos && std::count(h.begin(), h.end(), ':') == 1) {
            int v = 0;
            const std::string_view digits(h.data() + colon + 1, h.size() - colon - 1);
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
            if (ec == std::errc() && ptr == digits.data() + digits.size()) inline_port = v;
            h.resize(colon);
        }
        if (h.size() > 2 && h.front() == '[' && h.back() == ']') h = h.substr(1, h.size() - 2);
        p.asset.host = h;
        p.asset_location = SourceLocation{s.location.path, host->assignment.line, host->assignment.value_column};
        if (inline_port) {
            p.asset.port = inline_port;
        } else if (port) {
            p.asset.port = std::atoi(port->assignment.value.c_str());
        }
        if (db) p.asset.database_name = db->assignment.value;
        p.asset.db_type = db_type_from_hint(std::string(s.variable) + " " + host->assignment.name);
        p.detection_method = DetectionMethod::NeighborHeuristic;
        p.origin = s.variable + "~" + host->assignment.name;
        if (finalize_pair(p)) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace secrisk
