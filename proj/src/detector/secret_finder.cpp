#include "secrisk/detector/secret_finder.hpp"

#include <array>
#include <boost/regex.hpp>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

const boost::regex& quoted_assignment() {
    static const boost::regex re(
        R"re((?:(?<![\w.\]$])(?<q1>['"]?)(?<name>[A-Za-z_$][\w.\-$]*)\k<q1>)re"
        R"re(|\[\s*(?<q2>['"])(?<sname>[A-Za-z_][\w.\-]*)\k<q2>\s*\]))re"
        R"re(\s*(?::\s*[A-Za-z_][\w\[\], .|]*?\s*(?==))?(?:=>|:=|=(?!=)|:)\s*)re"
        R"re((?:(?:[rRbBuU]{1,2})?(?<vq>['"`])(?<value>(?:\\.|(?!\k<vq>)[^\\\n])*)\k<vq>)re"
        R"re(|(?<ivalue>[0-9]+)(?![\w.])))re",
        boost::regex::perl);
    return re;
}

const boost::regex& unquoted_assignment() {
    static const boost::regex re(
        R"re(^\s*(?:export\s+|-\s+)?(?<name>[A-Za-z_][\w.\-]*)\s*(?:=|:)[ \t]*)re"
        R"re((?<value>[^\s'"#;\[{|>&*!][^\s#;]*)\s*(?:[#;].*)?$)re",
        boost::regex::perl);
    return re;
}

// Name tokens split at separators and lower/upper case boundaries.
std::vector<std::string> name_tokens(std::string_view name) {
    std::vector<std::string> tokens;
    std::string cur;
    for (std::size_t i = 0; i < name.size(); ++i) {
        const char c = name[i];
        const bool alnum = std::isalnum(static_cast<unsigned char>(c)) != 0;
        if (!alnum) {
            if (!cur.empty()) tokens.push_back(text::to_lower_ascii(cur));
            cur.clear();
            continue;
        }
        if (!cur.empty() && std::isupper(static_cast<unsigned char>(c)) &&
            std::islower(static_cast<unsigned char>(cur.back()))) {
            tokens.push_back(text::to_lower_ascii(cur));
            cur.clear();
        }
        cur += c;
    }
    if (!cur.empty()) tokens.push_back(text::to_lower_ascii(cur));
    return tokens;
}

bool is_reference_value(std::string_view v) {
    // Interpolations name a secret stored elsewhere; they are not hard-coded.
    if (v.find("${") != std::string_view::npos || v.find("{{") != std::string_view::npos) return true;
    if (v.find("%(") != std::string_view::npos) return true;
    if (v.size() > 1 && v[0] == '$' && (std::isalpha(static_cast<unsigned char>(v[1])) || v[1] == '_')) return true;
    return false;
}

}  // namespace

bool is_password_name(std::string_view name) {
    const std::string lower = text::to_lower_ascii(name);
    for (const char* needle : {"password", "passwd", "pwd", "passphrase", "pswd", "passw"})
        if (lower.find(needle) != std::string::npos) return true;
    for (const auto& t : name_tokens(name))
        if (t == "pass" || t == "pw") return true;
    return false;
}

bool is_secret_name(std::string_view name) {
    if (is_password_name(name)) return true;
    static const std::array<std::string_view, 8> kTokens = {"secret", "token", "key", "credential",
                                                             "credentials", "auth", "apikey", "private"};
    for (const auto& t : name_tokens(name))
        for (const auto k : kTokens)
            if (t == k) return true;
    return false;
}

bool is_config_file(std::string_view path) {
    const auto slash = path.rfind('/');
    const std::string base = text::to_lower_ascii(slash == std::string_view::npos ? path : path.substr(slash + 1));
    if (base == ".env" || text::starts_with_icase(base, ".env.")) return true;
    for (const char* ext : {".env", ".ini", ".cfg", ".conf", ".properties", ".yaml", ".yml", ".toml"})
        if (text::ends_with_icase(base, ext)) return true;
    return false;
}

std::vector<Assignment> find_assignments(std::string_view line, int line_number, bool allow_unquoted) {
    std::vector<Assignment> out;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    boost::cregex_iterator it(begin, end, quoted_assignment()), stop;
    for (; it != stop; ++it) {
        const auto& m = *it;
        const auto& name = m["name"].matched ? m["name"] : m["sname"];
        const auto& value = m["value"].matched ? m["value"] : m["ivalue"];
        Assignment a;
        a.name = name.str();
        a.value = value.str();
        a.line = line_number;
        a.name_column = static_cast<int>(name.first - begin) + 1;
        a.value_column = static_cast<int>(value.first - begin) + 1;
        out.push_back(std::move(a));
    }
    if (out.empty() && allow_unquoted) {
        boost::cmatch m;
        if (boost::regex_match(begin, end, m, unquoted_assignment())) {
            Assignment a;
            a.name = m["name"].str();
            a.value = m["value"].str();
            a.line = line_number;
            a.name_column = static_cast<int>(m["name"].first - begin) + 1;
            a.value_column = static_cast<int>(m["value"].first - begin) + 1;
            out.push_back(std::move(a));
        }
    }
    return out;
}

std::vector<SecretCandidate> find_secrets(std::string_view file_text, const std::string& path,
                                          const SecretFinderOptions& options) {
    std::vector<SecretCandidate> out;
    const bool config = is_config_file(path);
    const auto lines = text::split_lines(file_text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].size() > 4096) continue;
        for (const auto& a : find_assignments(lines[i], static_cast<int>(i) + 1, config)) {
            if (a.value.empty() || is_reference_value(a.value)) continue;
            if (!is_password_name(a.name)) {
                if (!is_secret_name(a.name)) continue;
                if (a.value.size() < options.min_length || text::shannon_entropy(a.value) < options.min_entropy)
                    continue;
            }
            out.push_back({a.value, SourceLocation{path, a.line, a.value_column}, a.name});
        }
    }
    return out;
}

}  // namespace secrisk
