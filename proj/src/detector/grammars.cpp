#include "secrisk/detector/grammars.hpp"

#include <algorithm>
#include <boost/regex.hpp>
#include <charconv>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

// ODBC attribute: key=value or key={value}, values stop at ';'.
#define ODBC_KV R"re([A-Za-z][A-Za-z ]*?[ \t]*=[ \t]*(?:\{[^}\n]*\}|[^;'"\n]*))re"
// libpq attribute: key=value or key='value', space separated.
#define PQ_KV R"re([A-Za-z_]+[ \t]*=[ \t]*(?:'[^'\n]*'|[^\s'",();=]+))re"
#define PQ_END R"re((?=[ \t]|$|['"]))re"

const std::vector<ConnectionStringGrammar> kDefaultGrammars = {
    {"url", GrammarGroup::UrlStyle,
     R"re((?<![A-Za-z0-9+.\-])(?<scheme>(?:mysql|mariadb|postgres|postgresql|postgis|pgsql|mongodb|mongodb\+srv|mssql|sqlserver)(?:\+[A-Za-z0-9_]+)?)://)re"
     R"re((?:(?<user>[^:@/\s'"`]*)(?::(?<password>[^\s'"`/]*))?@)?)re"
     R"re((?<host>\[[0-9A-Fa-f:.]+\]|[A-Za-z0-9_.\-]*[A-Za-z0-9_]))re"
     R"re((?::(?<port>[0-9]{1,5}))?(?:,[A-Za-z0-9_.\-:]+)*(?:/(?<db>[A-Za-z0-9_\-$.]*))?)re",
     DbType::Unknown, R"({scheme}://[{user}[:{password}]@]{host}[:{port}][/{db}])"},

    {"jdbc", GrammarGroup::JdbcStyle,
     R"re((?<![A-Za-z0-9_])jdbc:(?<scheme>[a-z0-9]+(?::[a-z0-9]+)?)://)re"
     R"re((?:(?<user>[^:@/\s'"?;]*)(?::(?<password>[^@/\s'"?;]*))?@)?)re"
     R"re((?<host>\[[0-9A-Fa-f:.]+\]|[A-Za-z0-9_.\-]*[A-Za-z0-9_])(?::(?<port>[0-9]{1,5}))?)re"
     R"re((?:/(?<db>[A-Za-z0-9_\-$.]*))?)re"
     R"re((?=(?:[^\s'"]*?[?&;](?i:databaseName|database)=(?<db_param>[^&;\s'"#]+))?))re"
     R"re((?=(?:[^\s'"]*?[?&;](?i:user)=(?<user_param>[^&;\s'"#]+))?))re"
     R"re((?=(?:[^\s'"]*?[?&;](?i:password)=(?<password_param>[^&;\s'"#]+))?))re"
     R"re([^\s'"]*)re",
     DbType::Unknown, R"(jdbc:{scheme}://{host}[:{port}][/{db}][?password={password}][&user={user}])"},

    {"odbc", GrammarGroup::KeyValueStyle,
     R"re((?i)(?<![A-Za-z0-9_;=]))re"
     R"re((?=(?:(?:)re" ODBC_KV R"re(;[ \t]*)*?driver[ \t]*=[ \t]*(?<scheme>\{[^}\n]*\}|[^;'"\n]*[^;'"\s]))?))re"
     R"re((?=(?:)re" ODBC_KV R"re(;[ \t]*)*?(?:server|host|data source|address|addr|network address)[ \t]*=[ \t]*)re"
     R"re((?:tcp:)?(?<host>[^;,'"\s\\{}]+)(?:\\[^;,'"\s]*)?(?:[ \t]*,[ \t]*(?<port>[0-9]{1,5}))?[ \t]*(?:;|$|(?=['"]))))re"
     R"re((?=(?:(?:)re" ODBC_KV R"re(;[ \t]*)*?port[ \t]*=[ \t]*(?<port_key>[0-9]{1,5})[ \t]*(?:;|$|(?=['"])))?))re"
     R"re((?=(?:(?:)re" ODBC_KV R"re(;[ \t]*)*?(?:database|initial catalog|dbname)[ \t]*=[ \t]*(?<db>[^;'"\n{}]*[^;'"\s{}]))?))re"
     R"re((?=(?:(?:)re" ODBC_KV R"re(;[ \t]*)*?(?:uid|user id|user|username|user name)[ \t]*=[ \t]*(?<user>[^;'"\n{}]*[^;'"\s{}]))?))re"
     R"re((?=(?:(?:)re" ODBC_KV R"re(;[ \t]*)*?(?:pwd|password)[ \t]*=[ \t]*)re"
     R"re((?:\{(?<password_braced>[^}\n]*)\}|(?<password>[^;'"\n{}]*[^;'"\s{}])))?))re"
     R"re((?:)re" ODBC_KV R"re(;[ \t]*)+(?:)re" ODBC_KV R"re()?)re",
     DbType::SQLServer,
     R"([Driver={scheme};]Server={host}[,{port}];[Database={db};][Uid={user};][Pwd=\{{password}\};])"},

    {"libpq", GrammarGroup::KeyValueStyle,
     R"re((?<![A-Za-z0-9_=]))re"
     R"re((?=(?:)re" PQ_KV R"re([ \t]+)*?host(?:addr)?[ \t]*=[ \t]*(?<host>[^\s'",();=]+))re" PQ_END R"re())re"
     R"re((?=(?:(?:)re" PQ_KV R"re([ \t]+)*?port[ \t]*=[ \t]*(?<port>[0-9]{1,5}))re" PQ_END R"re()?))re"
     R"re((?=(?:(?:)re" PQ_KV R"re([ \t]+)*?dbname[ \t]*=[ \t]*(?<db>[^\s'",();=]+))re" PQ_END R"re()?))re"
     R"re((?=(?:(?:)re" PQ_KV R"re([ \t]+)*?user[ \t]*=[ \t]*(?<user>[^\s'",();=]+))re" PQ_END R"re()?))re"
     R"re((?=(?:(?:)re" PQ_KV R"re([ \t]+)*?password[ \t]*=[ \t]*(?<password>[^\s'",();=]+))re" PQ_END R"re()?))re"
     PQ_KV R"re((?:[ \t]+)re" PQ_KV R"re()+)re",
     DbType::PostgreSQL, R"(host={host}[ port={port}][ dbname={db}][ user={user}][ password={password}])"},
};

#undef ODBC_KV
#undef PQ_KV
#undef PQ_END

// Cheap per-line precondition so expensive patterns only run where they can match.
std::string_view prefilter(const ConnectionStringGrammar& g) {
    switch (g.group) {
    case GrammarGroup::UrlStyle: return "://";
    case GrammarGroup::JdbcStyle: return "jdbc:";
    case GrammarGroup::KeyValueStyle: return "=";
    }
    return "";
}

constexpr std::size_t kMaxLineBytes = 16 * 1024;

std::string field_of_group(const std::string& group) {
    const auto us = group.find('_');
    return us == std::string::npos ? group : group.substr(0, us);
}

std::vector<std::string> group_names(const std::string& pattern) {
    std::vector<std::string> names;
    for (std::size_t pos = pattern.find("(?<"); pos != std::string::npos; pos = pattern.find("(?<", pos + 3)) {
        const std::size_t start = pos + 3;
        if (start < pattern.size() && (pattern[start] == '=' || pattern[start] == '!')) continue;
        const std::size_t close = pattern.find('>', start);
        if (close == std::string::npos) break;
        names.push_back(pattern.substr(start, close - start));
    }
    return names;
}

std::optional<int> parse_port(std::string_view s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 1 || v > 65535) return std::nullopt;
    return v;
}

}  // namespace

const char* to_string(GrammarGroup g) {
    switch (g) {
    case GrammarGroup::UrlStyle: return "UrlStyle";
    case GrammarGroup::KeyValueStyle: return "KeyValueStyle";
    case GrammarGroup::JdbcStyle: return "JdbcStyle";
    }
    return "UrlStyle";
}

const std::vector<ConnectionStringGrammar>& default_grammars() { return kDefaultGrammars; }

std::optional<std::string> ConnectionMatch::field(const std::string& name) const {
    const auto it = fields.find(name);
    if (it == fields.end()) return std::nullopt;
    return it->second;
}

struct GrammarMatcher::Impl {
    struct Compiled {
        boost::regex re;
        std::vector<std::string> groups;
    };
    std::vector<ConnectionStringGrammar> grammars;
    std::vector<Compiled> compiled;
};

GrammarMatcher::GrammarMatcher(std::vector<ConnectionStringGrammar> grammars) : impl_(std::make_unique<Impl>()) {
    impl_->grammars = std::move(grammars);
    for (const auto& g : impl_->grammars) {
        Impl::Compiled c;
        c.groups = group_names(g.pattern);
        const auto has_field = [&](const std::string& f) {
            return std::any_of(c.groups.begin(), c.groups.end(),
                               [&](const std::string& n) { return field_of_group(n) == f; });
        };
        if (!has_field("password") || !has_field("host"))
            throw Error("grammar '" + g.name + "' must define password and host groups");
        try {
            c.re = boost::regex(g.pattern, boost::regex::perl);
        } catch (const boost::regex_error& e) {
            throw Error("grammar '" + g.name + "' does not compile: " + e.what());
        }
        impl_->compiled.push_back(std::move(c));
    }
}

GrammarMatcher::~GrammarMatcher() = default;
GrammarMatcher::GrammarMatcher(GrammarMatcher&&) noexcept = default;
GrammarMatcher& GrammarMatcher::operator=(GrammarMatcher&&) noexcept = default;

const std::vector<ConnectionStringGrammar>& GrammarMatcher::grammars() const { return impl_->grammars; }

std::vector<ConnectionMatch> GrammarMatcher::match(std::string_view text) const {
    struct Candidate {
        ConnectionMatch m;
        std::size_t grammar_index;
    };
    std::vector<Candidate> candidates;

    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        const std::string_view line = text.substr(line_start, line_end - line_start);
        if (!line.empty() && line.size() <= kMaxLineBytes) {
            for (std::size_t gi = 0; gi < impl_->grammars.size(); ++gi) {
                const auto& g = impl_->grammars[gi];
                const auto& c = impl_->compiled[gi];
                if (line.find(prefilter(g)) == std::string_view::npos) continue;
                try {
                    boost::cregex_iterator it(line.data(), line.data() + line.size(), c.re), end;
                    for (; it != end; ++it) {
                        const auto& mr = *it;
                        if (mr[0].first == mr[0].second) continue;
                        ConnectionMatch m;
                        m.grammar = &g;
                        m.begin = line_start + static_cast<std::size_t>(mr[0].first - line.data());
                        m.end = line_start + static_cast<std::size_t>(mr[0].second - line.data());
                        for (const auto& name : c.groups) {
                            const auto& sub = mr[name];
                            if (!sub.matched || sub.length() == 0) continue;
                            const std::string field = field_of_group(name);
                            if (m.fields.count(field)) continue;
                            m.fields[field] = sub.str();
                            const std::size_t off = line_start + static_cast<std::size_t>(sub.first - line.data());
                            if (field == "host") m.host_offset = off;
                            if (field == "password") m.password_offset = off;
                        }
                        if (!m.fields.count("host")) continue;
                        m.db_type = g.db_type_hint;
                        if (const auto scheme = m.field("scheme")) {
                            const DbType t = db_type_from_hint(*scheme);
                            if (t != DbType::Unknown) m.db_type = t;
                        }
                        candidates.push_back({std::move(m), gi});
                    }
                } catch (const std::runtime_error&) {
                    // Regex complexity limit on a pathological line; the line yields no match.
                }
            }
        }
        line_start = line_end + 1;
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.m.begin != b.m.begin) return a.m.begin < b.m.begin;
        if (a.m.end != b.m.end) return a.m.end > b.m.end;
        return a.grammar_index < b.grammar_index;
    });
    std::vector<ConnectionMatch> out;
    std::size_t covered = 0;
    for (auto& c : candidates) {
        if (!out.empty() && c.m.begin < covered) continue;
        covered = c.m.end;
        out.push_back(std::move(c.m));
    }
    return out;
}

std::string render(const ConnectionStringGrammar& grammar, const std::map<std::string, std::string>& fields) {
    // Each open section collects its text and whether any field inside it was set.
    struct Section {
        std::string text;
        bool any_field = false;
        bool has_value = false;
    };
    std::vector<Section> stack(1);
    const std::string& t = grammar.render_template;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const char c = t[i];
        if (c == '\\' && i + 1 < t.size()) {
            stack.back().text += t[++i];
        } else if (c == '[') {
            stack.emplace_back();
        } else if (c == ']' && stack.size() > 1) {
            Section done = std::move(stack.back());
            stack.pop_back();
            if (!done.any_field || done.has_value) {
                stack.back().text += done.text;
                stack.back().has_value = stack.back().has_value || done.has_value;
            }
            stack.back().any_field = stack.back().any_field || done.any_field;
        } else if (c == '{') {
            const std::size_t close = t.find('}', i);
            if (close == std::string::npos) break;
            const std::string name = t.substr(i + 1, close - i - 1);
            const auto it = fields.find(name);
            stack.back().any_field = true;
            if (it != fields.end() && !it->second.empty()) {
                stack.back().text += it->second;
                stack.back().has_value = true;
            }
            i = close;
        } else {
            stack.back().text += c;
        }
    }
    while (stack.size() > 1) {
        Section done = std::move(stack.back());
        stack.pop_back();
        stack.back().text += done.text;
    }
    return stack.front().text;
}

SourceLocation location_of(std::string_view text, std::size_t offset, const std::string& path) {
    SourceLocation loc{path, 1, 1};
    offset = std::min(offset, text.size());
    const std::size_t last_nl = offset == 0 ? std::string_view::npos : text.rfind('\n', offset - 1);
    loc.line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
    loc.column = static_cast<int>(last_nl == std::string_view::npos ? offset + 1 : offset - last_nl);
    return loc;
}

std::vector<SecretAssetPair> match_connection_strings(std::string_view file_text, const std::string& path,
                                                      const GrammarMatcher& matcher) {
    std::vector<SecretAssetPair> out;
    for (const auto& m : matcher.match(file_text)) {
        const auto password = m.field("password");
        if (!password) continue;
        SecretAssetPair p;
        p.secret = *password;
        p.secret_location = location_of(file_text, m.password_offset, path);
        std::string host = m.fields.at("host");
        if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
        p.asset.host = host;
        if (const auto port = m.field("port")) p.asset.port = parse_port(*port);
        p.asset.database_name = m.field("db");
        p.asset.db_type = m.db_type;
        p.asset_location = location_of(file_text, m.host_offset, path);
        p.detection_method = DetectionMethod::ConnectionString;
        p.user = m.field("user");
        p.origin = m.grammar->name;
        if (p.asset.db_type == DbType::MongoDB) p.families.insert("mongo");
        if (finalize_pair(p)) out.push_back(std::move(p));
    }
    return out;
}

std::vector<SecretAssetPair> match_connection_strings(std::string_view file_text, const std::string& path,
                                                      const std::vector<ConnectionStringGrammar>& grammars) {
    if (grammars.empty()) throw Error("match_connection_strings requires at least one grammar");
    return match_connection_strings(file_text, path, GrammarMatcher(grammars));
}

}  // namespace secrisk
