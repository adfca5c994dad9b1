#include "secrisk/detector/dataflow_pairs.hpp"

#include <charconv>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

using flow::Role;

std::optional<int> parse_port(std::string_view s) {
    s = text::trim(s);
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 1 || v > 65535) return std::nullopt;
    return v;
}

struct Field {
    std::string value;
    SourceLocation location;
};

std::optional<Field> discrete(const flow::SinkCall& sc, Role role) {
    const auto it = sc.bindings.find(role);
    if (it == sc.bindings.end() || !it->second.fully_resolved || !it->second.value) return std::nullopt;
    SourceLocation loc = sc.location;
    if (!it->second.fragments.empty()) loc = it->second.fragments.front().location;
    return Field{*it->second.value, loc};
}

bool has_hole(const std::string& s) { return s.find(kHoleSentinel) != std::string::npos; }

}  // namespace

std::string text_with_holes(const std::vector<flow::Fragment>& fragments) {
    std::string out;
    for (const auto& f : fragments) {
        if (f.text)
            out += *f.text;
        else
            out += kHoleSentinel;
    }
    return out;
}

SourceLocation fragment_location(const std::vector<flow::Fragment>& fragments, std::size_t offset) {
    std::size_t pos = 0;
    for (const auto& f : fragments) {
        const std::size_t len = f.text ? f.text->size() : 1;
        if (offset < pos + len) return f.location;
        pos += len;
    }
    return fragments.empty() ? SourceLocation{} : fragments.back().location;
}

std::vector<SecretAssetPair> pairs_from_sinks(const flow::DefUseGraph& graph, const std::vector<flow::SinkCall>& sinks,
                                              const GrammarMatcher& matcher, Diagnostics& diags) {
    std::vector<SecretAssetPair> out;
    for (std::size_t i = 0; i < sinks.size(); ++i) {
        const auto& sc = sinks[i];
        if (sc.spec->is_query()) continue;

        std::optional<Field> host = discrete(sc, Role::Host);
        std::optional<Field> password = discrete(sc, Role::Password);
        std::optional<Field> port = discrete(sc, Role::Port);
        std::optional<Field> user = discrete(sc, Role::User);
        std::optional<Field> database = discrete(sc, Role::Database);
        DbType type = DbType::Unknown;

        // A URI passed where a host is expected (pymongo accepts both) is parsed like a connection string.
        std::optional<flow::ResolvedArgument> cs;
        if (auto it = sc.bindings.find(Role::ConnectionString); it != sc.bindings.end()) cs = it->second;
        if (host && host->value.find("://") != std::string::npos) {
            cs = sc.bindings.at(Role::Host);
            host.reset();
        }
        if (cs) {
            const std::string t = text_with_holes(cs->fragments);
            for (const auto& m : matcher.match(t)) {
                auto take = [&](const char* name, std::optional<Field>& slot, std::size_t offset) {
                    const auto v = m.field(name);
                    if (!v || has_hole(*v)) return;
                    Field f{*v, fragment_location(cs->fragments, offset)};
                    if (slot) {
                        if (slot->value != f.value)
                            diags.warn("detector",
                                       std::string("connection string ") + name + " '" +
                                           (std::string(name) == "password" ? "***" : f.value) +
                                           "' conflicts with the discrete argument; using the discrete value",
                                       sc.location);
                        return;
                    }
                    slot = std::move(f);
                };
                std::string h = m.fields.at("host");
                if (h.size() > 2 && h.front() == '[' && h.back() == ']') h = h.substr(1, h.size() - 2);
                if (!has_hole(h)) {
                    if (!host) host = Field{h, fragment_location(cs->fragments, m.host_offset)};
                    else if (host->value != h)
                        diags.warn("detector", "connection string host '" + h +
                                                   "' conflicts with the discrete argument; using the discrete value",
                                   sc.location);
                }
                take("password", password, m.password_offset);
                take("port", port, m.host_offset);
                take("user", user, m.begin);
                take("db", database, m.begin);
                type = m.db_type;
                break;
            }
        }

        if (const auto db = parse_db_type(sc.spec->option("db"))) type = *db;
        if (const std::string key = sc.spec->option("dbkey"); !key.empty()) {
            if (auto it = sc.extras.find(key); it != sc.extras.end()) {
                const DbType t = db_type_from_hint(it->second);
                if (t != DbType::Unknown) type = t;
            }
        }

        if (!password || !host) {
            if (auto it = sc.bindings.find(Role::Password); it != sc.bindings.end() && !it->second.fully_resolved)
                diags.info("detector", std::string("password argument of ") + sc.spec->callable +
                                           " is not statically resolved", sc.location);
            continue;
        }

        SecretAssetPair p;
        p.secret = password->value;
        p.secret_location = password->location;
        p.asset.host = host->value;
        p.asset_location = host->location;
        if (port) p.asset.port = parse_port(port->value);
        if (database) p.asset.database_name = database->value;
        p.asset.db_type = type;
        if (user) p.user = user->value;
        p.detection_method = DetectionMethod::DataFlow;
        p.origin = sc.spec->callable;
        p.sinks.insert(SinkRef{graph.path, static_cast<int>(i)});
        if (const std::string family = sc.spec->option("family"); !family.empty()) p.families.insert(family);
        if (type == DbType::MongoDB) p.families.insert("mongo");
        if (finalize_pair(p)) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace secrisk
