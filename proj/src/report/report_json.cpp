#include "secrisk/report/report_json.hpp"

#include <json.hpp>

#include "secrisk/common/error.hpp"

namespace secrisk {

namespace {

using json = nlohmann::json;

template <class E, std::size_t N>
E parse_enum(const std::string& s, const E (&values)[N], const char* what) {
    for (E v : values)
        if (s == to_string(v)) return v;
    throw Error(std::string("report: unknown ") + what + " '" + s + "'");
}

constexpr KeywordSource kSources[] = {KeywordSource::SqlQuery, KeywordSource::SqlFile, KeywordSource::NoSqlChain,
                                      KeywordSource::OrmModel, KeywordSource::AssetIdentifier};
constexpr KeywordKind kKinds[] = {KeywordKind::Database, KeywordKind::Table, KeywordKind::Column};
constexpr Matcher kMatchers[] = {Matcher::None, Matcher::Prefix, Matcher::Substring, Matcher::Semantic};
constexpr Severity kSeverities[] = {Severity::Info, Severity::Warning, Severity::Error};
constexpr HostKind kHostKinds[] = {HostKind::DnsName, HostKind::IpLiteral};
constexpr ValueLevel kValues[] = {ValueLevel::Unspecified, ValueLevel::Low, ValueLevel::Moderate, ValueLevel::High};
constexpr EaseLevel kEases[] = {EaseLevel::VeryDifficult, EaseLevel::Difficult, EaseLevel::Moderate, EaseLevel::Easy};
constexpr DbType kDbTypes[] = {DbType::MySQL, DbType::PostgreSQL, DbType::MongoDB, DbType::SQLServer, DbType::Unknown};
constexpr DetectionMethod kMethods[] = {DetectionMethod::ConnectionString, DetectionMethod::DataFlow,
                                        DetectionMethod::NeighborHeuristic};
constexpr Domain kDomains[] = {Domain::PII,      Domain::SPII,     Domain::Demographic,          Domain::Credential,
                               Domain::GovernmentId, Domain::Document, Domain::ContextualInformation};
constexpr Sensitivity kSensitivities[] = {Sensitivity::Low, Sensitivity::Moderate, Sensitivity::High};

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

json location_json(const SourceLocation& l) { return {{"path", l.path}, {"line", l.line}, {"column", l.column}}; }

SourceLocation location_from(const json& j) {
    return {j.at("path").get<std::string>(), j.at("line").get<int>(), j.at("column").get<int>()};
}

json pair_json(const SecretAssetPair& p, bool reveal) {
    json sinks = json::array();
    for (const auto& s : p.sinks) sinks.push_back({{"path", s.path}, {"index", s.index}});
    return {
        {"pair_id", p.pair_id},
        {"secret", reveal ? p.secret : mask_secret(p.secret)},
        {"secret_location", location_json(p.secret_location)},
        {"asset",
         {{"host", p.asset.host},
          {"port", optional_json(p.asset.port)},
          {"database", optional_json(p.asset.database_name)},
          {"db_type", to_string(p.asset.db_type)}}},
        {"asset_location", location_json(p.asset_location)},
        {"detection_method", to_string(p.detection_method)},
        {"user", optional_json(p.user)},
        {"variable", p.variable},
        {"origin", p.origin},
        {"sinks", sinks},
        {"families", p.families},
    };
}

SecretAssetPair pair_from(const json& j) {
    SecretAssetPair p;
    p.pair_id = j.at("pair_id").get<std::string>();
    p.secret = j.at("secret").get<std::string>();
    p.secret_location = location_from(j.at("secret_location"));
    const json& a = j.at("asset");
    p.asset.host = a.at("host").get<std::string>();
    p.asset.port = optional_from<int>(a.at("port"));
    p.asset.database_name = optional_from<std::string>(a.at("database"));
    p.asset.db_type = parse_enum(a.at("db_type").get<std::string>(), kDbTypes, "database type");
    p.asset_location = location_from(j.at("asset_location"));
    p.detection_method = parse_enum(j.at("detection_method").get<std::string>(), kMethods, "detection method");
    p.user = optional_from<std::string>(j.at("user"));
    p.variable = j.at("variable").get<std::string>();
    p.origin = j.at("origin").get<std::string>();
    for (const auto& s : j.at("sinks")) p.sinks.insert({s.at("path").get<std::string>(), s.at("index").get<int>()});
    p.families = j.at("families").get<std::set<std::string>>();
    return p;
}

json keywords_json(const DatabaseKeywordSet& k) {
    json out = json::object();
    for (KeywordKind kind : kKinds) {
        json list = json::array();
        for (const auto& [key, entry] : k.entries(kind)) {
            json sources = json::array();
            for (KeywordSource s : entry.sources) sources.push_back(to_string(s));
            list.push_back({{"text", entry.text}, {"sources", sources}});
        }
        out[to_string(kind)] = list;
    }
    return out;
}

DatabaseKeywordSet keywords_from(const json& j, const std::string& pair_id) {
    DatabaseKeywordSet k;
    k.pair_id = pair_id;
    for (KeywordKind kind : kKinds)
        for (const auto& e : j.at(to_string(kind)))
            for (const auto& s : e.at("sources"))
                k.add(kind, e.at("text").get<std::string>(), parse_enum(s.get<std::string>(), kSources, "source"));
    return k;
}

json mapping_json(const CategoryMapping& m) {
    json category = nullptr;
    if (m.category)
        category = {{"name", m.category->name},
                    {"domain", to_string(m.category->domain)},
                    {"sensitivity", to_string(m.category->sensitivity)}};
    return {{"keyword", m.keyword},         {"normalized", m.normalized},
            {"category", category},         {"matcher", to_string(m.matcher)},
            {"score", m.score},             {"translation", optional_json(m.translation)},
            {"level", to_string(m.level())}};
}

CategoryMapping mapping_from(const json& j) {
    CategoryMapping m;
    m.keyword = j.at("keyword").get<std::string>();
    m.normalized = j.at("normalized").get<std::string>();
    if (const json& c = j.at("category"); !c.is_null())
        m.category = DataCategory{c.at("name").get<std::string>(),
                                  parse_enum(c.at("domain").get<std::string>(), kDomains, "domain"),
                                  parse_enum(c.at("sensitivity").get<std::string>(), kSensitivities, "sensitivity")};
    m.matcher = parse_enum(j.at("matcher").get<std::string>(), kMatchers, "matcher");
    m.score = j.at("score").get<double>();
    m.translation = optional_from<std::string>(j.at("translation"));
    return m;
}

json evidence_json(const HostEvidence& e) {
    return {
        {"raw_host", e.raw_host},
        {"kind", to_string(e.kind)},
        {"is_placeholder", e.is_placeholder},
        {"valid_dns", optional_json(e.valid_dns)},
        {"resolvable", optional_json(e.resolvable)},
        {"cname_chain", e.cname_chain},
        {"resolved_ip", optional_json(e.resolved_ip)},
        {"valid_ip", optional_json(e.valid_ip)},
        {"routable", optional_json(e.routable)},
        {"scannable", optional_json(e.scannable)},
        {"open_ports", e.open_ports},
        {"target_port", optional_json(e.target_port)},
        {"db_port_open", optional_json(e.db_port_open)},
        {"degraded", e.degraded},
        {"counter", e.counter},
    };
}

HostEvidence evidence_from(const json& j) {
    HostEvidence e;
    e.raw_host = j.at("raw_host").get<std::string>();
    e.kind = parse_enum(j.at("kind").get<std::string>(), kHostKinds, "host kind");
    e.is_placeholder = j.at("is_placeholder").get<bool>();
    e.valid_dns = optional_from<bool>(j.at("valid_dns"));
    e.resolvable = optional_from<bool>(j.at("resolvable"));
    e.cname_chain = j.at("cname_chain").get<std::vector<std::string>>();
    e.resolved_ip = optional_from<std::string>(j.at("resolved_ip"));
    e.valid_ip = optional_from<bool>(j.at("valid_ip"));
    e.routable = optional_from<bool>(j.at("routable"));
    e.scannable = optional_from<bool>(j.at("scannable"));
    e.open_ports = j.at("open_ports").get<std::set<int>>();
    e.target_port = optional_from<int>(j.at("target_port"));
    e.db_port_open = optional_from<bool>(j.at("db_port_open"));
    e.degraded = j.at("degraded").get<bool>();
    e.counter = j.at("counter").get<int>();
    return e;
}

json finding_json(const RiskFinding& f, bool reveal) {
    json evidence = json::array();
    for (const auto& m : f.value.evidence) evidence.push_back(mapping_json(m));
    return {
        {"rank", f.rank},
        {"risk_score", f.risk_score},
        {"value_points", f.value_points},
        {"ease_points", f.ease_points},
        {"pair", pair_json(f.pair, reveal)},
        {"keywords", keywords_json(f.keywords)},
        {"value", {{"level", to_string(f.value.level)}, {"evidence", evidence}}},
        {"ease", {{"level", to_string(f.ease.level)}, {"evidence", evidence_json(f.ease.evidence)}}},
    };
}

RiskFinding finding_from(const json& j) {
    RiskFinding f;
    f.rank = j.at("rank").get<int>();
    f.risk_score = j.at("risk_score").get<long long>();
    f.value_points = j.at("value_points").get<int>();
    f.ease_points = j.at("ease_points").get<int>();
    f.pair = pair_from(j.at("pair"));
    f.keywords = keywords_from(j.at("keywords"), f.pair.pair_id);
    f.value.level = parse_enum(j.at("value").at("level").get<std::string>(), kValues, "value level");
    for (const auto& m : j.at("value").at("evidence")) f.value.evidence.push_back(mapping_from(m));
    f.ease.level = parse_enum(j.at("ease").at("level").get<std::string>(), kEases, "ease level");
    f.ease.evidence = evidence_from(j.at("ease").at("evidence"));
    return f;
}

}  // namespace

std::string emit_json(const Report& r) {
    json config = json::object();
    for (const auto& c : r.config) config[c.key] = {{"value", c.value}, {"overridden", c.overridden}};
    json findings = json::array();
    for (const auto& f : r.findings) findings.push_back(finding_json(f, r.secrets_revealed));
    json diagnostics = json::array();
    for (const auto& d : r.diagnostics)
        diagnostics.push_back({{"severity", to_string(d.severity)},
                               {"source", d.source},
                               {"message", d.message},
                               {"location", d.location ? location_json(*d.location) : json(nullptr)}});
    const json doc = {
        {"schema", kReportSchema},
        {"tool", {{"name", kToolName}, {"version", r.tool_version}}},
        {"config", config},
        {"providers", r.providers},
        {"secrets_revealed", r.secrets_revealed},
        {"alert_threshold", r.alert_threshold},
        {"summary",
         {{"findings", r.findings.size()},
          {"alerts", r.alert_count()},
          {"by_value", r.count_by_value()},
          {"by_ease", r.count_by_ease()}}},
        {"findings", findings},
        {"diagnostics", diagnostics},
    };
    return doc.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

Report parse_report_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        if (doc.at("schema").get<int>() != kReportSchema)
            throw Error("report: unsupported schema " + doc.at("schema").dump());
        Report r;
        r.tool_version = doc.at("tool").at("version").get<std::string>();
        for (const auto& [key, c] : doc.at("config").items())
            r.config.push_back({key, c.at("value").get<std::string>(), c.at("overridden").get<bool>()});
        r.providers = doc.at("providers").get<std::string>();
        r.secrets_revealed = doc.at("secrets_revealed").get<bool>();
        r.alert_threshold = doc.at("alert_threshold").get<long long>();
        for (const auto& f : doc.at("findings")) r.findings.push_back(finding_from(f));
        for (const auto& d : doc.at("diagnostics")) {
            Diagnostic diag;
            diag.severity = parse_enum(d.at("severity").get<std::string>(), kSeverities, "severity");
            diag.source = d.at("source").get<std::string>();
            diag.message = d.at("message").get<std::string>();
            if (!d.at("location").is_null()) diag.location = location_from(d.at("location"));
            r.diagnostics.push_back(std::move(diag));
        }
        return r;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
}

}  // namespace secrisk
