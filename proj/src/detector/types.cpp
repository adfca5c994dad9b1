#include "secrisk/detector/types.hpp"

#include <array>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

constexpr std::array<std::pair<DbType, const char*>, 5> kDbNames = {{
    {DbType::MySQL, "MySQL"},
    {DbType::PostgreSQL, "PostgreSQL"},
    {DbType::MongoDB, "MongoDB"},
    {DbType::SQLServer, "SQLServer"},
    {DbType::Unknown, "Unknown"},
}};

constexpr std::array<std::pair<DetectionMethod, const char*>, 3> kMethodNames = {{
    {DetectionMethod::ConnectionString, "ConnectionString"},
    {DetectionMethod::DataFlow, "DataFlow"},
    {DetectionMethod::NeighborHeuristic, "NeighborHeuristic"},
}};

}  // namespace

const char* to_string(DbType t) {
    for (const auto& [k, name] : kDbNames)
        if (k == t) return name;
    return "Unknown";
}

std::optional<DbType> parse_db_type(std::string_view s) {
    for (const auto& [k, name] : kDbNames)
        if (text::iequals(s, name)) return k;
    return std::nullopt;
}

DbType db_type_from_hint(std::string_view hint) {
    const std::string h = text::to_lower_ascii(hint);
    auto has = [&](std::string_view needle) { return h.find(needle) != std::string::npos; };
    if (has("mongo")) return DbType::MongoDB;
    if (has("mysql") || has("mariadb")) return DbType::MySQL;
    if (has("postgres") || has("postgis") || has("psycopg") || has("pgsql")) return DbType::PostgreSQL;
    if (has("mssql") || has("sqlserver") || has("sql_server") || has("sql server") || has("tds"))
        return DbType::SQLServer;
    return DbType::Unknown;
}

std::optional<int> default_port(DbType t) {
    switch (t) {
    case DbType::MySQL: return 3306;
    case DbType::PostgreSQL: return 5432;
    case DbType::MongoDB: return 27017;
    case DbType::SQLServer: return 1433;
    case DbType::Unknown: break;
    }
    return std::nullopt;
}

const char* to_string(DetectionMethod m) {
    for (const auto& [k, name] : kMethodNames)
        if (k == m) return name;
    return "ConnectionString";
}

std::optional<DetectionMethod> parse_detection_method(std::string_view s) {
    for (const auto& [k, name] : kMethodNames)
        if (s == name) return k;
    return std::nullopt;
}

int precedence(DetectionMethod m) {
    switch (m) {
    case DetectionMethod::ConnectionString: return 0;
    case DetectionMethod::DataFlow: return 1;
    case DetectionMethod::NeighborHeuristic: return 2;
    }
    return 3;
}

std::string compute_pair_id(const SecretAssetPair& pair) {
    // Fields are separated by a byte that cannot occur in decoded source text.
    std::string key;
    key += pair.secret_location.path;
    key += '\x1f';
    key += std::to_string(pair.secret_location.line);
    key += '\x1f';
    key += text::hex64(text::fnv1a64(pair.secret));
    key += '\x1f';
    key += pair.asset.host;
    key += '\x1f';
    key += pair.asset.port ? std::to_string(*pair.asset.port) : std::string();
    key += '\x1f';
    key += pair.asset.database_name.value_or("");
    return text::hex64(text::fnv1a64(key));
}

bool finalize_pair(SecretAssetPair& pair) {
    if (pair.secret.empty() || pair.asset.host.empty()) return false;
    if (pair.asset.port && (*pair.asset.port < 1 || *pair.asset.port > 65535)) pair.asset.port.reset();
    if (pair.asset.database_name && pair.asset.database_name->empty()) pair.asset.database_name.reset();
    pair.pair_id = compute_pair_id(pair);
    return true;
}

}  // namespace secrisk
