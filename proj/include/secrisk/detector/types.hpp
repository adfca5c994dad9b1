#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/common/source_location.hpp"

namespace secrisk {

enum class DbType { MySQL, PostgreSQL, MongoDB, SQLServer, Unknown };

const char* to_string(DbType t);
std::optional<DbType> parse_db_type(std::string_view s);

/// Maps a URL scheme, JDBC sub-protocol, driver name, or Django ENGINE
/// value to a database type; Unknown when nothing matches.
DbType db_type_from_hint(std::string_view hint);

/// Listening port a server of this type uses when none is configured.
std::optional<int> default_port(DbType t);

enum class DetectionMethod { ConnectionString, DataFlow, NeighborHeuristic };

const char* to_string(DetectionMethod m);
std::optional<DetectionMethod> parse_detection_method(std::string_view s);

/// Lower value wins when two methods report the same pair.
int precedence(DetectionMethod m);

struct AssetIdentifier {
    std::string host;
    std::optional<int> port;
    std::optional<std::string> database_name;
    DbType db_type = DbType::Unknown;

    bool operator==(const AssetIdentifier&) const = default;
};

/// A driver or settings sink that consumed the pair, by file and index into
/// that file's sink list.
struct SinkRef {
    std::string path;
    int index = -1;

    auto operator<=>(const SinkRef&) const = default;
};

struct SecretAssetPair {
    std::string secret;
    SourceLocation secret_location;
    AssetIdentifier asset;
    SourceLocation asset_location;
    DetectionMethod detection_method = DetectionMethod::ConnectionString;
    std::string pair_id;

    std::optional<std::string> user;
    std::string variable;     // name the secret was assigned to, when known
    std::string origin;       // grammar name, sink callable, or heuristic variable pair
    std::set<SinkRef> sinks;
    std::set<std::string> families;  // sink families whose keywords apply to this pair
};

std::string compute_pair_id(const SecretAssetPair& pair);

/// Recomputes the id and checks the non-empty secret/host invariants.
/// Returns false when the pair must be dropped.
bool finalize_pair(SecretAssetPair& pair);

}  // namespace secrisk
