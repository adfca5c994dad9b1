#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/detector/scanner.hpp"
#include "secrisk/detector/types.hpp"

namespace secrisk {

enum class KeywordSource { SqlQuery, SqlFile, NoSqlChain, OrmModel, AssetIdentifier };
enum class KeywordKind { Database, Table, Column };

const char* to_string(KeywordSource s);
const char* to_string(KeywordKind k);

struct KeywordEntry {
    std::string text;  // first casing seen
    std::set<KeywordSource> sources;

    bool operator==(const KeywordEntry&) const = default;
};

/// Database, table and column names for one pair. Keys are compared
/// case-insensitively; the first casing added is kept for display.
class DatabaseKeywordSet {
public:
    std::string pair_id;

    /// Trims and strips quotes; returns false for an empty keyword.
    bool add(KeywordKind kind, std::string_view keyword, KeywordSource source);
    void merge(const DatabaseKeywordSet& other);

    const std::map<std::string, KeywordEntry>& entries(KeywordKind kind) const;
    std::vector<std::string> names(KeywordKind kind) const;
    /// Every keyword once per kind, databases first.
    std::vector<std::pair<KeywordKind, const KeywordEntry*>> all() const;
    std::set<KeywordSource> sources_of(KeywordKind kind, std::string_view keyword) const;
    bool contains(KeywordKind kind, std::string_view keyword) const;
    bool empty() const;
    std::size_t size() const;

    bool operator==(const DatabaseKeywordSet&) const = default;

private:
    std::map<std::string, KeywordEntry>& slot(KeywordKind kind);
    std::map<std::string, KeywordEntry> databases_, tables_, columns_;
};

/// Keywords from one extraction route.
struct Extraction {
    KeywordSource source = KeywordSource::SqlQuery;
    std::optional<std::string> database;
    std::set<std::string> tables;
    std::set<std::string> columns;
};

DatabaseKeywordSet assemble_keyword_set(const SecretAssetPair& pair, const std::vector<Extraction>& extractions);

/// One keyword set per pair of `scan.pairs`, in the same order. Queries go to
/// the pairs linked to their driver call, else to the pairs of the same file,
/// else to every pair of a matching family. Opened .sql files go to the pairs
/// whose sink is in the opening file, else the pairs located there. ORM models
/// go to every pair of the same family.
std::vector<DatabaseKeywordSet> extract_keywords(const RepositoryScan& scan, Diagnostics& diags,
                                                 std::size_t workers = 0);

}  // namespace secrisk
