#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/common/diagnostics.hpp"

namespace secrisk {

/// Tables and columns named by one or more SQL statements.
struct SqlKeywords {
    std::set<std::string> tables;
    std::set<std::string> columns;
    /// Columns whose base table is known from the statement syntax.
    std::map<std::string, std::set<std::string>> table_columns;
    std::size_t statements = 0;       // statements recognized
    std::size_t failed_statements = 0;

    void merge(const SqlKeywords& other);
    bool operator==(const SqlKeywords&) const = default;
};

/// Byte that marks an unresolved fragment in query text.
inline constexpr char kSqlHole = '\x01';

/// Parses SELECT / INSERT / REPLACE / UPDATE / DELETE / CREATE TABLE /
/// ALTER TABLE statements in one permissive dialect. Statements are split
/// at top-level semicolons; other statement kinds are ignored. Each HOLE
/// byte becomes a placeholder identifier that never reaches the output. A
/// statement that does not parse contributes nothing and is reported.
SqlKeywords extract_sql_keywords(std::string_view sql_text, Diagnostics& diags, const SourceLocation& where = {});

/// True when the text starts (after whitespace and comments) with a verb
/// this parser handles.
bool starts_with_sql_verb(std::string_view sql_text);

}  // namespace secrisk
