#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/dataflow/def_use.hpp"
#include "secrisk/dataflow/sinks.hpp"

namespace secrisk {

/// One document-sink call on a collection object.
struct NoSqlAccess {
    std::size_t sink_index = 0;  // index into the file's sink list
    int root_call = -1;          // driver call the chain starts from, or -1
    SourceLocation location;
    std::optional<std::string> database;  // unset: the client's default database
    std::optional<std::string> collection;
    std::set<std::string> fields;
    bool dynamic_fields = false;  // a document could not be enumerated
};

struct NoSqlKeywords {
    std::optional<std::string> database;
    std::set<std::string> collections;
    std::set<std::string> fields;

    bool operator==(const NoSqlKeywords&) const = default;
};

/// Walks the receiver chain of every document sink in `sinks`.
std::vector<NoSqlAccess> extract_nosql_accesses(const flow::DefUseGraph& graph,
                                                const std::vector<flow::SinkCall>& sinks, Diagnostics& diags);

/// Union of the accesses rooted at driver call `root_call`.
NoSqlKeywords extract_nosql_keywords(const flow::DefUseGraph& graph, const std::vector<flow::SinkCall>& sinks,
                                     int root_call, Diagnostics& diags);

/// Field keys of a document value. Operator keys (`$set`, `$or`) are looked
/// through; nested closed dicts add `outer.inner` once. Returns false when
/// some part of the document is dynamic.
bool document_fields(const flow::Value& document, std::set<std::string>& fields);

}  // namespace secrisk
