#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "secrisk/dataflow/sinks.hpp"

namespace secrisk::flow {

/// Query text of an execute-style sink. Fragments keep evaluation order,
/// which equals source order for straight-line construction.
ResolvedArgument trace_query_fragments(const DefUseGraph& graph, const SinkCall& call);

/// Constant .sql/.ddl paths passed to file-open calls. Each path is resolved
/// against the scanned file's directory, then the repository root; results
/// are repository-relative with forward slashes.
std::vector<std::string> find_file_open_sql(const DefUseGraph& graph, const std::filesystem::path& repo_root,
                                            const std::string& file_relative_path);

}  // namespace secrisk::flow
