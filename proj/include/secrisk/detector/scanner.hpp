#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/dataflow/def_use.hpp"
#include "secrisk/dataflow/sinks.hpp"
#include "secrisk/detector/findings_file.hpp"
#include "secrisk/detector/grammars.hpp"
#include "secrisk/detector/heuristic.hpp"
#include "secrisk/detector/secret_finder.hpp"

namespace secrisk {

struct DetectorOptions {
    std::uintmax_t max_file_bytes = 1u << 20;
    HeuristicOptions heuristic;
    SecretFinderOptions secrets;
    /// When set, replaces the built-in secret finder as the heuristic's input.
    std::optional<FindingsByPath> findings;
    std::shared_ptr<const std::vector<flow::DriverSinkSpec>> sinks;
    std::shared_ptr<const GrammarMatcher> grammars;
    std::size_t workers = 0;  // 0 = hardware concurrency
};

struct FileAnalysis {
    std::string path;  // repository-relative, forward slashes
    std::string text;
    bool python = false;
    std::optional<flow::DefUseGraph> graph;
    std::vector<flow::SinkCall> sinks;
    std::vector<std::string> sql_files;  // repository-relative .sql/.ddl files opened here
};

/// Everything later stages need: per-file syntax/data-flow results and the
/// deduplicated pair list.
struct RepositoryScan {
    std::filesystem::path root;
    std::shared_ptr<const std::vector<flow::DriverSinkSpec>> sink_specs;
    std::vector<FileAnalysis> files;  // sorted by path
    std::vector<SecretAssetPair> pairs;
    Diagnostics diagnostics;

    const FileAnalysis* file(const std::string& path) const;
};

bool is_python_path(std::string_view path);

/// Repository-relative regular files under `root` in byte order of their
/// paths. VCS metadata directories and symlinks are skipped.
std::vector<std::string> list_repository_files(const std::filesystem::path& root, Diagnostics& diags);

/// Throws secrisk::Error when `root` is not a readable directory or the
/// options lack a sink inventory.
RepositoryScan analyze_repository(const std::filesystem::path& root, const DetectorOptions& options);

std::vector<SecretAssetPair> scan_repository(const std::filesystem::path& root, const DetectorOptions& options);

}  // namespace secrisk
