#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "secrisk/report/pipeline.hpp"

namespace secrisk::testkit {

std::filesystem::path data_dir();
std::filesystem::path corpus_dir();
std::filesystem::path oracle_dir();

std::string read_text(const std::filesystem::path& path);

/// One planted pair per mini-repo: `key = value` lines in expected.txt,
/// list values comma-separated.
struct CorpusCase {
    std::string name;
    std::filesystem::path dir;
    std::string secret;
    std::string host;
    std::set<std::string> databases, tables, columns;  // lower case
    std::string ease;
};

/// Every case directory holding an expected.txt, by name.
std::vector<CorpusCase> load_corpus();

/// Offline config over `dir/repo` with the case's dns.txt and scan.txt.
ScanConfig corpus_config(const std::filesystem::path& dir);

/// Empty when the report holds exactly the planted pair and keyword set with
/// the expected ease level; otherwise the first mismatch.
std::string check_case(const CorpusCase& c, const Report& report);

std::set<std::string> lower_names(const DatabaseKeywordSet& keywords, KeywordKind kind);

}  // namespace secrisk::testkit
