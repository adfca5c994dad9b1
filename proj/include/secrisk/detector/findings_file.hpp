#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/detector/secret_finder.hpp"

namespace secrisk {

/// External secret findings, keyed by repository-relative path.
///
///   {"schema": 1, "findings": [{"path": "app/db.py", "line": 12,
///                               "secret": "hunter2", "variable": "db_password"}]}
///
/// `variable` is optional. Throws secrisk::Error on unreadable files,
/// malformed JSON, an unsupported schema, or an invalid record.
using FindingsByPath = std::map<std::string, std::vector<SecretCandidate>>;

FindingsByPath parse_findings(std::string_view json_text, const std::string& source);
FindingsByPath load_findings(const std::filesystem::path& path);

/// Fills the column and, when missing, the variable of each finding from the
/// file text; findings whose line does not contain the secret keep column 1.
void complete_findings(std::vector<SecretCandidate>& findings, std::string_view file_text);

}  // namespace secrisk
