#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace secrisk {

/// Upper-case tokens of an identifier, split at separators, camelCase humps
/// and acronym boundaries ("userIDNumber" -> USER, ID, NUMBER).
std::vector<std::string> identifier_tokens(std::string_view keyword);

/// Candidate forms, most specific first: the camel-split form, the unsplit
/// form when it differs, then the form without DB/TBL/COL tokens. A lone
/// ID token is never emitted as a stripped form.
std::vector<std::string> normalize_keyword(std::string_view keyword);

/// True when every token is structural (DB, TBL, COL, ID), so the keyword
/// names no data.
bool is_structural_keyword(std::string_view keyword);

}  // namespace secrisk
