#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "secrisk/detector/secret_finder.hpp"
#include "secrisk/detector/types.hpp"

namespace secrisk {

struct HeuristicOptions {
    int window = 3;
    std::size_t min_prefix = 3;
};

/// True for an IPv4/IPv6 literal, `localhost`, an all-same-character
/// dotted quad such as `x.x.x.x`, or a dotted DNS-like name whose top label
/// is alphabetic and not a common file extension.
bool is_host_token(std::string_view value);

/// Last dotted component of a variable name (`self.db_host` -> `db_host`).
std::string_view variable_stem(std::string_view name);

/// Pairs each secret with the nearest host assignment within `window` lines
/// whose variable shares a prefix of at least `min_prefix` characters with
/// the secret's variable. Port and database assignments sharing the prefix
/// in the same window complete the asset. Equal distances prefer the line
/// above, then the leftmost assignment.
std::vector<SecretAssetPair> heuristic_detect(const std::vector<SecretCandidate>& secrets,
                                              const std::vector<std::string>& file_lines,
                                              const HeuristicOptions& options = {});

}  // namespace secrisk
