#pragma once

#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/dataflow/sinks.hpp"
#include "secrisk/detector/grammars.hpp"
#include "secrisk/detector/types.hpp"

namespace secrisk {

/// Pairs from driver and settings sinks. Discrete host/password/port/user/
/// database arguments win over fields parsed from a connection_string
/// argument; a disagreement between the two is reported as a warning. Only
/// fully resolved values are used, so a HOLE never becomes part of a pair.
std::vector<SecretAssetPair> pairs_from_sinks(const flow::DefUseGraph& graph, const std::vector<flow::SinkCall>& sinks,
                                              const GrammarMatcher& matcher, Diagnostics& diags);

/// Text of a fragment list with every HOLE replaced by one sentinel byte.
std::string text_with_holes(const std::vector<flow::Fragment>& fragments);
inline constexpr char kHoleSentinel = '\x01';

/// Source location of byte `offset` of `text_with_holes(fragments)`.
SourceLocation fragment_location(const std::vector<flow::Fragment>& fragments, std::size_t offset);

}  // namespace secrisk
