#pragma once

#include <vector>

#include "secrisk/detector/types.hpp"

namespace secrisk {

/// Collapses pairs with equal (secret, host, port, database, file). The
/// record found by the highest-precedence method survives and absorbs the
/// sink links and families of the records it replaces. Output is ordered by
/// path, line, column, then asset.
std::vector<SecretAssetPair> dedup_pairs(std::vector<SecretAssetPair> pairs);

/// Total order used for pair lists.
bool pair_less(const SecretAssetPair& a, const SecretAssetPair& b);

}  // namespace secrisk
