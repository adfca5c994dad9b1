#pragma once

#include <string>

#include "secrisk/report/pipeline.hpp"

namespace secrisk {

/// Fixed-width listing: rank, score, value and ease levels, masked secret,
/// host and secret location, then level counts and diagnostics. Secrets are
/// always masked here.
std::string emit_table(const Report& report);

}  // namespace secrisk
