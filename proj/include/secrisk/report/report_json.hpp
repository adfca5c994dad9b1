#pragma once

#include <string>
#include <string_view>

#include "secrisk/report/pipeline.hpp"

namespace secrisk {

inline constexpr int kReportSchema = 1;

/// Schema-versioned JSON with sorted object keys, two-space indentation and
/// a trailing newline. Secrets are masked unless the report was produced
/// with secrets revealed.
std::string emit_json(const Report& report);

/// Inverse of emit_json; masked secrets stay masked. Throws secrisk::Error
/// on malformed input or an unknown schema version.
Report parse_report_json(std::string_view json_text);

}  // namespace secrisk
