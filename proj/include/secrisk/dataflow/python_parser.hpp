#pragma once

#include <string>
#include <string_view>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/dataflow/python_ast.hpp"

namespace secrisk::py {

/// Error-tolerant parse. A statement that fails to parse is skipped up to the
/// next logical line and reported; the rest of the file is still parsed.
Module parse_source(std::string_view text, const std::string& path, Diagnostics& diags);

}  // namespace secrisk::py
