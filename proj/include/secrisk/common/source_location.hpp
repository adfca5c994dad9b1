#pragma once

#include <compare>
#include <string>

namespace secrisk {

/// Position inside a scanned file. `path` is relative to the scan root and
/// always uses forward slashes; line and column are 1-based byte positions.
struct SourceLocation {
    std::string path;
    int line = 1;
    int column = 1;

    auto operator<=>(const SourceLocation&) const = default;
};

std::string to_string(const SourceLocation& loc);

}  // namespace secrisk
