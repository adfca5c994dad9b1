#include "secrisk/common/diagnostics.hpp"

#include <algorithm>

namespace secrisk {

std::string to_string(const SourceLocation& loc) {
    return loc.path + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

const char* to_string(Severity s) {
    switch (s) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Error: return "error";
    }
    return "warning";
}

void Diagnostics::add(Severity severity, std::string source, std::string message,
                      std::optional<SourceLocation> location) {
    entries_.push_back({severity, std::move(source), std::move(message), std::move(location)});
}

void Diagnostics::append(const Diagnostics& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool Diagnostics::contains(std::string_view needle) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Diagnostic& d) {
        return d.message.find(needle) != std::string::npos;
    });
}

}  // namespace secrisk
