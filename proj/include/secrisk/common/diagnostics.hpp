#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secrisk/common/source_location.hpp"

namespace secrisk {

enum class Severity { Info, Warning, Error };

const char* to_string(Severity s);

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string source;  // emitting module, e.g. "dataflow"
    std::string message;
    std::optional<SourceLocation> location;

    bool operator==(const Diagnostic&) const = default;
};

/// Append-only list of non-fatal problems. Not synchronized: each worker
/// owns its own instance and results are merged in a fixed order.
class Diagnostics {
public:
    void add(Severity severity, std::string source, std::string message,
             std::optional<SourceLocation> location = std::nullopt);
    void warn(std::string source, std::string message,
              std::optional<SourceLocation> location = std::nullopt) {
        add(Severity::Warning, std::move(source), std::move(message), std::move(location));
    }
    void info(std::string source, std::string message,
              std::optional<SourceLocation> location = std::nullopt) {
        add(Severity::Info, std::move(source), std::move(message), std::move(location));
    }

    void append(const Diagnostics& other);
    const std::vector<Diagnostic>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    bool contains(std::string_view needle) const;

private:
    std::vector<Diagnostic> entries_;
};

}  // namespace secrisk
