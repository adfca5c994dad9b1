#include "secrisk/report/report_table.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace secrisk {

namespace {

std::string cell(std::string s, std::size_t width) {
    if (s.size() > width) s = s.substr(0, width - 1) + "~";
    return s + std::string(width - s.size() + 2, ' ');
}

}  // namespace

std::string emit_table(const Report& r) {
    std::ostringstream out;
    out << kToolName << " " << r.tool_version << "  providers: " << r.providers << "\n";
    std::vector<std::string> overrides;
    for (const auto& c : r.config)
        if (c.overridden) overrides.push_back(c.key + "=" + c.value);
    if (!overrides.empty()) {
        out << "overrides:";
        for (const auto& o : overrides) out << " " << o;
        out << "\n";
    }
    out << "\n";

    if (r.findings.empty()) {
        out << "no secret-asset pairs found\n";
    } else {
        out << cell("RANK", 4) << cell("SCORE", 5) << cell("VALUE", 11) << cell("EASE", 14) << cell("SECRET", 10)
            << cell("HOST", 28) << "LOCATION\n";
        for (const auto& f : r.findings) {
            const auto& loc = f.pair.secret_location;
            out << cell(std::to_string(f.rank), 4) << cell(std::to_string(f.risk_score), 5)
                << cell(to_string(f.value.level), 11) << cell(to_string(f.ease.level), 14)
                << cell(mask_secret(f.pair.secret), 10) << cell(f.pair.asset.host, 28) << loc.path << ":" << loc.line
                << (f.risk_score >= r.alert_threshold ? "  [ALERT]" : "") << "\n";
        }
    }

    out << "\nfindings: " << r.findings.size() << "  alerts (score >= " << r.alert_threshold
        << "): " << r.alert_count() << "\n";
    out << "value:";
    for (const auto& [level, n] : r.count_by_value()) out << " " << level << "=" << n;
    out << "\nease:";
    for (const auto& [level, n] : r.count_by_ease()) out << " " << level << "=" << n;
    out << "\n";

    const auto warnings = std::count_if(r.diagnostics.begin(), r.diagnostics.end(),
                                        [](const Diagnostic& d) { return d.severity != Severity::Info; });
    if (warnings > 0) {
        out << "\ndiagnostics:\n";
        for (const auto& d : r.diagnostics) {
            if (d.severity == Severity::Info) continue;
            out << "  " << to_string(d.severity) << " [" << d.source << "] " << d.message;
            if (d.location) out << " (" << to_string(*d.location) << ")";
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace secrisk
