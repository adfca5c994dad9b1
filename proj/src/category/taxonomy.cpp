#include "secrisk/category/taxonomy.hpp"

#include <fstream>
#include <sstream>

#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"

namespace secrisk {

const char* to_string(Domain d) {
    switch (d) {
        case Domain::PII: return "PII";
        case Domain::SPII: return "SPII";
        case Domain::Demographic: return "DEMOGRAPHIC";
        case Domain::Credential: return "CREDENTIAL";
        case Domain::GovernmentId: return "GOVERNMENT_ID";
        case Domain::Document: return "DOCUMENT";
        case Domain::ContextualInformation: return "CONTEXTUAL_INFORMATION";
    }
    return "?";
}

const char* to_string(Sensitivity s) {
    switch (s) {
        case Sensitivity::Low: return "LOW";
        case Sensitivity::Moderate: return "MODERATE";
        case Sensitivity::High: return "HIGH";
    }
    return "?";
}

const char* to_string(ValueLevel v) {
    switch (v) {
        case ValueLevel::Unspecified: return "UNSPECIFIED";
        case ValueLevel::Low: return "LOW";
        case ValueLevel::Moderate: return "MODERATE";
        case ValueLevel::High: return "HIGH";
    }
    return "?";
}

std::optional<Domain> parse_domain(std::string_view s) {
    for (Domain d : {Domain::PII, Domain::SPII, Domain::Demographic, Domain::Credential, Domain::GovernmentId,
                     Domain::Document, Domain::ContextualInformation})
        if (text::iequals(s, to_string(d))) return d;
    return std::nullopt;
}

std::optional<Sensitivity> parse_sensitivity(std::string_view s) {
    for (Sensitivity v : {Sensitivity::Low, Sensitivity::Moderate, Sensitivity::High})
        if (text::iequals(s, to_string(v))) return v;
    return std::nullopt;
}

std::optional<ValueLevel> parse_value_level(std::string_view s) {
    for (ValueLevel v : {ValueLevel::Unspecified, ValueLevel::Low, ValueLevel::Moderate, ValueLevel::High})
        if (text::iequals(s, to_string(v))) return v;
    return std::nullopt;
}

ValueLevel to_value_level(Sensitivity s) {
    switch (s) {
        case Sensitivity::Low: return ValueLevel::Low;
        case Sensitivity::Moderate: return ValueLevel::Moderate;
        case Sensitivity::High: return ValueLevel::High;
    }
    return ValueLevel::Unspecified;
}

Taxonomy Taxonomy::parse(std::string_view content, const std::string& source) {
    Taxonomy t;
    int line_no = 0;
    for (const auto& raw : text::split_lines(content)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;
        const auto where = source + ":" + std::to_string(line_no);
        const auto fields = text::split(line, '|', true);
        if (fields.size() != 3) throw Error(where + ": expected NAME | DOMAIN | SENSITIVITY");
        DataCategory c;
        c.name = std::string(text::trim(fields[0]));
        const auto domain = parse_domain(text::trim(fields[1]));
        const auto sensitivity = parse_sensitivity(text::trim(fields[2]));
        if (c.name.empty()) throw Error(where + ": empty category name");
        if (!domain) throw Error(where + ": unknown domain '" + std::string(text::trim(fields[1])) + "'");
        if (!sensitivity) throw Error(where + ": unknown sensitivity '" + std::string(text::trim(fields[2])) + "'");
        c.domain = *domain;
        c.sensitivity = *sensitivity;
        if (!t.index_.emplace(c.name, t.categories_.size()).second) throw Error(where + ": duplicate category " + c.name);
        t.categories_.push_back(std::move(c));
    }
    if (t.categories_.empty()) throw Error(source + ": no categories");
    return t;
}

Taxonomy Taxonomy::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read taxonomy " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

const DataCategory* Taxonomy::find(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : &categories_[it->second];
}

}  // namespace secrisk
