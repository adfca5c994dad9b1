#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace secrisk {

enum class Domain { PII, SPII, Demographic, Credential, GovernmentId, Document, ContextualInformation };
enum class Sensitivity { Low, Moderate, High };

/// Ordinal value-of-asset scale; Unspecified sits below every sensitivity.
enum class ValueLevel { Unspecified, Low, Moderate, High };

const char* to_string(Domain d);
const char* to_string(Sensitivity s);
const char* to_string(ValueLevel v);
std::optional<Domain> parse_domain(std::string_view s);
std::optional<Sensitivity> parse_sensitivity(std::string_view s);
std::optional<ValueLevel> parse_value_level(std::string_view s);
ValueLevel to_value_level(Sensitivity s);

struct DataCategory {
    std::string name;
    Domain domain = Domain::PII;
    Sensitivity sensitivity = Sensitivity::Low;

    bool operator==(const DataCategory&) const = default;
};

class Taxonomy {
public:
    /// `NAME | DOMAIN | SENSITIVITY` per line; `#` starts a comment. Throws
    /// secrisk::Error on a malformed line or a duplicate name.
    static Taxonomy parse(std::string_view text, const std::string& source);
    static Taxonomy load(const std::filesystem::path& path);

    const std::vector<DataCategory>& categories() const { return categories_; }
    const DataCategory* find(std::string_view name) const;
    std::size_t size() const { return categories_.size(); }

private:
    std::vector<DataCategory> categories_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace secrisk
