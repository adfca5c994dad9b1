#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace secrisk {

/// One resolution step for a name.
struct DnsAnswer {
    enum class Kind { Address, Cname, NxDomain, Failure };
    Kind kind = Kind::NxDomain;
    std::string value;  // address text, CNAME target, or failure message
};

class DnsProvider {
public:
    virtual ~DnsProvider() = default;
    virtual std::string name() const = 0;
    virtual DnsAnswer query(std::string_view host) const = 0;
};

/// Known active services of an address in a passive scan database.
struct ScanAnswer {
    enum class Kind { Found, NotFound, Failure };
    Kind kind = Kind::NotFound;
    std::set<int> ports;
    std::string message;
};

class ScanDataProvider {
public:
    virtual ~ScanDataProvider() = default;
    virtual std::string name() const = 0;
    virtual ScanAnswer services(std::string_view ip) const = 0;
};

/// Second opinion on hosts the placeholder rules cannot decide. Throws
/// secrisk::Error on a provider failure.
class PlaceholderOracle {
public:
    virtual ~PlaceholderOracle() = default;
    virtual std::string name() const = 0;
    /// nullopt when the answer is neither yes nor no.
    virtual std::optional<bool> is_placeholder(std::string_view host, std::string_view context) const = 0;
};

}  // namespace secrisk
