#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "secrisk/ease/providers.hpp"

namespace secrisk {

/// Offline DNS table. Lines: `name ip`, `name CNAME target`,
/// `name NXDOMAIN` or `name TIMEOUT`; `#` starts a comment. Names missing
/// from the table are NXDOMAIN.
class FixtureDns : public DnsProvider {
public:
    static FixtureDns parse(std::string_view text, const std::string& source);
    static FixtureDns load(const std::filesystem::path& path);

    std::string name() const override { return "fixture-dns"; }
    DnsAnswer query(std::string_view host) const override;
    std::size_t size() const { return answers_.size(); }

private:
    std::map<std::string, DnsAnswer> answers_;
};

/// Offline scan database. Lines: `ip port,port,...`, `ip -` for an address
/// known without active services, or `ip TIMEOUT`. Addresses missing from
/// the table are NotFound.
class FixtureScan : public ScanDataProvider {
public:
    static FixtureScan parse(std::string_view text, const std::string& source);
    static FixtureScan load(const std::filesystem::path& path);

    std::string name() const override { return "fixture-scan"; }
    ScanAnswer services(std::string_view ip) const override;
    std::size_t size() const { return answers_.size(); }

private:
    std::map<std::string, ScanAnswer> answers_;
};

}  // namespace secrisk
