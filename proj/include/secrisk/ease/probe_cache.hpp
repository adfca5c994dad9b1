#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "secrisk/ease/providers.hpp"

namespace secrisk {

/// Per-run memo of DNS and scan answers, optionally persisted between runs.
/// Failures are never stored. Safe under concurrent access.
class ProbeCache {
public:
    using Clock = std::function<std::int64_t()>;  // seconds since the epoch

    explicit ProbeCache(std::int64_t ttl_seconds = 24 * 3600, Clock clock = {});

    std::optional<DnsAnswer> dns(const std::string& host) const;
    void put_dns(const std::string& host, const DnsAnswer& answer);
    std::optional<ScanAnswer> scan(const std::string& ip) const;
    void put_scan(const std::string& ip, const ScanAnswer& answer);

    /// A missing file is an empty cache; expired entries are dropped on load.
    /// Throws secrisk::Error on a malformed file.
    void load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
    std::size_t size() const;

private:
    struct Entry {
        std::int64_t stored_at = 0;
        DnsAnswer dns;
        ScanAnswer scan;
    };
    bool fresh(const Entry& e) const;

    std::int64_t ttl_;
    Clock clock_;
    mutable std::mutex mu_;
    std::map<std::string, Entry> dns_, scan_;
};

class CachedDns : public DnsProvider {
public:
    CachedDns(const DnsProvider& inner, ProbeCache& cache) : inner_(inner), cache_(cache) {}
    std::string name() const override { return inner_.name(); }
    DnsAnswer query(std::string_view host) const override;

private:
    const DnsProvider& inner_;
    ProbeCache& cache_;
};

class CachedScan : public ScanDataProvider {
public:
    CachedScan(const ScanDataProvider& inner, ProbeCache& cache) : inner_(inner), cache_(cache) {}
    std::string name() const override { return inner_.name(); }
    ScanAnswer services(std::string_view ip) const override;

private:
    const ScanDataProvider& inner_;
    ProbeCache& cache_;
};

}  // namespace secrisk
