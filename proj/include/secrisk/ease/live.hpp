#pragma once

#include <chrono>
#include <cstddef>
#include <mutex>
#include <string>

#include "secrisk/ease/providers.hpp"

namespace secrisk {

/// Process-wide count of network requests attempted by live providers.
std::size_t network_call_count();
void record_network_call();

/// Spaces calls at least `interval` apart across threads.
class RateLimiter {
public:
    explicit RateLimiter(std::chrono::milliseconds interval) : interval_(interval) {}
    void acquire();

private:
    std::chrono::milliseconds interval_;
    std::mutex mu_;
    std::chrono::steady_clock::time_point next_{};
};

/// System resolver through libresolv, one A query then one AAAA query.
class ResolverDns : public DnsProvider {
public:
    std::string name() const override { return "resolver"; }
    DnsAnswer query(std::string_view host) const override;
};

struct HttpEndpoint {
    std::string base_url;  // scheme://host[:port]
    int timeout_seconds = 10;
};

/// Passive scan database client: GET /api/v2/hosts/{ip} with basic auth;
/// 404 means the address is unknown.
class CensysScan : public ScanDataProvider {
public:
    CensysScan(std::string api_id, std::string api_secret,
               HttpEndpoint endpoint = {"https://search.censys.io", 10},
               std::chrono::milliseconds min_interval = std::chrono::milliseconds(500));
    std::string name() const override { return "censys"; }
    ScanAnswer services(std::string_view ip) const override;

private:
    std::string id_, secret_;
    HttpEndpoint endpoint_;
    mutable RateLimiter limiter_;
};

/// Chat-completions client asking the placeholder prompt.
class ChatPlaceholderOracle : public PlaceholderOracle {
public:
    ChatPlaceholderOracle(std::string api_key, std::string model = "gpt-4o-2024-08-06",
                          HttpEndpoint endpoint = {"https://api.openai.com", 30});
    std::string name() const override { return "llm"; }
    std::optional<bool> is_placeholder(std::string_view host, std::string_view context) const override;

private:
    std::string key_, model_;
    HttpEndpoint endpoint_;
    mutable RateLimiter limiter_{std::chrono::milliseconds(200)};
};

}  // namespace secrisk
