#include "secrisk/ease/probe_cache.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "secrisk/common/error.hpp"

namespace secrisk {

namespace {

using json = nlohmann::json;

const char* dns_kind(DnsAnswer::Kind k) {
    switch (k) {
        case DnsAnswer::Kind::Address: return "address";
        case DnsAnswer::Kind::Cname: return "cname";
        case DnsAnswer::Kind::NxDomain: return "nxdomain";
        case DnsAnswer::Kind::Failure: return "failure";
    }
    return "failure";
}

DnsAnswer::Kind parse_dns_kind(const std::string& s) {
    if (s == "address") return DnsAnswer::Kind::Address;
    if (s == "cname") return DnsAnswer::Kind::Cname;
    if (s == "nxdomain") return DnsAnswer::Kind::NxDomain;
    throw Error("probe cache: unknown DNS answer kind '" + s + "'");
}

}  // namespace

ProbeCache::ProbeCache(std::int64_t ttl_seconds, Clock clock) : ttl_(ttl_seconds), clock_(std::move(clock)) {
    if (!clock_)
        clock_ = [] {
            return std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                .count();
        };
}

bool ProbeCache::fresh(const Entry& e) const { return clock_() - e.stored_at < ttl_; }

std::optional<DnsAnswer> ProbeCache::dns(const std::string& host) const {
    std::lock_guard lock(mu_);
    const auto it = dns_.find(host);
    if (it == dns_.end() || !fresh(it->second)) return std::nullopt;
    return it->second.dns;
}

void ProbeCache::put_dns(const std::string& host, const DnsAnswer& answer) {
    if (answer.kind == DnsAnswer::Kind::Failure) return;
    std::lock_guard lock(mu_);
    dns_[host] = Entry{clock_(), answer, {}};
}

std::optional<ScanAnswer> ProbeCache::scan(const std::string& ip) const {
    std::lock_guard lock(mu_);
    const auto it = scan_.find(ip);
    if (it == scan_.end() || !fresh(it->second)) return std::nullopt;
    return it->second.scan;
}

void ProbeCache::put_scan(const std::string& ip, const ScanAnswer& answer) {
    if (answer.kind == ScanAnswer::Kind::Failure) return;
    std::lock_guard lock(mu_);
    scan_[ip] = Entry{clock_(), {}, answer};
}

std::size_t ProbeCache::size() const {
    std::lock_guard lock(mu_);
    return dns_.size() + scan_.size();
}

void ProbeCache::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return;
    json doc;
    try {
        doc = json::parse(in);
        std::lock_guard lock(mu_);
        for (const auto& e : doc.at("dns")) {
            Entry entry{e.at("stored_at").get<std::int64_t>(),
                        {parse_dns_kind(e.at("kind").get<std::string>()), e.at("value").get<std::string>()},
                        {}};
            if (fresh(entry)) dns_[e.at("host").get<std::string>()] = entry;
        }
        for (const auto& e : doc.at("scan")) {
            Entry entry{e.at("stored_at").get<std::int64_t>(), {}, {}};
            entry.scan.kind = e.at("found").get<bool>() ? ScanAnswer::Kind::Found : ScanAnswer::Kind::NotFound;
            entry.scan.ports = e.at("ports").get<std::set<int>>();
            if (fresh(entry)) scan_[e.at("ip").get<std::string>()] = entry;
        }
    } catch (const json::exception& e) {
        throw Error("malformed probe cache " + path.string() + ": " + e.what());
    }
}

void ProbeCache::save(const std::filesystem::path& path) const {
    json doc = {{"version", 1}, {"dns", json::array()}, {"scan", json::array()}};
    {
        std::lock_guard lock(mu_);
        for (const auto& [host, e] : dns_)
            doc["dns"].push_back(
                {{"host", host}, {"stored_at", e.stored_at}, {"kind", dns_kind(e.dns.kind)}, {"value", e.dns.value}});
        for (const auto& [ip, e] : scan_)
            doc["scan"].push_back({{"ip", ip},
                                   {"stored_at", e.stored_at},
                                   {"found", e.scan.kind == ScanAnswer::Kind::Found},
                                   {"ports", e.scan.ports}});
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << doc.dump(2) << '\n';
    if (!out) throw Error("cannot write probe cache " + path.string());
}

DnsAnswer CachedDns::query(std::string_view host) const {
    const std::string key(host);
    if (auto hit = cache_.dns(key)) return *hit;
    DnsAnswer a = inner_.query(host);
    cache_.put_dns(key, a);
    return a;
}

ScanAnswer CachedScan::services(std::string_view ip) const {
    const std::string key(ip);
    if (auto hit = cache_.scan(key)) return *hit;
    ScanAnswer a = inner_.services(ip);
    cache_.put_scan(key, a);
    return a;
}

}  // namespace secrisk
