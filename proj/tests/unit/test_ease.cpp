#include <gtest/gtest.h>

#include <atomic>

#include "corpus.hpp"
#include "secrisk/common/error.hpp"
#include "secrisk/ease/analyzer.hpp"
#include "secrisk/ease/fixtures.hpp"
#include "secrisk/ease/host.hpp"
#include "secrisk/ease/placeholder.hpp"
#include "secrisk/ease/probe_cache.hpp"

using namespace secrisk;

namespace {

class CountingDns : public DnsProvider {
public:
    explicit CountingDns(const DnsProvider& inner) : inner_(inner) {}
    std::string name() const override { return "counting"; }
    DnsAnswer query(std::string_view host) const override {
        ++calls;
        return inner_.query(host);
    }
    mutable std::atomic<int> calls{0};

private:
    const DnsProvider& inner_;
};

class FailingOracle : public PlaceholderOracle {
public:
    std::string name() const override { return "failing"; }
    std::optional<bool> is_placeholder(std::string_view, std::string_view) const override {
        throw Error("oracle offline");
    }
};

class YesOracle : public PlaceholderOracle {
public:
    std::string name() const override { return "yes"; }
    std::optional<bool> is_placeholder(std::string_view, std::string_view) const override { return true; }
};

AssetIdentifier asset(const std::string& host, DbType type = DbType::MySQL, std::optional<int> port = {}) {
    AssetIdentifier a;
    a.host = host;
    a.db_type = type;
    a.port = port;
    return a;
}

}  // namespace

TEST(Host, DnsFormat) {
    EXPECT_TRUE(validate_dns_format("sh1.cirray.cn"));
    EXPECT_FALSE(validate_dns_format("-bad-.example.com"));
    EXPECT_FALSE(validate_dns_format(std::string(64, 'a') + ".com"));
    EXPECT_TRUE(validate_dns_format(std::string(63, 'a') + ".com"));
}

TEST(Host, IpValidity) {
    EXPECT_TRUE(validate_ip("127.0.0.1"));
    EXPECT_TRUE(validate_ip("192.168.1.1"));
    EXPECT_FALSE(validate_ip("x.x.x.x"));
    EXPECT_FALSE(validate_ip("256.1.1.1"));
    EXPECT_FALSE(validate_ip("01.2.3.4"));
    EXPECT_TRUE(validate_ip("2001:db8::1"));
}

TEST(Host, Routability) {
    EXPECT_FALSE(is_routable(*parse_ip("127.0.0.1")));
    EXPECT_FALSE(is_routable(*parse_ip("192.168.1.1")));
    EXPECT_FALSE(is_routable(*parse_ip("10.1.2.3")));
    EXPECT_FALSE(is_routable(*parse_ip("0.0.0.0")));
    EXPECT_FALSE(is_routable(*parse_ip("203.0.113.5")));
    EXPECT_TRUE(is_routable(*parse_ip("185.60.21.35")));
    EXPECT_FALSE(is_routable(*parse_ip("fe80::1")));
    EXPECT_FALSE(is_routable(*parse_ip("::ffff:10.0.0.1")));
    EXPECT_TRUE(is_routable(*parse_ip("2a00:1450:4001:80b::200e")));
}

TEST(Placeholder, KnownDummyHosts) {
    Diagnostics d;
    EXPECT_TRUE(detect_placeholder("www.example.com", "", nullptr, d));
    EXPECT_FALSE(detect_placeholder("kraken.shore.mbari.org", "", nullptr, d));
    EXPECT_TRUE(detect_placeholder("your-project-name.com", "", nullptr, d));
    EXPECT_EQ(rule_placeholder("x.x.x.x"), PlaceholderVerdict::Placeholder);
    EXPECT_EQ(rule_placeholder("0.0.0.0"), PlaceholderVerdict::Placeholder);
    EXPECT_EQ(rule_placeholder("127.0.0.1"), PlaceholderVerdict::Real);
}

TEST(Placeholder, OracleConsultedOnlyWhenUndecided) {
    Diagnostics d;
    const YesOracle yes;
    EXPECT_TRUE(detect_placeholder("kraken.shore.mbari.org", "", &yes, d));
    EXPECT_FALSE(detect_placeholder("10.0.0.1", "", &yes, d));
}

TEST(Placeholder, OracleFailureFallsBack) {
    Diagnostics d;
    const FailingOracle oracle;
    EXPECT_FALSE(detect_placeholder("kraken.shore.mbari.org", "", &oracle, d));
    EXPECT_FALSE(d.empty());
}

TEST(Placeholder, PromptAndAnswerParsing) {
    const auto p = placeholder_prompt("db.corp.net", "host = \"db.corp.net\"");
    EXPECT_NE(p.user.find("db.corp.net"), std::string::npos);
    EXPECT_DOUBLE_EQ(p.temperature, 0.2);
    EXPECT_EQ(parse_yes_no("YES"), true);
    EXPECT_EQ(parse_yes_no("no."), false);
    EXPECT_EQ(parse_yes_no("maybe"), std::nullopt);
}

TEST(Fixtures, DnsTable) {
    const auto dns = FixtureDns::parse(
        "db.fixture.test 203.0.113.5\na.test CNAME b.test\nb.test 198.51.100.7\nslow.test TIMEOUT\n", "f");
    Diagnostics d;
    EXPECT_EQ(resolve_dns("db.fixture.test", dns, d), "203.0.113.5");
    std::vector<std::string> chain;
    EXPECT_EQ(resolve_dns("a.test", dns, d, &chain), "198.51.100.7");
    EXPECT_EQ(chain, std::vector<std::string>{"b.test"});
    EXPECT_EQ(resolve_dns("missing.test", dns, d), std::nullopt);
    Diagnostics timeout;
    EXPECT_EQ(resolve_dns("slow.test", dns, timeout), std::nullopt);
    EXPECT_FALSE(timeout.empty());
}

TEST(Fixtures, CnameLoopStops) {
    const auto dns = FixtureDns::parse("a.test CNAME b.test\nb.test CNAME a.test\n", "f");
    Diagnostics d;
    EXPECT_EQ(resolve_dns("a.test", dns, d), std::nullopt);
    EXPECT_FALSE(d.empty());
}

TEST(Fixtures, ScanTable) {
    const auto scan = FixtureScan::parse("47.96.1.2 22,3306\n8.8.4.4 -\n1.1.1.1 TIMEOUT\n", "f");
    const auto a = scan.services("47.96.1.2");
    EXPECT_EQ(a.kind, ScanAnswer::Kind::Found);
    EXPECT_EQ(a.ports, (std::set<int>{22, 3306}));
    EXPECT_EQ(scan.services("9.9.9.9").kind, ScanAnswer::Kind::NotFound);
    EXPECT_EQ(scan.services("1.1.1.1").kind, ScanAnswer::Kind::Failure);
}

TEST(Fixtures, MalformedLineRejected) {
    EXPECT_THROW(FixtureScan::parse("47.96.1.2 twenty-two\n", "f"), Error);
}

TEST(Evidence, ScanTimeoutDegrades) {
    const auto dns = FixtureDns::parse("", "f");
    const auto scan = FixtureScan::parse("185.60.21.35 TIMEOUT\n", "f");
    Diagnostics d;
    const auto e = collect_evidence(asset("185.60.21.35"), "", {&dns, &scan, nullptr}, d);
    EXPECT_EQ(e.scannable, false);
    EXPECT_TRUE(e.degraded);
    EXPECT_FALSE(d.empty());
}

TEST(Evidence, PortChecks) {
    const auto dns = FixtureDns::parse("", "f");
    const auto scan = FixtureScan::parse("47.96.1.2 22,3306\n185.60.21.35 80\n", "f");
    Diagnostics d;
    EXPECT_EQ(collect_evidence(asset("47.96.1.2"), "", {&dns, &scan, nullptr}, d).db_port_open, true);
    EXPECT_EQ(collect_evidence(asset("185.60.21.35", DbType::PostgreSQL), "", {&dns, &scan, nullptr}, d).db_port_open,
              false);
    const auto e = collect_evidence(asset("47.96.1.2", DbType::MongoDB, 27018), "", {&dns, &scan, nullptr}, d);
    EXPECT_EQ(e.target_port, 27018);
    EXPECT_EQ(e.db_port_open, false);
}

TEST(Evidence, PlaceholderSetsNoCheckpoint) {
    Diagnostics d;
    const auto e = collect_evidence(asset("www.example.com"), "", {}, d);
    EXPECT_TRUE(e.is_placeholder);
    EXPECT_EQ(count_checkpoints(e), 0);
    EXPECT_FALSE(e.valid_dns.has_value());
}

TEST(Evidence, LocalhostNeedsNoResolver) {
    const auto dns = FixtureDns::parse("", "f");
    const CountingDns counting(dns);
    Diagnostics d;
    const auto e = collect_evidence(asset("localhost"), "", {&counting, nullptr, nullptr}, d);
    EXPECT_EQ(counting.calls.load(), 0);
    EXPECT_EQ(e.resolved_ip, "127.0.0.1");
    EXPECT_EQ(assign_ease(e).level, EaseLevel::VeryDifficult);
}

TEST(AssignEase, TableCases) {
    const auto dns = FixtureDns::parse("", "f");
    const auto scan = FixtureScan::parse("120.77.222.217 22,80\n47.96.1.2 3306\n", "f");
    const EaseProviders p{&dns, &scan, nullptr};
    Diagnostics d;
    EXPECT_EQ(assign_ease(collect_evidence(asset("127.0.0.1"), "", p, d)).level, EaseLevel::VeryDifficult);
    EXPECT_EQ(assign_ease(collect_evidence(asset("185.60.21.35"), "", p, d)).level, EaseLevel::Difficult);
    const auto closed = collect_evidence(asset("120.77.222.217"), "", p, d);
    EXPECT_EQ(assign_ease(closed, EaseMapping::Prose).level, EaseLevel::Moderate);
    EXPECT_EQ(assign_ease(closed, EaseMapping::Table3).level, EaseLevel::Difficult);
    EXPECT_EQ(assign_ease(collect_evidence(asset("47.96.1.2"), "", p, d)).level, EaseLevel::Easy);
}

TEST(AnalyzeEase, RequestOrderPreservedUnderConcurrency) {
    const auto dns = FixtureDns::parse("", "f");
    const auto scan = FixtureScan::parse("47.96.1.2 3306\n", "f");
    std::vector<EaseRequest> reqs;
    for (int i = 0; i < 40; ++i) reqs.push_back({asset(i % 2 ? "47.96.1.2" : "10.0.0.1"), ""});
    Diagnostics d;
    const auto out = analyze_ease(reqs, {&dns, &scan, nullptr}, {EaseMapping::Prose, 8}, d);
    ASSERT_EQ(out.size(), reqs.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        EXPECT_EQ(out[i].level, i % 2 ? EaseLevel::Easy : EaseLevel::VeryDifficult) << i;
}

TEST(ProbeCache, TtlAndFailuresNotStored) {
    std::int64_t now = 1000;
    ProbeCache cache(60, [&] { return now; });
    cache.put_dns("a.test", {DnsAnswer::Kind::Address, "185.60.21.35"});
    cache.put_dns("b.test", {DnsAnswer::Kind::Failure, "timeout"});
    EXPECT_TRUE(cache.dns("a.test").has_value());
    EXPECT_FALSE(cache.dns("b.test").has_value());
    now += 61;
    EXPECT_FALSE(cache.dns("a.test").has_value());
}

TEST(ProbeCache, CachedDnsQueriesOnce) {
    const auto dns = FixtureDns::parse("a.test 185.60.21.35\n", "f");
    const CountingDns counting(dns);
    ProbeCache cache;
    const CachedDns cached(counting, cache);
    cached.query("a.test");
    cached.query("a.test");
    EXPECT_EQ(counting.calls.load(), 1);
}

TEST(ProbeCache, SaveLoadRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "secrisk_probe_cache.json";
    ProbeCache a;
    a.put_dns("a.test", {DnsAnswer::Kind::Address, "185.60.21.35"});
    ScanAnswer s;
    s.kind = ScanAnswer::Kind::Found;
    s.ports = {22, 3306};
    a.put_scan("185.60.21.35", s);
    a.save(path);
    ProbeCache b;
    b.load(path);
    EXPECT_EQ(b.size(), 2u);
    EXPECT_EQ(b.scan("185.60.21.35")->ports, (std::set<int>{22, 3306}));
    std::filesystem::remove(path);
}
