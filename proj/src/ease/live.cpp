#include "secrisk/ease/live.hpp"

#include <arpa/inet.h>
#include <arpa/nameser.h>
#include <netdb.h>
#include <netinet/in.h>
#include <resolv.h>

#include <atomic>
#include <cstring>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "secrisk/common/error.hpp"
#include "secrisk/ease/placeholder.hpp"

namespace secrisk {

namespace {

std::atomic<std::size_t> g_network_calls{0};

struct ResolverState {
    struct __res_state st {};
    bool ready = false;
    ResolverState() { ready = res_ninit(&st) == 0; }
    ~ResolverState() {
        if (ready) res_nclose(&st);
    }
};

enum class Lookup { Answer, NoData, NxDomain, Failure };

Lookup lookup(const std::string& host, int type, DnsAnswer& out) {
    thread_local ResolverState rs;
    if (!rs.ready) {
        out = {DnsAnswer::Kind::Failure, "resolver initialization failed"};
        return Lookup::Failure;
    }
    record_network_call();
    std::vector<unsigned char> buf(4096);
    const int len = res_nquery(&rs.st, host.c_str(), ns_c_in, type, buf.data(), static_cast<int>(buf.size()));
    if (len < 0) {
        switch (rs.st.res_h_errno) {
            case HOST_NOT_FOUND: return Lookup::NxDomain;
            case NO_DATA: return Lookup::NoData;
            default:
                out = {DnsAnswer::Kind::Failure, "resolver error " + std::to_string(rs.st.res_h_errno)};
                return Lookup::Failure;
        }
    }
    ns_msg msg;
    if (ns_initparse(buf.data(), len, &msg) < 0) {
        out = {DnsAnswer::Kind::Failure, "unparsable DNS response"};
        return Lookup::Failure;
    }
    std::string cname;
    for (int i = 0; i < ns_msg_count(msg, ns_s_an); ++i) {
        ns_rr rr;
        if (ns_parserr(&msg, ns_s_an, i, &rr) < 0) continue;
        char text[NS_MAXDNAME] = {};
        if (ns_rr_type(rr) == ns_t_a && ns_rr_rdlen(rr) == 4) {
            inet_ntop(AF_INET, ns_rr_rdata(rr), text, sizeof text);
            out = {DnsAnswer::Kind::Address, text};
            return Lookup::Answer;
        }
        if (ns_rr_type(rr) == ns_t_aaaa && ns_rr_rdlen(rr) == 16) {
            inet_ntop(AF_INET6, ns_rr_rdata(rr), text, sizeof text);
            out = {DnsAnswer::Kind::Address, text};
            return Lookup::Answer;
        }
        if (ns_rr_type(rr) == ns_t_cname &&
            dn_expand(ns_msg_base(msg), ns_msg_end(msg), ns_rr_rdata(rr), text, sizeof text) >= 0)
            cname = text;
    }
    if (!cname.empty()) {
        out = {DnsAnswer::Kind::Cname, cname};
        return Lookup::Answer;
    }
    return Lookup::NoData;
}

httplib::Client make_client(const HttpEndpoint& ep) {
    httplib::Client client(ep.base_url);
    client.set_connection_timeout(ep.timeout_seconds, 0);
    client.set_read_timeout(ep.timeout_seconds, 0);
    client.set_write_timeout(ep.timeout_seconds, 0);
    return client;
}

}  // namespace

std::size_t network_call_count() { return g_network_calls.load(); }
void record_network_call() { ++g_network_calls; }

void RateLimiter::acquire() {
    std::chrono::steady_clock::time_point slot;
    {
        std::lock_guard lock(mu_);
        const auto now = std::chrono::steady_clock::now();
        slot = std::max(now, next_);
        next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
}

DnsAnswer ResolverDns::query(std::string_view host_view) const {
    const std::string host(host_view);
    DnsAnswer out;
    const Lookup a = lookup(host, ns_t_a, out);
    if (a == Lookup::Answer || a == Lookup::Failure) return out;
    if (a == Lookup::NxDomain) return {DnsAnswer::Kind::NxDomain, {}};
    const Lookup aaaa = lookup(host, ns_t_aaaa, out);
    if (aaaa == Lookup::Answer || aaaa == Lookup::Failure) return out;
    return {DnsAnswer::Kind::NxDomain, {}};
}

CensysScan::CensysScan(std::string api_id, std::string api_secret, HttpEndpoint endpoint,
                       std::chrono::milliseconds min_interval)
    : id_(std::move(api_id)), secret_(std::move(api_secret)), endpoint_(std::move(endpoint)), limiter_(min_interval) {}

ScanAnswer CensysScan::services(std::string_view ip) const {
    limiter_.acquire();
    record_network_call();
    auto client = make_client(endpoint_);
    client.set_basic_auth(id_, secret_);
    const auto res = client.Get("/api/v2/hosts/" + std::string(ip));
    if (!res) return {ScanAnswer::Kind::Failure, {}, "request failed: " + httplib::to_string(res.error())};
    if (res->status == 404) return {ScanAnswer::Kind::NotFound, {}, {}};
    if (res->status != 200) return {ScanAnswer::Kind::Failure, {}, "HTTP " + std::to_string(res->status)};
    try {
        const auto doc = nlohmann::json::parse(res->body);
        ScanAnswer a{ScanAnswer::Kind::Found, {}, {}};
        for (const auto& svc : doc.at("result").value("services", nlohmann::json::array()))
            if (svc.contains("port")) a.ports.insert(svc.at("port").get<int>());
        return a;
    } catch (const nlohmann::json::exception& e) {
        return {ScanAnswer::Kind::Failure, {}, std::string("unexpected response: ") + e.what()};
    }
}

ChatPlaceholderOracle::ChatPlaceholderOracle(std::string api_key, std::string model, HttpEndpoint endpoint)
    : key_(std::move(api_key)), model_(std::move(model)), endpoint_(std::move(endpoint)) {}

std::optional<bool> ChatPlaceholderOracle::is_placeholder(std::string_view host, std::string_view context) const {
    const ChatPrompt prompt = placeholder_prompt(host, context);
    const nlohmann::json body = {
        {"model", model_},
        {"temperature", prompt.temperature},
        {"messages",
         {{{"role", "system"}, {"content", prompt.system}}, {{"role", "user"}, {"content", prompt.user}}}},
    };
    limiter_.acquire();
    record_network_call();
    auto client = make_client(endpoint_);
    client.set_bearer_token_auth(key_);
    const auto res = client.Post("/v1/chat/completions", body.dump(), "application/json");
    if (!res) throw Error("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error("HTTP " + std::to_string(res->status));
    try {
        const auto doc = nlohmann::json::parse(res->body);
        return parse_yes_no(doc.at("choices").at(0).at("message").at("content").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("unexpected response: ") + e.what());
    }
}

}  // namespace secrisk
