#include "secrisk/report/providers.hpp"

#include <httplib.h>
#include <json.hpp>

#include "secrisk/common/error.hpp"
#include "secrisk/ease/fixtures.hpp"

namespace secrisk {

CloudTranslator::CloudTranslator(std::string api_key, HttpEndpoint endpoint)
    : key_(std::move(api_key)), endpoint_(std::move(endpoint)) {}

std::optional<std::string> CloudTranslator::translate(std::string_view keyword) const {
    record_network_call();
    httplib::Client client(endpoint_.base_url);
    client.set_connection_timeout(endpoint_.timeout_seconds, 0);
    client.set_read_timeout(endpoint_.timeout_seconds, 0);
    const nlohmann::json body = {{"q", std::string(keyword)}, {"target", "en"}, {"format", "text"}};
    const auto res = client.Post("/language/translate/v2?key=" + key_, body.dump(), "application/json");
    if (!res) throw Error("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error("HTTP " + std::to_string(res->status));
    try {
        const auto doc = nlohmann::json::parse(res->body);
        std::string out = doc.at("data").at("translations").at(0).at("translatedText").get<std::string>();
        for (char& c : out)
            if (c == ' ') c = '_';
        if (out.empty() || out == keyword) return std::nullopt;
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("unexpected response: ") + e.what());
    }
}

std::string ProviderSet::describe() const {
    auto n = [](const auto* p) { return p ? p->name() : std::string("none"); };
    return "dns=" + n(dns) + " scan=" + n(scan) + " placeholder=" + (oracle ? "rules+" + oracle->name() : "rules") +
           " translate=lexicon" + (translator ? "+" + translator->name() : "");
}

ProviderSet make_providers(const ScanConfig& config, Diagnostics& diags) {
    ProviderSet p;
    p.cache = std::make_shared<ProbeCache>(config.cache_ttl_hours * 3600);
    const Credentials& cred = config.credentials;
    auto keep = [&p](auto ptr) {
        p.owned.push_back(ptr);
        return ptr.get();
    };

    if (config.dns_fixture) p.dns = keep(std::make_shared<FixtureDns>(FixtureDns::load(*config.dns_fixture)));
    if (config.scan_fixture) p.scan = keep(std::make_shared<FixtureScan>(FixtureScan::load(*config.scan_fixture)));

    if (config.offline) {
        if (!p.dns) p.dns = keep(std::make_shared<FixtureDns>());
        if (!p.scan) p.scan = keep(std::make_shared<FixtureScan>());
        if (!cred.scan_api_id.empty() || !cred.llm_api_key.empty() || !cred.translate_api_key.empty())
            diags.info("report", "offline mode: live provider credentials ignored; fixtures and rules used");
        return p;
    }

    if (config.probe_cache) p.cache->load(*config.probe_cache);
    if (!p.dns) p.dns = keep(std::make_shared<CachedDns>(*keep(std::make_shared<ResolverDns>()), *p.cache));
    if (!p.scan) {
        if (!cred.scan_api_id.empty() && !cred.scan_api_secret.empty())
            p.scan = keep(std::make_shared<CachedScan>(
                *keep(std::make_shared<CensysScan>(cred.scan_api_id, cred.scan_api_secret)), *p.cache));
        else
            diags.warn("report", "SCAN_API_ID/SCAN_API_SECRET not set: no host is treated as scannable");
    }
    if (!cred.llm_api_key.empty())
        p.oracle = keep(std::make_shared<ChatPlaceholderOracle>(cred.llm_api_key, config.llm_model));
    if (!cred.translate_api_key.empty()) p.translator = keep(std::make_shared<CloudTranslator>(cred.translate_api_key));
    return p;
}

}  // namespace secrisk
