#include "secrisk/ease/analyzer.hpp"

#include "secrisk/common/text.hpp"
#include "secrisk/common/thread_pool.hpp"
#include "secrisk/ease/host.hpp"
#include "secrisk/ease/placeholder.hpp"

namespace secrisk {

const char* to_string(EaseLevel e) {
    switch (e) {
        case EaseLevel::VeryDifficult: return "VERY_DIFFICULT";
        case EaseLevel::Difficult: return "DIFFICULT";
        case EaseLevel::Moderate: return "MODERATE";
        case EaseLevel::Easy: return "EASY";
    }
    return "VERY_DIFFICULT";
}

std::optional<EaseLevel> parse_ease_level(std::string_view s) {
    for (EaseLevel e : {EaseLevel::VeryDifficult, EaseLevel::Difficult, EaseLevel::Moderate, EaseLevel::Easy})
        if (text::iequals(s, to_string(e))) return e;
    return std::nullopt;
}

const char* to_string(EaseMapping m) { return m == EaseMapping::Prose ? "prose" : "table3"; }

std::optional<EaseMapping> parse_ease_mapping(std::string_view s) {
    if (text::iequals(s, "prose")) return EaseMapping::Prose;
    if (text::iequals(s, "table3")) return EaseMapping::Table3;
    return std::nullopt;
}

const char* to_string(HostKind k) { return k == HostKind::DnsName ? "dns" : "ip"; }

int count_checkpoints(const HostEvidence& e) {
    int n = 0;
    for (const auto& c : {e.valid_dns, e.resolvable, e.valid_ip, e.routable, e.scannable, e.db_port_open})
        n += c.value_or(false) ? 1 : 0;
    return n;
}

EaseCategory assign_ease(const HostEvidence& e, EaseMapping mapping) {
    EaseCategory out{EaseLevel::VeryDifficult, e};
    if (e.is_placeholder) return out;
    for (const auto& c : {e.valid_dns, e.resolvable, e.valid_ip})
        if (c == false) return out;
    if (e.routable != true) return out;
    out.level = EaseLevel::Difficult;
    if (e.scannable != true) return out;
    if (e.db_port_open == true) out.level = EaseLevel::Easy;
    else out.level = mapping == EaseMapping::Prose ? EaseLevel::Moderate : EaseLevel::Difficult;
    return out;
}

std::optional<int> target_port(const AssetIdentifier& asset) {
    if (asset.port) return asset.port;
    return default_port(asset.db_type);
}

std::optional<std::string> resolve_dns(std::string_view host, const DnsProvider& dns, Diagnostics& diags,
                                       std::vector<std::string>* chain, int max_depth) {
    std::string name = normalize_host(host);
    for (int depth = 0; depth <= max_depth; ++depth) {
        const DnsAnswer a = dns.query(name);
        switch (a.kind) {
            case DnsAnswer::Kind::Address: return a.value;
            case DnsAnswer::Kind::NxDomain: return std::nullopt;
            case DnsAnswer::Kind::Failure:
                diags.warn("ease", "DNS lookup of '" + name + "' via " + dns.name() + " failed: " + a.value);
                return std::nullopt;
            case DnsAnswer::Kind::Cname:
                name = normalize_host(a.value);
                if (chain) chain->push_back(name);
                break;
        }
    }
    diags.warn("ease", "CNAME chain from '" + std::string(host) + "' exceeds " + std::to_string(max_depth) + " hops");
    return std::nullopt;
}

HostEvidence collect_evidence(const AssetIdentifier& asset, std::string_view context, const EaseProviders& providers,
                              Diagnostics& diags) {
    HostEvidence e;
    e.raw_host = asset.host;
    const std::string host = normalize_host(asset.host);
    e.kind = looks_like_ip(host) ? HostKind::IpLiteral : HostKind::DnsName;
    e.target_port = target_port(asset);

    const PlaceholderOracle* oracle = e.kind == HostKind::DnsName ? providers.oracle : nullptr;
    e.is_placeholder = detect_placeholder(host, context, oracle, diags);
    if (e.is_placeholder) return e;

    std::string ip_text = host;
    if (e.kind == HostKind::DnsName) {
        const bool local = host == "localhost" || text::ends_with_icase(host, ".localhost");
        e.valid_dns = local || validate_dns_format(host);
        if (!*e.valid_dns) {
            e.counter = count_checkpoints(e);
            return e;
        }
        std::optional<std::string> ip;
        if (local) ip = "127.0.0.1";
        else if (providers.dns) {
            Diagnostics local_diags;
            ip = resolve_dns(host, *providers.dns, local_diags, &e.cname_chain);
            e.degraded = !local_diags.empty();
            diags.append(local_diags);
        }
        e.resolvable = ip.has_value();
        if (!ip) {
            e.counter = count_checkpoints(e);
            return e;
        }
        e.resolved_ip = *ip;
        ip_text = *ip;
    }

    const auto ip = parse_ip(ip_text);
    e.valid_ip = ip.has_value();
    if (ip) {
        e.routable = is_routable(*ip);
        if (*e.routable) {
            ScanAnswer answer{ScanAnswer::Kind::NotFound, {}, {}};
            if (providers.scan) answer = providers.scan->services(ip->text());
            if (answer.kind == ScanAnswer::Kind::Failure) {
                e.degraded = true;
                diags.warn("ease", "scan lookup of " + ip->text() + " via " + providers.scan->name() +
                                       " failed: " + answer.message + "; treated as not scannable");
            }
            e.scannable = answer.kind == ScanAnswer::Kind::Found && !answer.ports.empty();
            if (*e.scannable) {
                e.open_ports = answer.ports;
                if (e.target_port) e.db_port_open = e.open_ports.count(*e.target_port) > 0;
                else diags.info("ease", "no database port known for '" + asset.host + "'; port check skipped");
            }
        }
    }
    e.counter = count_checkpoints(e);
    return e;
}

std::vector<EaseCategory> analyze_ease(const std::vector<EaseRequest>& requests, const EaseProviders& providers,
                                       const EaseOptions& options, Diagnostics& diags) {
    std::vector<EaseCategory> out(requests.size());
    std::vector<Diagnostics> local(requests.size());
    parallel_for(requests.size(), options.concurrency == 0 ? 1 : options.concurrency, [&](std::size_t i) {
        const HostEvidence e = collect_evidence(requests[i].asset, requests[i].context, providers, local[i]);
        out[i] = assign_ease(e, options.mapping);
    });
    for (const auto& d : local) diags.append(d);
    return out;
}

}  // namespace secrisk
