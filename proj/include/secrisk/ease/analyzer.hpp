#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/common/diagnostics.hpp"
#include "secrisk/detector/types.hpp"
#include "secrisk/ease/providers.hpp"

namespace secrisk {

enum class EaseLevel { VeryDifficult, Difficult, Moderate, Easy };

const char* to_string(EaseLevel e);
std::optional<EaseLevel> parse_ease_level(std::string_view s);

/// How a scannable address with its database port closed is classified.
/// Prose: MODERATE. Table3: DIFFICULT.
enum class EaseMapping { Prose, Table3 };

const char* to_string(EaseMapping m);
std::optional<EaseMapping> parse_ease_mapping(std::string_view s);

enum class HostKind { DnsName, IpLiteral };

const char* to_string(HostKind k);

/// Checkpoints in pipeline order: valid_dns, resolvable (DNS names only),
/// valid_ip, routable, scannable, db_port_open. A checkpoint is set only when
/// every earlier applicable one is true, and a placeholder sets none.
struct HostEvidence {
    std::string raw_host;
    HostKind kind = HostKind::DnsName;
    bool is_placeholder = false;
    std::optional<bool> valid_dns;
    std::optional<bool> resolvable;
    std::vector<std::string> cname_chain;
    std::optional<std::string> resolved_ip;
    std::optional<bool> valid_ip;
    std::optional<bool> routable;
    std::optional<bool> scannable;
    std::set<int> open_ports;
    std::optional<int> target_port;
    std::optional<bool> db_port_open;
    bool degraded = false;  // a provider failed and its checkpoint was taken as false
    int counter = 0;

    bool operator==(const HostEvidence&) const = default;
};

/// Number of true checkpoints.
int count_checkpoints(const HostEvidence& e);

struct EaseCategory {
    EaseLevel level = EaseLevel::VeryDifficult;
    HostEvidence evidence;
};

EaseCategory assign_ease(const HostEvidence& evidence, EaseMapping mapping = EaseMapping::Prose);

/// Explicit asset port, else the default port of its database type.
std::optional<int> target_port(const AssetIdentifier& asset);

/// Follows CNAME answers up to `max_depth` hops. Failures are recorded.
std::optional<std::string> resolve_dns(std::string_view host, const DnsProvider& dns, Diagnostics& diags,
                                       std::vector<std::string>* chain = nullptr, int max_depth = 8);

struct EaseProviders {
    const DnsProvider* dns = nullptr;          // null: every name is unresolvable
    const ScanDataProvider* scan = nullptr;    // null: nothing is scannable
    const PlaceholderOracle* oracle = nullptr; // null: placeholder rules only
};

/// Runs the checkpoints for one asset. `context` holds the lines around the
/// asset for the placeholder oracle.
HostEvidence collect_evidence(const AssetIdentifier& asset, std::string_view context, const EaseProviders& providers,
                              Diagnostics& diags);

struct EaseRequest {
    AssetIdentifier asset;
    std::string context;
};

struct EaseOptions {
    EaseMapping mapping = EaseMapping::Prose;
    std::size_t concurrency = 8;
};

/// One category per request, in request order; probes run with at most
/// `options.concurrency` requests in flight.
std::vector<EaseCategory> analyze_ease(const std::vector<EaseRequest>& requests, const EaseProviders& providers,
                                       const EaseOptions& options, Diagnostics& diags);

}  // namespace secrisk
