#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "secrisk/category/translate.hpp"
#include "secrisk/common/diagnostics.hpp"
#include "secrisk/ease/live.hpp"
#include "secrisk/ease/probe_cache.hpp"
#include "secrisk/ease/providers.hpp"
#include "secrisk/report/config.hpp"

namespace secrisk {

/// Cloud translation client: POST /language/translate/v2 with target "en".
/// Spaces in the answer become '_' so it normalizes as an identifier.
class CloudTranslator : public TranslationProvider {
public:
    explicit CloudTranslator(std::string api_key,
                             HttpEndpoint endpoint = {"https://translation.googleapis.com", 10});
    std::string name() const override { return "cloud-translate"; }
    std::optional<std::string> translate(std::string_view keyword) const override;

private:
    std::string key_;
    HttpEndpoint endpoint_;
};

/// Providers for one run. The plain pointers are what the pipeline uses;
/// they point into the owned members or at caller-supplied test doubles.
struct ProviderSet {
    std::shared_ptr<ProbeCache> cache;
    std::vector<std::shared_ptr<const void>> owned;

    const DnsProvider* dns = nullptr;
    const ScanDataProvider* scan = nullptr;
    const PlaceholderOracle* oracle = nullptr;
    const TranslationProvider* translator = nullptr;

    /// Human-readable provider choice for the report header.
    std::string describe() const;
};

/// Offline: fixture tables (empty when not configured), rules only, bundled
/// lexicon only. Online: configured fixtures still win; otherwise the
/// system resolver, the scan database when SCAN_API_ID/SECRET are set, the
/// LLM when LLM_API_KEY is set and cloud translation when
/// TRANSLATE_API_KEY is set, each wrapped in the probe cache.
ProviderSet make_providers(const ScanConfig& config, Diagnostics& diags);

}  // namespace secrisk
