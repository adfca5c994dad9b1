#include "secrisk/report/pipeline.hpp"

#include <algorithm>

#include "secrisk/category/embedding.hpp"
#include "secrisk/category/mapper.hpp"
#include "secrisk/category/taxonomy.hpp"
#include "secrisk/category/translate.hpp"
#include "secrisk/common/error.hpp"
#include "secrisk/common/text.hpp"
#include "secrisk/common/thread_pool.hpp"
#include "secrisk/dataflow/sinks.hpp"
#include "secrisk/detector/findings_file.hpp"
#include "secrisk/detector/scanner.hpp"
#include "secrisk/keywords/keyword_set.hpp"

#ifndef SECRISK_VERSION
#define SECRISK_VERSION "0.0.0"
#endif

namespace secrisk {

namespace {

/// Lines [line - radius, line + radius] of `text`, 1-based.
std::string context_lines(const std::string& text, int line, int radius) {
    const auto lines = text::split_lines(text);
    const int first = std::max(1, line - radius);
    const int last = std::min(static_cast<int>(lines.size()), line + radius);
    std::vector<std::string> out;
    for (int i = first; i <= last; ++i) out.push_back(lines[static_cast<std::size_t>(i - 1)]);
    return text::join(out, "\n");
}

std::filesystem::path data_file(const ScanConfig& c, const char* name) {
    return (c.data_dir.empty() ? default_data_dir() : c.data_dir) / name;
}

}  // namespace

const char* tool_version() { return SECRISK_VERSION; }

std::map<std::string, int> Report::count_by_value() const {
    std::map<std::string, int> out;
    for (ValueLevel v : {ValueLevel::High, ValueLevel::Moderate, ValueLevel::Low, ValueLevel::Unspecified})
        out[to_string(v)] = 0;
    for (const auto& f : findings) ++out[to_string(f.value.level)];
    return out;
}

std::map<std::string, int> Report::count_by_ease() const {
    std::map<std::string, int> out;
    for (EaseLevel e : {EaseLevel::Easy, EaseLevel::Moderate, EaseLevel::Difficult, EaseLevel::VeryDifficult})
        out[to_string(e)] = 0;
    for (const auto& f : findings) ++out[to_string(f.ease.level)];
    return out;
}

int Report::alert_count() const {
    return static_cast<int>(std::count_if(findings.begin(), findings.end(),
                                          [&](const RiskFinding& f) { return f.risk_score >= alert_threshold; }));
}

Report run_pipeline(const ScanConfig& config, const ProviderSet& providers) {
    validate_config(config);
    Report report;
    report.tool_version = tool_version();
    for (const auto& [key, value] : config_echo(config))
        report.config.push_back({key, value, config.overridden.count(key) > 0});
    std::sort(report.config.begin(), report.config.end(),
              [](const ConfigEntry& a, const ConfigEntry& b) { return a.key < b.key; });
    report.providers = providers.describe();
    report.alert_threshold = config.alert_threshold;
    report.secrets_revealed = config.reveal_secrets;

    DetectorOptions detector;
    detector.sinks = std::make_shared<std::vector<flow::DriverSinkSpec>>(
        flow::load_sink_specs(data_file(config, "sinks.txt")));
    detector.heuristic.window = config.neighbor_window;
    detector.workers = config.workers;
    if (config.findings) detector.findings = load_findings(*config.findings);

    RepositoryScan scan = analyze_repository(config.root, detector);
    Diagnostics diags = scan.diagnostics;

    Diagnostics keyword_diags;
    std::vector<DatabaseKeywordSet> keywords = extract_keywords(scan, keyword_diags, config.workers);
    diags.append(keyword_diags);

    const Taxonomy taxonomy = Taxonomy::load(data_file(config, "taxonomy.txt"));
    std::optional<SubwordEmbedding> embedding;
    try {
        embedding = SubwordEmbedding::load(data_file(config, "embeddings.vec"));
    } catch (const Error& e) {
        diags.warn("category", std::string("embeddings unavailable: ") + e.what());
    }
    const LexiconTranslator lexicon = LexiconTranslator::load(data_file(config, "lexicon.txt"));
    CategoryMapperOptions mapper_options;
    mapper_options.cutoffs = config.cutoffs;
    mapper_options.lexicon = &lexicon;
    mapper_options.translators = {&lexicon};
    if (providers.translator) mapper_options.translators.push_back(providers.translator);
    const CategoryMapper mapper(taxonomy, embedding ? &*embedding : nullptr, mapper_options);

    const std::size_t n = scan.pairs.size();
    std::vector<ValueCategory> values(n);
    std::vector<Diagnostics> value_diags(n);
    const std::size_t workers = config.workers ? config.workers : default_worker_count();
    // Online translation goes over the network; keep it within the probe bound.
    parallel_for(n, providers.translator ? std::min(workers, config.probe_concurrency) : workers, [&](std::size_t i) {
        values[i] = aggregate_value(keywords[i], map_keyword_set(keywords[i], mapper, value_diags[i]));
    });
    for (const auto& d : value_diags) diags.append(d);

    std::vector<EaseRequest> requests(n);
    for (std::size_t i = 0; i < n; ++i) {
        requests[i].asset = scan.pairs[i].asset;
        if (const FileAnalysis* f = scan.file(scan.pairs[i].asset_location.path))
            requests[i].context = context_lines(f->text, scan.pairs[i].asset_location.line, 2);
    }
    EaseProviders ease_providers{providers.dns, providers.scan, providers.oracle};
    EaseOptions ease_options{config.ease_mapping, config.probe_concurrency};
    std::vector<EaseCategory> eases = analyze_ease(requests, ease_providers, ease_options, diags);

    report.findings.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        report.findings.push_back(score_finding(std::move(scan.pairs[i]), std::move(keywords[i]), std::move(values[i]),
                                                std::move(eases[i]), config.scales));
    rank_findings(report.findings);
    report.diagnostics = diags.entries();
    return report;
}

Report run(const ScanConfig& config) {
    validate_config(config);
    Diagnostics setup;
    ProviderSet providers = make_providers(config, setup);
    Report report = run_pipeline(config, providers);
    report.diagnostics.insert(report.diagnostics.begin(), setup.entries().begin(), setup.entries().end());
    if (config.probe_cache && !config.offline) providers.cache->save(*config.probe_cache);
    return report;
}

int exit_code(const Report& report) { return report.alert_count() > 0 ? 2 : 0; }

std::string mask_secret(const std::string& secret) {
    if (secret.size() <= 4) return "**";
    return secret.substr(0, 2) + "**" + secret.substr(secret.size() - 2);
}

}  // namespace secrisk
