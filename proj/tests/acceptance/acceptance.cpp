#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "secrisk/category/mapper.hpp"
#include "secrisk/category/similarity.hpp"
#include "secrisk/dataflow/def_use.hpp"
#include "secrisk/dataflow/python_parser.hpp"
#include "secrisk/ease/analyzer.hpp"
#include "secrisk/ease/fixtures.hpp"
#include "secrisk/ease/live.hpp"
#include "secrisk/report/report_json.hpp"
#include "secrisk/risk/score.hpp"

using namespace secrisk;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kScoringBudgetSeconds = 1.0;
constexpr double kCorpusBudgetSeconds = 30.0;
constexpr double kSimilarityTolerance = 1e-9;
constexpr std::size_t kMinCorpusCases = 12;
constexpr std::size_t kSimilarityPairs = 100;
constexpr std::size_t kDataflowSnippets = 30;
constexpr int kRankingLists = 1000;

/// Criterion outcome; `detail` names the first failure or a short summary.
struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::string scientific(double x) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(2) << x;
    return out.str();
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json oracle(const std::string& name) {
    return nlohmann::json::parse(testkit::read_text(testkit::oracle_dir() / name));
}

Outcome scoring_exactness() {
    Outcome o;
    const auto start = Clock::now();
    const struct {
        ValueLevel v;
        EaseLevel e;
        long long score;
    } rows[] = {{ValueLevel::High, EaseLevel::VeryDifficult, 100},
                {ValueLevel::Low, EaseLevel::Difficult, 40},
                {ValueLevel::Moderate, EaseLevel::Difficult, 320},
                {ValueLevel::High, EaseLevel::Difficult, 800}};
    for (const auto& r : rows) {
        const auto s = compute_risk(scale_value(r.v), scale_ease(r.e));
        if (s != r.score)
            o.fail(std::string(to_string(r.v)) + "/" + to_string(r.e) + " gave " + std::to_string(s));
    }
    const auto t = seconds_since(start);
    if (t >= kScoringBudgetSeconds) o.fail("took " + std::to_string(t) + " s");
    if (o.pass) o.detail = "4 scores exact";
    return o;
}

Outcome pattern_coverage() {
    Outcome o;
    const auto start = Clock::now();
    const auto cases = testkit::load_corpus();
    if (cases.size() < kMinCorpusCases) o.fail("only " + std::to_string(cases.size()) + " cases");
    std::size_t hits = 0;
    for (const auto& c : cases) {
        const auto why = testkit::check_case(c, run(testkit::corpus_config(c.dir)));
        if (why.empty())
            ++hits;
        else
            o.fail(c.name + ": " + why);
    }
    const auto t = seconds_since(start);
    if (t >= kCorpusBudgetSeconds) o.fail("took " + std::to_string(t) + " s");
    if (o.pass) o.detail = std::to_string(hits) + "/" + std::to_string(cases.size()) + " planted pairs recovered";
    return o;
}

Outcome similarity_oracle() {
    Outcome o;
    const auto doc = oracle("similarity_pairs.json");
    if (doc["pairs"].size() != kSimilarityPairs) o.fail("oracle holds " + std::to_string(doc["pairs"].size()) + " pairs");
    double worst = 0.0;
    for (const auto& p : doc["pairs"]) {
        const auto a = p["a"].get<std::string>();
        const auto b = p["b"].get<std::string>();
        worst = std::max({worst, std::abs(jaro_winkler(a, b) - p["jaro_winkler"].get<double>()),
                          std::abs(ratcliff_obershelp(a, b) - p["ratcliff_obershelp"].get<double>())});
    }
    if (worst > kSimilarityTolerance) o.fail("max deviation " + scientific(worst));

    const auto data = testkit::data_dir();
    const auto taxonomy = Taxonomy::load(data / "taxonomy.txt");
    const auto embedding = SubwordEmbedding::load(data / "embeddings.vec");
    const auto lexicon = LexiconTranslator::load(data / "lexicon.txt");
    CategoryMapperOptions options;
    options.translators = {&lexicon};
    options.lexicon = &lexicon;
    const CategoryMapper mapper(taxonomy, &embedding, options);
    const std::pair<const char*, const char*> examples[] = {{"FINANCIAL_ACC", "FINANCIAL_ACCOUNT_NUMBER"},
                                                            {"NID_NUMBER", "NATIONAL_ID_NUMBER"},
                                                            {"CELL_NO", "PHONE_NO"},
                                                            {"DATE_OF_BIRTH", "BIRTH_DATE"}};
    Diagnostics d;
    for (const auto& [keyword, category] : examples) {
        const auto m = mapper.map(keyword, d);
        if (!m.category || m.category->name != category)
            o.fail(std::string(keyword) + " mapped to " + (m.category ? m.category->name : "none"));
    }
    if (mapper.map("test", d).level() != ValueLevel::Unspecified) o.fail("test is not UNSPECIFIED");
    if (o.pass) o.detail = "max deviation " + scientific(worst) + ", 5 mappings as stated";
    return o;
}

Outcome ease_pipeline() {
    Outcome o;
    const auto dns = FixtureDns::parse("db.example.com 93.184.216.34\n", "acceptance-dns");
    const auto scan = FixtureScan::parse("120.77.222.217 22,80\n47.96.1.2 22,3306\n", "acceptance-scan");
    const EaseProviders providers{&dns, &scan, nullptr};
    const struct {
        const char* label;
        const char* host;
        EaseLevel expected;
    } rows[] = {{"placeholder DNS", "db.example.com", EaseLevel::VeryDifficult},
                {"unresolvable DNS", "db.nxdomain-fixture.net", EaseLevel::VeryDifficult},
                {"localhost", "localhost", EaseLevel::VeryDifficult},
                {"private IP", "192.168.1.1", EaseLevel::VeryDifficult},
                {"routable, unscannable", "185.60.21.35", EaseLevel::Difficult},
                {"scannable, port closed", "120.77.222.217", EaseLevel::Moderate},
                {"scannable, port open", "47.96.1.2", EaseLevel::Easy}};
    for (const auto& r : rows) {
        AssetIdentifier a;
        a.host = r.host;
        a.db_type = DbType::MySQL;
        Diagnostics d;
        const auto level = assign_ease(collect_evidence(a, "", providers, d)).level;
        if (level != r.expected) o.fail(std::string(r.label) + " gave " + to_string(level));
    }

    constexpr int kCheckpoints = 6;
    auto evidence = [](unsigned mask) {
        HostEvidence e;
        e.raw_host = "db.corp.net";
        std::optional<bool>* slots[kCheckpoints] = {&e.valid_dns, &e.resolvable, &e.valid_ip,
                                                    &e.routable,  &e.scannable,  &e.db_port_open};
        for (int i = 0; i < kCheckpoints; ++i) *slots[i] = ((mask >> i) & 1u) != 0;
        e.target_port = 3306;
        e.counter = count_checkpoints(e);
        return e;
    };
    int checked = 0;
    for (unsigned mask = 0; mask < (1u << kCheckpoints); ++mask, ++checked) {
        const auto level = assign_ease(evidence(mask)).level;
        for (int i = 0; i < kCheckpoints; ++i) {
            if (!((mask >> i) & 1u)) continue;
            if (assign_ease(evidence(mask & ~(1u << i))).level > level)
                o.fail("clearing checkpoint " + std::to_string(i) + " of mask " + std::to_string(mask) +
                       " raised the level");
        }
    }
    if (o.pass) o.detail = "7 fixture rows as expected, " + std::to_string(checked) + " combinations monotone";
    return o;
}

Outcome determinism_and_purity() {
    Outcome o;
    const auto before = network_call_count();
    std::size_t runs = 0;
    for (const auto& c : testkit::load_corpus()) {
        auto config = testkit::corpus_config(c.dir);
        config.credentials.scan_api_id = "id";
        config.credentials.scan_api_secret = "secret";
        config.credentials.llm_api_key = "key";
        if (emit_json(run(config)) != emit_json(run(config))) o.fail(c.name + " reports differ");
        runs += 2;
    }
    const auto calls = network_call_count() - before;
    if (calls != 0) o.fail(std::to_string(calls) + " network calls");
    if (o.pass) o.detail = std::to_string(runs) + " offline runs, byte-identical, 0 network calls";
    return o;
}

Outcome dataflow_soundness() {
    Outcome o;
    const auto doc = oracle("dataflow_cases.json");
    if (doc["cases"].size() != kDataflowSnippets) o.fail("oracle holds " + std::to_string(doc["cases"].size()));
    int resolved = 0, holes = 0;
    for (const auto& c : doc["cases"]) {
        const auto name = c["name"].get<std::string>();
        Diagnostics d;
        const auto module = py::parse_source(c["code"].get<std::string>(), "snippet.py", d);
        const auto graph = flow::build_def_use(module);
        const auto v = graph.final_value(c["target"].get<std::string>());
        if (!v) {
            o.fail(name + ": no value");
            continue;
        }
        const auto fragments = flow::string_fragments(*v, {});
        if (c["hole"].get<bool>()) {
            ++holes;
            if (flow::fully_resolved(fragments)) o.fail(name + ": HOLE not flagged");
        } else {
            ++resolved;
            if (!flow::fully_resolved(fragments))
                o.fail(name + ": unresolved");
            else if (flow::join_fragments(fragments) != c["expected"].get<std::string>())
                o.fail(name + ": value differs");
        }
    }
    if (o.pass) o.detail = std::to_string(resolved) + " resolved, " + std::to_string(holes) + " HOLE cases flagged";
    return o;
}

Outcome ranking_behavior() {
    Outcome o;
    auto config = testkit::corpus_config(testkit::corpus_dir() / "table3");
    config.reveal_secrets = true;
    const auto report = run(config);
    std::vector<std::string> order;
    for (const auto& f : report.findings) order.push_back(f.pair.secret_location.path);
    const std::vector<std::string> expected{"secret_c.py", "secret_a.py", "secret_b.py"};
    if (order != expected) {
        std::string got;
        for (const auto& p : order) got += p + " ";
        o.fail("trio order " + got);
    }

    std::mt19937 rng(1000);
    auto precedes = [](const RiskFinding& a, const RiskFinding& b) {
        if (a.risk_score != b.risk_score) return a.risk_score > b.risk_score;
        if (a.value_points != b.value_points) return a.value_points > b.value_points;
        if (a.pair.secret_location.path != b.pair.secret_location.path)
            return a.pair.secret_location.path < b.pair.secret_location.path;
        return a.pair.secret_location.line < b.pair.secret_location.line;
    };
    for (int list = 0; list < kRankingLists; ++list) {
        std::vector<RiskFinding> findings;
        const int n = static_cast<int>(rng() % 25);
        for (int i = 0; i < n; ++i) {
            SecretAssetPair p;
            p.secret = "s";
            p.asset.host = "h";
            p.secret_location = {"f" + std::to_string(rng() % 3) + ".py", 1 + static_cast<int>(rng() % 4), 1};
            p.variable = std::to_string(i);
            ValueCategory v;
            v.level = static_cast<ValueLevel>(rng() % 4);
            EaseCategory e;
            e.level = static_cast<EaseLevel>(rng() % 4);
            findings.push_back(score_finding(p, {}, v, e));
        }
        std::vector<RiskFinding> reference;
        for (const auto& f : findings) {
            auto pos = reference.end();
            while (pos != reference.begin() && precedes(f, *(pos - 1))) --pos;
            reference.insert(pos, f);
        }
        rank_findings(findings);
        for (std::size_t i = 0; i < findings.size(); ++i) {
            if (findings[i].pair.variable != reference[i].pair.variable) {
                o.fail("list " + std::to_string(list) + " differs at " + std::to_string(i));
                break;
            }
        }
    }
    if (o.pass) o.detail = "trio C, A, B; " + std::to_string(kRankingLists) + " lists match the reference sort";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"scoring exactness", scoring_exactness},   {"pattern coverage", pattern_coverage},
        {"similarity oracle", similarity_oracle},   {"ease pipeline", ease_pipeline},
        {"determinism and offline purity", determinism_and_purity},
        {"data-flow soundness", dataflow_soundness}, {"ranking behavior", ranking_behavior}};
    int failures = 0, index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << o.detail << "\n";
    }
    return failures == 0 ? 0 : 1;
}
