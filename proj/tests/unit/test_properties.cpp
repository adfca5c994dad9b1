#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "corpus.hpp"
#include "secrisk/category/mapper.hpp"
#include "secrisk/common/text.hpp"
#include "secrisk/dataflow/def_use.hpp"
#include "secrisk/dataflow/python_parser.hpp"
#include "secrisk/detector/scanner.hpp"
#include "secrisk/ease/analyzer.hpp"
#include "secrisk/ease/fixtures.hpp"
#include "secrisk/keywords/sql_extract.hpp"
#include "secrisk/risk/score.hpp"

using namespace secrisk;

namespace {

struct Bundled {
    Taxonomy taxonomy = Taxonomy::load(testkit::data_dir() / "taxonomy.txt");
    SubwordEmbedding embedding = SubwordEmbedding::load(testkit::data_dir() / "embeddings.vec");
    LexiconTranslator lexicon = LexiconTranslator::load(testkit::data_dir() / "lexicon.txt");
};

const Bundled& bundled() {
    static const Bundled b;
    return b;
}

CategoryMapper mapper(MatcherCutoffs cutoffs = {}) {
    CategoryMapperOptions o;
    o.cutoffs = cutoffs;
    o.translators = {&bundled().lexicon};
    o.lexicon = &bundled().lexicon;
    return CategoryMapper(bundled().taxonomy, &bundled().embedding, o);
}

std::vector<std::string> vocabulary() {
    std::vector<std::string> words;
    std::stringstream ss(testkit::read_text(testkit::data_dir() / "embedding_vocab.txt"));
    std::string line, w;
    while (std::getline(ss, line)) {
        if (text::trim(line).rfind('#', 0) == 0) continue;
        std::istringstream fields(line);
        while (fields >> w) words.push_back(w);
    }
    return words;
}

double cutoff_for(Matcher m, const MatcherCutoffs& c) {
    switch (m) {
        case Matcher::Prefix: return c.prefix;
        case Matcher::Substring: return c.substring;
        case Matcher::Semantic: return c.semantic;
        case Matcher::None: break;
    }
    return 0.0;
}

constexpr int kCheckpoints = 6;

/// DNS-name evidence with the given checkpoints set; bit 0 is valid_dns.
HostEvidence toggled(unsigned mask) {
    HostEvidence e;
    e.kind = HostKind::DnsName;
    e.raw_host = "db.corp.net";
    std::optional<bool>* slots[kCheckpoints] = {&e.valid_dns, &e.resolvable, &e.valid_ip,
                                                &e.routable,  &e.scannable,  &e.db_port_open};
    for (int i = 0; i < kCheckpoints; ++i) *slots[i] = ((mask >> i) & 1u) != 0;
    if (e.scannable == true) e.open_ports = {22};
    e.target_port = 3306;
    e.counter = count_checkpoints(e);
    return e;
}

}  // namespace

// category-map

TEST(CategoryProperties, CutoffEnforcement) {
    const MatcherCutoffs cutoffs;
    const auto m = mapper(cutoffs);
    Diagnostics d;
    for (const auto& w : vocabulary()) {
        const auto r = m.map(w, d);
        if (r.matcher == Matcher::None) continue;
        EXPECT_GE(r.score, cutoff_for(r.matcher, cutoffs)) << w;
    }
}

TEST(CategoryProperties, RaisedCutoffsNeverAddMatches) {
    const auto base = mapper();
    const auto strict = mapper({0.9, 0.9, 0.85});
    Diagnostics d;
    for (const auto& w : vocabulary()) {
        const auto s = strict.map(w, d);
        if (s.matcher != Matcher::None) EXPECT_NE(base.map(w, d).matcher, Matcher::None) << w;
    }
}

TEST(CategoryProperties, Determinism) {
    const auto a = mapper();
    const auto b = mapper();
    Diagnostics d;
    for (const auto& w : vocabulary()) {
        const auto x = a.map(w, d);
        const auto y = b.map(w, d);
        EXPECT_EQ(x.category, y.category) << w;
        EXPECT_EQ(x.matcher, y.matcher) << w;
        EXPECT_EQ(x.score, y.score) << w;
    }
}

TEST(CategoryProperties, SubwordOrderRobustness) {
    const SemanticIndex index(bundled().taxonomy, bundled().embedding);
    const auto a = index.best("DATE_OF_BIRTH");
    const auto b = index.best("BIRTH_DATE");
    ASSERT_NE(a.category, nullptr);
    EXPECT_EQ(a.category, b.category);
}

TEST(CategoryProperties, AggregationMonotone) {
    std::mt19937 rng(7);
    const auto& cats = bundled().taxonomy.categories();
    DatabaseKeywordSet ks;
    ks.add(KeywordKind::Column, "k", KeywordSource::SqlQuery);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<CategoryMapping> ms;
        ValueLevel previous = ValueLevel::Unspecified;
        const int n = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            CategoryMapping m;
            if (rng() % 3) m.category = cats[rng() % cats.size()];
            ms.push_back(m);
            const auto level = aggregate_value(ks, ms).level;
            EXPECT_GE(static_cast<int>(level), static_cast<int>(previous));
            previous = level;
        }
    }
}

// ease-analyzer

TEST(EaseProperties, MonotoneUnderAllCheckpointToggles) {
    for (auto mapping : {EaseMapping::Prose, EaseMapping::Table3}) {
        for (unsigned mask = 0; mask < (1u << kCheckpoints); ++mask) {
            const auto level = assign_ease(toggled(mask), mapping).level;
            for (int i = 0; i < kCheckpoints; ++i) {
                if (!((mask >> i) & 1u)) continue;
                const auto lowered = assign_ease(toggled(mask & ~(1u << i)), mapping).level;
                EXPECT_LE(static_cast<int>(lowered), static_cast<int>(level)) << mask << " bit " << i;
            }
        }
    }
}

TEST(EaseProperties, CounterConsistency) {
    std::mt19937 rng(11);
    std::string dns_text, scan_text;
    std::vector<AssetIdentifier> assets;
    for (int i = 0; i < 200; ++i) {
        const std::string ip = std::to_string(20 + rng() % 200) + "." + std::to_string(rng() % 256) + "." +
                               std::to_string(rng() % 256) + "." + std::to_string(1 + rng() % 250);
        const std::string name = "h" + std::to_string(i) + ".corp-" + std::to_string(i % 7) + ".net";
        switch (rng() % 4) {
            case 0: dns_text += name + " NXDOMAIN\n"; break;
            case 1: dns_text += name + " " + ip + "\n"; break;
            case 2: dns_text += name + " 10.0.0." + std::to_string(1 + i % 200) + "\n"; break;
            default: dns_text += name + " " + ip + "\n"; scan_text += ip + (rng() % 2 ? " 22,3306\n" : " 80\n");
        }
        AssetIdentifier a;
        a.host = (rng() % 3 == 0) ? ip : name;
        a.db_type = DbType::MySQL;
        assets.push_back(a);
    }
    const auto dns = FixtureDns::parse(dns_text, "dns");
    const auto scan = FixtureScan::parse(scan_text, "scan");
    std::map<HostKind, std::vector<std::pair<int, EaseLevel>>> by_kind;
    for (const auto& a : assets) {
        Diagnostics d;
        const auto e = collect_evidence(a, "", {&dns, &scan, nullptr}, d);
        EXPECT_EQ(e.counter, count_checkpoints(e)) << a.host;
        by_kind[e.kind].push_back({e.counter, assign_ease(e).level});
    }
    for (auto& [kind, v] : by_kind) {
        std::sort(v.begin(), v.end());
        for (std::size_t i = 1; i < v.size(); ++i)
            EXPECT_LE(static_cast<int>(v[i - 1].second), static_cast<int>(v[i].second)) << to_string(kind);
    }
}

TEST(EaseProperties, OfflineDeterminism) {
    const auto dns = FixtureDns::parse("a.corp.net CNAME b.corp.net\nb.corp.net 185.60.21.35\n", "dns");
    const auto scan = FixtureScan::parse("185.60.21.35 22,3306\n", "scan");
    AssetIdentifier a;
    a.host = "a.corp.net";
    a.db_type = DbType::MySQL;
    Diagnostics d;
    const auto first = collect_evidence(a, "", {&dns, &scan, nullptr}, d);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(collect_evidence(a, "", {&dns, &scan, nullptr}, d), first);
}

// risk-score

TEST(RiskProperties, MonotoneAndInRange) {
    const ValueLevel values[] = {ValueLevel::Unspecified, ValueLevel::Low, ValueLevel::Moderate, ValueLevel::High};
    const EaseLevel eases[] = {EaseLevel::VeryDifficult, EaseLevel::Difficult, EaseLevel::Moderate, EaseLevel::Easy};
    for (int v = 0; v < 4; ++v) {
        for (int e = 0; e < 4; ++e) {
            const auto s = compute_risk(scale_value(values[v]), scale_ease(eases[e]));
            EXPECT_GE(s, 1);
            EXPECT_LE(s, 10000);
            EXPECT_EQ(s == 10000, v == 3 && e == 3);
            if (v > 0) EXPECT_GE(s, compute_risk(scale_value(values[v - 1]), scale_ease(eases[e])));
            if (e > 0) EXPECT_GE(s, compute_risk(scale_value(values[v]), scale_ease(eases[e - 1])));
        }
    }
}

TEST(RiskProperties, ArgmaxInvariance) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 9);
        ScaleTables scaled;
        scaled.value_high *= k;
        scaled.value_moderate *= k;
        scaled.value_low *= k;
        scaled.value_unspecified *= k;
        scaled.ease_easy *= k;
        scaled.ease_moderate *= k;
        scaled.ease_difficult *= k;
        scaled.ease_very_difficult *= k;
        std::vector<RiskFinding> a, b;
        for (int i = 0; i < 12; ++i) {
            SecretAssetPair p;
            p.secret = "s";
            p.asset.host = "h";
            p.secret_location = {"f" + std::to_string(rng() % 4) + ".py", 1 + static_cast<int>(rng() % 50), 1};
            p.variable = std::to_string(i);
            ValueCategory v;
            v.level = static_cast<ValueLevel>(rng() % 4);
            EaseCategory e;
            e.level = static_cast<EaseLevel>(rng() % 4);
            a.push_back(score_finding(p, {}, v, e));
            b.push_back(score_finding(p, {}, v, e, scaled));
        }
        rank_findings(a);
        rank_findings(b);
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].pair.variable, b[i].pair.variable);
    }
}

// dataflow

TEST(DataflowProperties, FoldingIsConfluent) {
    const std::vector<std::string> forms{"x = (\"a\" + \"b\") + \"c\"\n", "x = \"a\" + (\"b\" + \"c\")\n",
                                         "x = \"a\"\nx += \"b\"\nx += \"c\"\n", "p = \"b\"\nx = f\"a{p}c\"\n",
                                         "x = \"\".join([\"a\", \"b\", \"c\"])\n"};
    for (const auto& code : forms) {
        Diagnostics d;
        const auto module = py::parse_source(code, "c.py", d);
        const auto g = flow::build_def_use(module);
        const auto v = g.final_value("x");
        ASSERT_TRUE(v) << code;
        const auto f = flow::string_fragments(*v, {});
        EXPECT_TRUE(flow::fully_resolved(f)) << code;
        EXPECT_EQ(flow::join_fragments(f), "abc") << code;
    }
}

TEST(DataflowProperties, NoCrossFileFlow) {
    Diagnostics d;
    const auto module = py::parse_source("from settings import DB_HOST\nx = DB_HOST + \":3306\"\n", "c.py", d);
    const auto g = flow::build_def_use(module);
    const auto v = g.final_value("x");
    ASSERT_TRUE(v);
    EXPECT_FALSE(flow::fully_resolved(flow::string_fragments(*v, {})));
}

// keyword-extract

TEST(KeywordProperties, HoleNeutralization) {
    const std::string h(1, kSqlHole);
    const std::vector<std::pair<std::string, std::string>> cases{
        {"SELECT a, b FROM t WHERE c = 1 " + h, "SELECT a, b FROM t WHERE c = 1"},
        {"SELECT a, b FROM t " + h, "SELECT a, b FROM t"},
        {"SELECT a FROM t WHERE b = " + h + " AND c = 2", "SELECT a FROM t WHERE b = 2 AND c = 2"},
    };
    for (const auto& [with_hole, plain] : cases) {
        Diagnostics d1, d2;
        const auto x = extract_sql_keywords(with_hole, d1);
        const auto y = extract_sql_keywords(plain, d2);
        EXPECT_EQ(x.tables, y.tables) << plain;
        EXPECT_EQ(x.columns, y.columns) << plain;
    }
}

TEST(KeywordProperties, NeverInventsKeywords) {
    for (const auto& c : testkit::load_corpus()) {
        std::string haystack;
        for (const auto& e : std::filesystem::recursive_directory_iterator(c.dir / "repo"))
            if (e.is_regular_file()) haystack += text::to_lower_ascii(testkit::read_text(e.path())) + "\n";
        const auto report = run(testkit::corpus_config(c.dir));
        for (const auto& f : report.findings)
            for (const auto& [kind, entry] : f.keywords.all())
                EXPECT_NE(haystack.find(text::to_lower_ascii(entry->text)), std::string::npos)
                    << c.name << ": " << entry->text;
    }
}

// detector

TEST(DetectorProperties, PairsHaveSecretAndHostWithinWindow) {
    DetectorOptions o;
    o.sinks = std::make_shared<std::vector<flow::DriverSinkSpec>>(
        flow::load_sink_specs(testkit::data_dir() / "sinks.txt"));
    for (const auto& c : testkit::load_corpus()) {
        for (const auto& p : scan_repository(c.dir / "repo", o)) {
            EXPECT_FALSE(p.secret.empty()) << c.name;
            EXPECT_FALSE(p.asset.host.empty()) << c.name;
            if (p.detection_method == DetectionMethod::NeighborHeuristic)
                EXPECT_LE(std::abs(p.secret_location.line - p.asset_location.line), 3) << c.name;
        }
    }
}

TEST(DetectorProperties, HeuristicWindowBoundOnRandomFiles) {
    std::mt19937 rng(5);
    const char* prefixes[] = {"mysql", "pg", "mongo", "redis"};
    int paired = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::string> lines(30);
        const int secret_line = 1 + static_cast<int>(rng() % 30);
        const std::string prefix = prefixes[rng() % 4];
        lines[secret_line - 1] = prefix + "_password = \"Zx81kkq\"";
        for (int k = 0; k < 4; ++k) {
            const int l = 1 + static_cast<int>(rng() % 30);
            if (l != secret_line) lines[l - 1] = std::string(prefixes[rng() % 4]) + "_host = \"47.96.1." +
                                                 std::to_string(l) + "\"";
        }
        const std::vector<SecretCandidate> secrets{{"Zx81kkq", {"r.py", secret_line, 1}, prefix + "_password"}};
        for (const auto& p : heuristic_detect(secrets, lines)) {
            ++paired;
            EXPECT_LE(std::abs(p.asset_location.line - secret_line), 3);
            EXPECT_EQ(lines[p.asset_location.line - 1].rfind(prefix, 0), 0u);
        }
    }
    EXPECT_GT(paired, 0);
}

// stable ranking against an insertion-sort reference

TEST(RankingProperties, StableSortMatchesReference) {
    std::mt19937 rng(20240917);
    for (int list = 0; list < 1000; ++list) {
        const int n = static_cast<int>(rng() % 25);
        std::vector<RiskFinding> findings;
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
        auto precedes = [](const RiskFinding& a, const RiskFinding& b) {
            if (a.risk_score != b.risk_score) return a.risk_score > b.risk_score;
            if (a.value_points != b.value_points) return a.value_points > b.value_points;
            if (a.pair.secret_location.path != b.pair.secret_location.path)
                return a.pair.secret_location.path < b.pair.secret_location.path;
            return a.pair.secret_location.line < b.pair.secret_location.line;
        };
        std::vector<RiskFinding> reference;
        for (const auto& f : findings) {
            auto pos = reference.end();
            while (pos != reference.begin() && precedes(f, *(pos - 1))) --pos;
            reference.insert(pos, f);
        }
        rank_findings(findings);
        ASSERT_EQ(findings.size(), reference.size());
        for (std::size_t i = 0; i < findings.size(); ++i) {
            EXPECT_EQ(findings[i].pair.variable, reference[i].pair.variable) << "list " << list;
            EXPECT_EQ(findings[i].rank, static_cast<int>(i) + 1);
        }
    }
}
