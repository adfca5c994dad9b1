#include <gtest/gtest.h>

#include <json.hpp>

#include "corpus.hpp"
#include "secrisk/common/error.hpp"
#include "secrisk/ease/live.hpp"
#include "secrisk/report/config.hpp"
#include "secrisk/report/pipeline.hpp"
#include "secrisk/report/providers.hpp"
#include "secrisk/report/report_json.hpp"
#include "secrisk/report/report_table.hpp"

using namespace secrisk;

namespace {

Report table3_report(bool reveal = false) {
    auto config = testkit::corpus_config(testkit::corpus_dir() / "table3");
    config.reveal_secrets = reveal;
    config.ease_mapping = EaseMapping::Table3;
    return run(config);
}

}  // namespace

TEST(Config, Defaults) {
    const ScanConfig c;
    EXPECT_EQ(c.neighbor_window, 3);
    EXPECT_DOUBLE_EQ(c.cutoffs.prefix, 0.7);
    EXPECT_DOUBLE_EQ(c.cutoffs.substring, 0.7);
    EXPECT_DOUBLE_EQ(c.cutoffs.semantic, 0.65);
    EXPECT_EQ(c.ease_mapping, EaseMapping::Prose);
    EXPECT_EQ(c.alert_threshold, 800);
}

TEST(Config, FileThenFlagPrecedence) {
    ScanConfig c;
    apply_config_text(c, "# comment\ncutoff.prefix = 0.8\nalert_threshold = 500\n", "cfg", "/base");
    apply_setting(c, "alert_threshold", "900");
    EXPECT_DOUBLE_EQ(c.cutoffs.prefix, 0.8);
    EXPECT_EQ(c.alert_threshold, 900);
    EXPECT_TRUE(c.overridden.count("cutoff.prefix"));
}

TEST(Config, RelativePathsUseBase) {
    ScanConfig c;
    apply_setting(c, "dns_fixture", "fx/dns.txt", "/base");
    EXPECT_EQ(c.dns_fixture->generic_string(), "/base/fx/dns.txt");
}

TEST(Config, InvalidValuesRejected) {
    ScanConfig c;
    EXPECT_THROW(apply_setting(c, "no.such.key", "1"), Error);
    EXPECT_THROW(apply_setting(c, "neighbor_window", "three"), Error);
    ScanConfig bad;
    bad.cutoffs.semantic = 0.0;
    EXPECT_THROW(validate_config(bad), Error);
    bad.cutoffs.semantic = 0.65;
    bad.neighbor_window = -1;
    EXPECT_THROW(validate_config(bad), Error);
}

TEST(Config, EchoCoversEveryKey) {
    const auto echo = config_echo(ScanConfig{});
    EXPECT_EQ(echo.size(), config_keys().size());
}

TEST(Masking, Rule) {
    EXPECT_EQ(mask_secret("Fm)4dj"), "Fm**dj");
    EXPECT_EQ(mask_secret("123456"), "12**56");
    EXPECT_EQ(mask_secret("abcd"), "**");
    EXPECT_EQ(mask_secret(""), "**");
}

TEST(ReportJson, EmptyReport) {
    Report r;
    r.tool_version = tool_version();
    const auto text = emit_json(r);
    ASSERT_FALSE(text.empty());
    EXPECT_EQ(text.back(), '\n');
    const auto doc = nlohmann::json::parse(text);
    EXPECT_EQ(doc["schema"], 1);
    EXPECT_TRUE(doc["findings"].is_array());
    EXPECT_TRUE(doc["findings"].empty());
}

TEST(ReportJson, RoundTripWithFindings) {
    const auto r = table3_report(true);
    ASSERT_EQ(r.findings.size(), 3u);
    const auto text = emit_json(r);
    const auto back = parse_report_json(text);
    EXPECT_EQ(emit_json(back), text);
    EXPECT_EQ(back.findings.size(), r.findings.size());
    EXPECT_EQ(back.findings[0].risk_score, r.findings[0].risk_score);
    EXPECT_EQ(back.findings[0].pair.secret, r.findings[0].pair.secret);
    EXPECT_EQ(back.findings[0].ease.evidence, r.findings[0].ease.evidence);
}

TEST(ReportJson, SecretsMaskedByDefault) {
    const auto text = emit_json(table3_report(false));
    EXPECT_EQ(text.find("Fm)4dj"), std::string::npos);
    EXPECT_NE(text.find("Fm**dj"), std::string::npos);
}

TEST(ReportJson, RevealFlagShowsSecrets) {
    EXPECT_NE(emit_json(table3_report(true)).find("Fm)4dj"), std::string::npos);
}

TEST(ReportJson, UnknownSchemaRejected) {
    EXPECT_THROW(parse_report_json("{\"schema\": 2}"), Error);
    EXPECT_THROW(parse_report_json("not json"), Error);
}

TEST(ReportTable, AlwaysMasked) {
    const auto text = emit_table(table3_report(true));
    EXPECT_EQ(text.find("Fm)4dj"), std::string::npos);
    EXPECT_EQ(text.find("123456"), std::string::npos);
    EXPECT_NE(text.find("Fm**dj"), std::string::npos);
    EXPECT_NE(text.find("secret_a.py:3"), std::string::npos);
}

TEST(Pipeline, EmptyRepository) {
    const auto dir = std::filesystem::temp_directory_path() / "secrisk_empty_pipeline";
    std::filesystem::create_directories(dir);
    ScanConfig c;
    c.root = dir;
    c.offline = true;
    c.data_dir = testkit::data_dir();
    const auto r = run(c);
    EXPECT_TRUE(r.findings.empty());
    EXPECT_EQ(exit_code(r), 0);
    std::filesystem::remove_all(dir);
}

TEST(Pipeline, AlertThresholdExitCode) {
    auto r = table3_report();
    EXPECT_EQ(exit_code(r), 0);
    r.alert_threshold = 320;
    EXPECT_EQ(exit_code(r), 2);
    EXPECT_EQ(r.alert_count(), 1);
}

TEST(Pipeline, SummaryCounts) {
    const auto r = table3_report();
    const auto v = r.count_by_value();
    EXPECT_EQ(v.at("HIGH"), 1);
    EXPECT_EQ(v.at("MODERATE"), 1);
    EXPECT_EQ(v.at("LOW"), 1);
    EXPECT_EQ(r.count_by_ease().at("DIFFICULT"), 2);
}

TEST(Providers, OfflineWithCredentialsUsesFixtures) {
    auto c = testkit::corpus_config(testkit::corpus_dir() / "table3");
    c.credentials.scan_api_id = "id";
    c.credentials.scan_api_secret = "secret";
    c.credentials.llm_api_key = "key";
    Diagnostics d;
    const auto p = make_providers(c, d);
    EXPECT_EQ(p.dns->name(), "fixture-dns");
    EXPECT_EQ(p.scan->name(), "fixture-scan");
    EXPECT_EQ(p.oracle, nullptr);
    EXPECT_FALSE(d.empty());
}

TEST(Providers, MissingFixtureIsFatal) {
    ScanConfig c;
    c.offline = true;
    c.dns_fixture = "/nonexistent/dns.txt";
    Diagnostics d;
    EXPECT_THROW(make_providers(c, d), Error);
}
