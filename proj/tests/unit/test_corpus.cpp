#include <gtest/gtest.h>

#include "corpus.hpp"
#include "secrisk/ease/live.hpp"
#include "secrisk/report/report_json.hpp"

using namespace secrisk;

namespace {

Report trio(EaseMapping mapping) {
    auto config = testkit::corpus_config(testkit::corpus_dir() / "table3");
    config.ease_mapping = mapping;
    config.reveal_secrets = true;
    return run(config);
}

}  // namespace

TEST(Corpus, EveryPlantedPairRecovered) {
    const auto cases = testkit::load_corpus();
    ASSERT_GE(cases.size(), 12u);
    for (const auto& c : cases) {
        const auto report = run(testkit::corpus_config(c.dir));
        EXPECT_EQ(testkit::check_case(c, report), "") << c.name;
    }
}

TEST(Corpus, TrioOrderUnderTable3) {
    const auto r = trio(EaseMapping::Table3);
    ASSERT_EQ(r.findings.size(), 3u);
    const std::vector<std::pair<std::string, long long>> expected{
        {"secret_c.py", 320}, {"secret_a.py", 100}, {"secret_b.py", 40}};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(r.findings[i].pair.secret_location.path, expected[i].first);
        EXPECT_EQ(r.findings[i].risk_score, expected[i].second);
        EXPECT_EQ(r.findings[i].rank, static_cast<int>(i) + 1);
    }
}

TEST(Corpus, TrioOrderUnderProse) {
    const auto r = trio(EaseMapping::Prose);
    ASSERT_EQ(r.findings.size(), 3u);
    EXPECT_EQ(r.findings[0].pair.secret_location.path, "secret_c.py");
    EXPECT_EQ(r.findings[0].risk_score, 1600);
    EXPECT_EQ(r.findings[1].pair.secret_location.path, "secret_a.py");
    EXPECT_EQ(r.findings[2].pair.secret_location.path, "secret_b.py");
}

TEST(Corpus, OfflineRunsAreByteIdentical) {
    for (const auto& c : testkit::load_corpus()) {
        const auto config = testkit::corpus_config(c.dir);
        EXPECT_EQ(emit_json(run(config)), emit_json(run(config))) << c.name;
    }
}

TEST(Corpus, OfflineMakesNoNetworkCalls) {
    const auto before = network_call_count();
    for (const auto& c : testkit::load_corpus()) {
        auto config = testkit::corpus_config(c.dir);
        config.credentials.scan_api_id = "id";
        config.credentials.scan_api_secret = "secret";
        config.credentials.llm_api_key = "key";
        run(config);
    }
    EXPECT_EQ(network_call_count(), before);
}
