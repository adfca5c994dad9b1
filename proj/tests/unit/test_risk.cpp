#include <gtest/gtest.h>

#include "secrisk/risk/score.hpp"

using namespace secrisk;

namespace {

RiskFinding finding(ValueLevel v, EaseLevel e, const std::string& path = "a.py", int line = 1) {
    SecretAssetPair p;
    p.secret = "s3cret";
    p.secret_location = {path, line, 1};
    p.asset.host = "h";
    ValueCategory value;
    value.level = v;
    EaseCategory ease;
    ease.level = e;
    return score_finding(p, {}, value, ease);
}

}  // namespace

TEST(ScaleTables, ValuePoints) {
    EXPECT_EQ(scale_value(ValueLevel::High), 100);
    EXPECT_EQ(scale_value(ValueLevel::Moderate), 40);
    EXPECT_EQ(scale_value(ValueLevel::Low), 5);
    EXPECT_EQ(scale_value(ValueLevel::Unspecified), 1);
}

TEST(ScaleTables, EasePoints) {
    EXPECT_EQ(scale_ease(EaseLevel::Easy), 100);
    EXPECT_EQ(scale_ease(EaseLevel::Moderate), 40);
    EXPECT_EQ(scale_ease(EaseLevel::Difficult), 8);
    EXPECT_EQ(scale_ease(EaseLevel::VeryDifficult), 1);
}

TEST(ScaleTables, OverridesApply) {
    ScaleTables t;
    t.value_high = 13;
    t.ease_difficult = 20;
    EXPECT_EQ(scale_value(ValueLevel::High, t), 13);
    EXPECT_EQ(scale_ease(EaseLevel::Difficult, t), 20);
}

TEST(ComputeRisk, WorkedExamples) {
    EXPECT_EQ(compute_risk(100, 8), 800);
    EXPECT_EQ(compute_risk(100, 1), 100);
    EXPECT_EQ(compute_risk(40, 8), 320);
    EXPECT_EQ(compute_risk(5, 8), 40);
}

TEST(ScoreFinding, CarriesPointsAndProduct) {
    const auto f = finding(ValueLevel::Moderate, EaseLevel::Difficult);
    EXPECT_EQ(f.value_points, 40);
    EXPECT_EQ(f.ease_points, 8);
    EXPECT_EQ(f.risk_score, 320);
}

TEST(RankFindings, ThreeSecretOrder) {
    std::vector<RiskFinding> v{finding(ValueLevel::High, EaseLevel::VeryDifficult, "a.py"),
                               finding(ValueLevel::Low, EaseLevel::Difficult, "b.py"),
                               finding(ValueLevel::Moderate, EaseLevel::Difficult, "c.py")};
    rank_findings(v);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0].risk_score, 320);
    EXPECT_EQ(v[1].risk_score, 100);
    EXPECT_EQ(v[2].risk_score, 40);
    EXPECT_EQ(v[0].rank, 1);
    EXPECT_EQ(v[2].rank, 3);
}

TEST(RankFindings, EqualScorePrefersValue) {
    std::vector<RiskFinding> v{finding(ValueLevel::Moderate, EaseLevel::Easy, "a.py"),
                               finding(ValueLevel::High, EaseLevel::Moderate, "b.py")};
    rank_findings(v);
    EXPECT_EQ(v[0].risk_score, v[1].risk_score);
    EXPECT_EQ(v[0].value_points, 100);
}

TEST(RankFindings, TiesFallBackToLocation) {
    std::vector<RiskFinding> v{finding(ValueLevel::Low, EaseLevel::Easy, "b.py", 3),
                               finding(ValueLevel::Low, EaseLevel::Easy, "a.py", 9),
                               finding(ValueLevel::Low, EaseLevel::Easy, "a.py", 2)};
    rank_findings(v);
    EXPECT_EQ(v[0].pair.secret_location.path, "a.py");
    EXPECT_EQ(v[0].pair.secret_location.line, 2);
    EXPECT_EQ(v[1].pair.secret_location.line, 9);
    EXPECT_EQ(v[2].pair.secret_location.path, "b.py");
}

TEST(RankFindings, EmptyStaysEmpty) {
    std::vector<RiskFinding> v;
    rank_findings(v);
    EXPECT_TRUE(v.empty());
}
