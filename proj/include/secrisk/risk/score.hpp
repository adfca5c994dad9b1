#pragma once

#include <vector>

#include "secrisk/category/mapper.hpp"
#include "secrisk/detector/types.hpp"
#include "secrisk/ease/analyzer.hpp"
#include "secrisk/keywords/keyword_set.hpp"

namespace secrisk {

struct ScaleTables {
    int value_high = 100, value_moderate = 40, value_low = 5, value_unspecified = 1;
    int ease_easy = 100, ease_moderate = 40, ease_difficult = 8, ease_very_difficult = 1;

    bool operator==(const ScaleTables&) const = default;
};

int scale_value(ValueLevel level, const ScaleTables& scales = {});
int scale_ease(EaseLevel level, const ScaleTables& scales = {});
long long compute_risk(int value_points, int ease_points);

struct RiskFinding {
    SecretAssetPair pair;
    DatabaseKeywordSet keywords;
    ValueCategory value;
    EaseCategory ease;
    int value_points = 1;
    int ease_points = 1;
    long long risk_score = 1;
    int rank = 0;
};

RiskFinding score_finding(SecretAssetPair pair, DatabaseKeywordSet keywords, ValueCategory value, EaseCategory ease,
                          const ScaleTables& scales = {});

/// Stable sort by risk score, then value points, both descending, then
/// secret path and line ascending; ranks are 1..n in that order.
void rank_findings(std::vector<RiskFinding>& findings);

}  // namespace secrisk
