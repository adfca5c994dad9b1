#include "secrisk/risk/score.hpp"

#include <algorithm>

namespace secrisk {

int scale_value(ValueLevel level, const ScaleTables& s) {
    switch (level) {
        case ValueLevel::High: return s.value_high;
        case ValueLevel::Moderate: return s.value_moderate;
        case ValueLevel::Low: return s.value_low;
        case ValueLevel::Unspecified: return s.value_unspecified;
    }
    return s.value_unspecified;
}

int scale_ease(EaseLevel level, const ScaleTables& s) {
    switch (level) {
        case EaseLevel::Easy: return s.ease_easy;
        case EaseLevel::Moderate: return s.ease_moderate;
        case EaseLevel::Difficult: return s.ease_difficult;
        case EaseLevel::VeryDifficult: return s.ease_very_difficult;
    }
    return s.ease_very_difficult;
}

long long compute_risk(int value_points, int ease_points) {
    return static_cast<long long>(value_points) * ease_points;
}

RiskFinding score_finding(SecretAssetPair pair, DatabaseKeywordSet keywords, ValueCategory value, EaseCategory ease,
                          const ScaleTables& scales) {
    RiskFinding f;
    f.value_points = scale_value(value.level, scales);
    f.ease_points = scale_ease(ease.level, scales);
    f.risk_score = compute_risk(f.value_points, f.ease_points);
    f.pair = std::move(pair);
    f.keywords = std::move(keywords);
    f.value = std::move(value);
    f.ease = std::move(ease);
    return f;
}

void rank_findings(std::vector<RiskFinding>& findings) {
    std::stable_sort(findings.begin(), findings.end(), [](const RiskFinding& a, const RiskFinding& b) {
        if (a.risk_score != b.risk_score) return a.risk_score > b.risk_score;
        if (a.value_points != b.value_points) return a.value_points > b.value_points;
        if (a.pair.secret_location.path != b.pair.secret_location.path)
            return a.pair.secret_location.path < b.pair.secret_location.path;
        return a.pair.secret_location.line < b.pair.secret_location.line;
    });
    for (std::size_t i = 0; i < findings.size(); ++i) findings[i].rank = static_cast<int>(i) + 1;
}

}  // namespace secrisk
