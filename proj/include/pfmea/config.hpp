#pragma once

#include <map>
#include <vector>

#include "pfmea/model.hpp"

namespace pfmea {

enum class RankCriterion { WorstRpn, ExpectedCost, Duration };

// Default maps: occurrence r -> 10^(r - scale_max - 1), catch d -> (scale_max - d)/(scale_max - 1).
std::map<Rating, double> default_occurrence_probability(int scale_max);
std::map<Rating, double> default_catch_probability(int scale_max);

// Everything the analysis needs beyond the models themselves. Parsed from a
// config document; every field has a usable default so an empty document is
// a valid config.
struct AnalysisConfig {
    int scale_max = kDefaultScaleMax;

    // A row whose severity*occurrence exceeds this triggers the search for a
    // covering quality measure.
    int risk_threshold = kDefaultScaleMax * kDefaultScaleMax;

    // Candidates whose worst RPN exceeds this are dropped.
    int rpn_threshold = kDefaultScaleMax * kDefaultScaleMax * kDefaultScaleMax;

    // Insertion budget per process.
    int max_quality_measures = 10;

    // rating -> probability that the failure mode fires on one item.
    // Strictly increasing, all values in (0,1).
    std::map<Rating, double> occurrence_probability = default_occurrence_probability(kDefaultScaleMax);

    // detection rating -> probability that a fired defect is caught.
    // Non-increasing, zero at scale_max.
    std::map<Rating, double> catch_probability = default_catch_probability(kDefaultScaleMax);

    std::vector<RankCriterion> ranking_criteria = {RankCriterion::WorstRpn,
                                                   RankCriterion::ExpectedCost};

    // Cap on enumerated base processes; hitting it sets the truncated flag.
    int max_processes = 10000;

    // Replace the greedy improvement loop by enumeration of all quality
    // measure subsets up to max_quality_measures.
    bool exhaustive_qm = false;

    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Config with every field at its default for the given scale.
AnalysisConfig default_config(int scale_max = kDefaultScaleMax);

} // namespace pfmea
