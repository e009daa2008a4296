#pragma once

#include <optional>

#include "pfmea/config.hpp"
#include "pfmea/model.hpp"
#include "pfmea/worksheet.hpp"

namespace pfmea {

struct EconomicReport {
    Money attempt_cost = 0.0;       // sum over all process steps, measures included
    double rejection_rate = 0.0;    // P(at least one defect is caught)
    double escape_rate = 0.0;       // P(at least one defect goes uncaught)
    Money expected_cost_per_accepted = 0.0;  // attempt_cost / (1 - rejection_rate)
    bool within_budget = true;
    std::optional<double> duration;  // sum when every step declares one

    friend bool operator==(const EconomicReport&, const EconomicReport&) = default;
};

double occurrence_probability(Rating occurrence, const AnalysisConfig& config);
double catch_probability(Rating detection, const AnalysisConfig& config);

// Failure modes fire independently; any caught defect scraps the item.
// Throws AnalysisError on a degenerate rejection rate of 1.
EconomicReport economic_report(const Process& process, const PfmeaWorksheet& worksheet,
                               const Recipe& recipe, const EquipmentCatalog& catalog,
                               const AnalysisConfig& config);

} // namespace pfmea
