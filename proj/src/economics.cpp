#include "pfmea/economics.hpp"

#include "pfmea/errors.hpp"

namespace pfmea {

double occurrence_probability(Rating occurrence, const AnalysisConfig& config) {
    auto it = config.occurrence_probability.find(occurrence);
    if (it == config.occurrence_probability.end())
        throw AnalysisError("no occurrence probability configured for rating " +
                            std::to_string(occurrence));
    return it->second;
}

double catch_probability(Rating detection, const AnalysisConfig& config) {
    auto it = config.catch_probability.find(detection);
    if (it == config.catch_probability.end())
        throw AnalysisError("no catch probability configured for rating " +
                            std::to_string(detection));
    return it->second;
}

EconomicReport economic_report(const Process& process, const PfmeaWorksheet& worksheet,
                               const Recipe& recipe, const EquipmentCatalog& catalog,
                               const AnalysisConfig& config) {
    EconomicReport report;

    double total_duration = 0.0;
    bool all_durations = true;
    for (const auto& step : process.steps) {
        const EquipmentService* es = catalog.find_service(step.uses);
        if (!es)
            throw AnalysisError("process step '" + step.id + "' uses unknown equipment service '" +
                                step.uses + "'");
        report.attempt_cost += es->cost;
        if (es->duration)
            total_duration += *es->duration;
        else
            all_durations = false;
    }
    if (all_durations) report.duration = total_duration;

    double none_caught = 1.0;
    double none_escaped = 1.0;
    for (const auto& row : worksheet.rows) {
        const double p_occ = occurrence_probability(row.occurrence, config);
        const double p_catch = catch_probability(row.detection, config);
        none_caught *= 1.0 - p_occ * p_catch;
        none_escaped *= 1.0 - p_occ * (1.0 - p_catch);
    }
    report.rejection_rate = 1.0 - none_caught;
    report.escape_rate = 1.0 - none_escaped;

    if (none_caught <= 0.0)
        throw AnalysisError("rejection rate reached 1; occurrence probabilities must be below 1");
    report.expected_cost_per_accepted = report.attempt_cost / none_caught;
    report.within_budget = report.expected_cost_per_accepted <= recipe.budget;
    return report;
}

} // namespace pfmea
