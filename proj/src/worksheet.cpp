#include "pfmea/worksheet.hpp"

#include <algorithm>

#include "pfmea/errors.hpp"
#include "pfmea/matcher.hpp"

namespace pfmea {

int compute_rpn(Rating severity, Rating occurrence, Rating detection) {
    return severity * occurrence * detection;
}

std::pair<Rating, std::optional<std::string>> effective_detection(
    const Process& process, std::size_t binding_position,
    const std::string& equipment_failure_mode, const EquipmentCatalog& catalog,
    int scale_max) {
    Rating best = scale_max;
    std::optional<std::string> covered_by;
    for (std::size_t i = binding_position + 1; i < process.steps.size(); ++i) {
        const ProcessStep& step = process.steps[i];
        if (step.binds) continue;  // production role, provides no detection
        const EquipmentService* es = catalog.find_service(step.uses);
        if (!es || !es->quality_measure) continue;
        for (const auto& cover : es->quality_measure->covers) {
            if (cover.equipment_failure_mode != equipment_failure_mode) continue;
            if (cover.detection < best) {
                best = cover.detection;
                covered_by = step.id;
            }
        }
    }
    return {best, covered_by};
}

PfmeaWorksheet analyze_process(const Process& process, const Recipe& recipe,
                               const EquipmentCatalog& catalog,
                               const AnalysisConfig& config) {
    const MatchResult match = process_produces(process, recipe, catalog);
    if (!match.produces) {
        std::string message =
            "process '" + process.id + "' does not produce recipe '" + recipe.id + "'";
        for (const auto& v : match.violations)
            message += "\n  " + std::string(to_string(v.kind)) + ": " + v.detail;
        throw AnalysisError(message);
    }

    PfmeaWorksheet sheet;
    sheet.process_id = process.id;
    sheet.recipe_id = recipe.id;

    for (std::size_t position = 0; position < process.steps.size(); ++position) {
        const ProcessStep& step = process.steps[position];
        if (!step.binds) continue;
        const EquipmentService& es = *catalog.find_service(step.uses);
        const RecipeStep& recipe_step = *recipe.find_step(*step.binds);

        for (const auto& efm : es.failure_modes) {
            const auto severity = recipe_step.severity_for(efm.refers_to);
            if (!severity) continue;  // the product does not care about this one

            auto [detection, covered_by] =
                effective_detection(process, position, efm.id, catalog, config.scale_max);
            WorksheetRow row;
            row.process_step = step.id;
            row.recipe_step = recipe_step.id;
            row.equipment_failure_mode = efm.id;
            row.service_failure_mode = efm.refers_to;
            row.severity = *severity;
            row.occurrence = efm.occurrence;
            row.detection = detection;
            row.rpn = compute_rpn(*severity, efm.occurrence, detection);
            row.covered_by = std::move(covered_by);
            row.process_position = position;
            sheet.rows.push_back(std::move(row));
        }
    }

    std::stable_sort(sheet.rows.begin(), sheet.rows.end(),
                     [](const WorksheetRow& a, const WorksheetRow& b) {
                         return std::tie(a.process_position, a.service_failure_mode,
                                         a.equipment_failure_mode) <
                                std::tie(b.process_position, b.service_failure_mode,
                                         b.equipment_failure_mode);
                     });
    for (const auto& row : sheet.rows) {
        sheet.worst_rpn = std::max(sheet.worst_rpn, row.rpn);
        sheet.worst_risk = std::max(sheet.worst_risk, row.risk());
    }
    return sheet;
}

} // namespace pfmea
