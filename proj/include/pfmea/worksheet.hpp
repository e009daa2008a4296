#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfmea/config.hpp"
#include "pfmea/model.hpp"

namespace pfmea {

// One failure mode of one binding step. rpn = severity * occurrence * detection.
// detection is scale_max exactly when no quality measure downstream covers
// the equipment failure mode (covered_by absent).
struct WorksheetRow {
    std::string process_step;
    std::string recipe_step;
    std::string equipment_failure_mode;
    std::string service_failure_mode;
    Rating severity = 1;
    Rating occurrence = 1;
    Rating detection = 1;
    int rpn = 1;
    std::optional<std::string> covered_by;
    std::size_t process_position = 0;

    int risk() const { return severity * occurrence; }

    friend bool operator==(const WorksheetRow&, const WorksheetRow&) = default;
};

struct PfmeaWorksheet {
    std::string process_id;
    std::string recipe_id;
    std::vector<WorksheetRow> rows;
    int worst_rpn = 0;   // max rpn over rows, 0 for an empty sheet
    int worst_risk = 0;  // max severity*occurrence over rows

    friend bool operator==(const PfmeaWorksheet&, const PfmeaWorksheet&) = default;
};

int compute_rpn(Rating severity, Rating occurrence, Rating detection);

// Best detection for an equipment failure mode of the binding step at
// binding_position: the minimum detection rating among quality-measure steps
// strictly after that position whose spec covers the failure mode, together
// with the earliest step achieving it. (scale_max, absent) when nothing
// covers it. Binding steps never act as quality measures.
std::pair<Rating, std::optional<std::string>> effective_detection(
    const Process& process, std::size_t binding_position,
    const std::string& equipment_failure_mode, const EquipmentCatalog& catalog,
    int scale_max);

// One row per (binding step, equipment failure mode) whose service failure
// mode carries a severity in the bound recipe step. Rows are ordered by
// process position, then service failure mode id, then equipment failure
// mode id. Throws AnalysisError when the process does not produce the recipe.
PfmeaWorksheet analyze_process(const Process& process, const Recipe& recipe,
                               const EquipmentCatalog& catalog,
                               const AnalysisConfig& config);

} // namespace pfmea
