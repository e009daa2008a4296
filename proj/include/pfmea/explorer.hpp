#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfmea/config.hpp"
#include "pfmea/economics.hpp"
#include "pfmea/model.hpp"
#include "pfmea/worksheet.hpp"

namespace pfmea {

// A fully analyzed process: worksheet and economics always belong to the
// process, and the process produces the recipe under exploration.
struct Candidate {
    Process process;
    PfmeaWorksheet worksheet;
    EconomicReport economics;
};

// A worksheet row above the risk threshold that could not be covered.
struct UnreachableRow {
    std::string process_step;
    std::string recipe_step;
    std::string equipment_failure_mode;
    std::string service_failure_mode;
    int risk = 0;
    bool cover_exists = false;  // a measure exists but the insertion budget ran out

    friend bool operator==(const UnreachableRow&, const UnreachableRow&) = default;
};

struct UnreachableQuality {
    std::vector<UnreachableRow> rows;
    bool insertion_budget_exhausted = false;
};

using ImproveOutcome = std::variant<Candidate, UnreachableQuality>;

struct ExplorationResult {
    std::vector<Candidate> ranked;
    int rejected_count = 0;  // dropped by thresholds/budget plus unreachable-quality bases
    bool truncated = false;  // base enumeration hit max_processes
};

// Every way of binding the recipe steps, in recipe order, to fulfilling
// equipment services: the cartesian product over steps, enumerated in
// lexicographic order of equipment service ids per step. No quality
// measures. Process and step ids are derived from the structure. Throws
// ProducibilityError when a step has no fulfilling service; sets *truncated
// when cap cuts the enumeration short.
std::vector<Process> enumerate_base_processes(const Recipe& recipe,
                                              const EquipmentCatalog& catalog,
                                              std::optional<std::size_t> cap = std::nullopt,
                                              bool* truncated = nullptr);

// Greedy improvement: while some row has severity*occurrence above the risk
// threshold and no covering measure in the process, insert the catalog's
// best-detection covering measure right after the last binding step, then
// re-analyze. Covers rated at scale_max cannot lower detection and are
// ignored. At most max_quality_measures insertions.
ImproveOutcome improve_until_threshold(const Candidate& candidate,
                                       const EquipmentCatalog& catalog, const Recipe& recipe,
                                       const AnalysisConfig& config);

// Stable lexicographic order by the configured criteria (worst RPN, expected
// cost per accepted item, duration; all ascending, missing duration last),
// ties broken by process id.
void rank_candidates(std::vector<Candidate>& candidates, const AnalysisConfig& config);

// Enumerate, improve (or exhaustively augment when config.exhaustive_qm),
// filter by rpn_threshold and budget, rank.
ExplorationResult explore(const Recipe& recipe, const EquipmentCatalog& catalog,
                          const AnalysisConfig& config);

} // namespace pfmea
