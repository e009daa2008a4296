#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfmea/config.hpp"
#include "pfmea/economics.hpp"
#include "pfmea/model.hpp"
#include "pfmea/worksheet.hpp"

namespace pfmea {

// Item-by-item counts. escaped counts shipped items only, so
// rejected + escaped <= items; undetected counts every item that carries at
// least one uncaught defect, rejected or not, and is the estimator matched
// by the analytic escape rate.
struct SimulationStats {
    std::int64_t items = 0;
    std::int64_t rejected = 0;
    std::int64_t escaped = 0;
    std::int64_t undetected = 0;
    Money total_cost = 0.0;  // items * attempt cost
    std::uint64_t seed = 0;

    friend bool operator==(const SimulationStats&, const SimulationStats&) = default;
};

struct RateFlag {
    std::string quantity;  // "rejection_rate" or "escape_rate"
    double analytic = 0.0;
    double empirical = 0.0;
    double sigma = 0.0;

    friend bool operator==(const RateFlag&, const RateFlag&) = default;
};

struct ComparisonReport {
    std::vector<RateFlag> flags;

    bool ok() const { return flags.empty(); }
};

// Stochastic oracle for the analytic rates: per item, every worksheet row
// fires a defect with its occurrence probability and a fired defect is
// caught with its catch probability. Any caught defect rejects the item.
// The random stream is a counter-based generator derived from (seed, item),
// identical across runs and platforms.
SimulationStats simulate(const Process& process, const PfmeaWorksheet& worksheet,
                         const EquipmentCatalog& catalog, const AnalysisConfig& config,
                         std::int64_t items, std::uint64_t seed);

// Flags every rate whose empirical estimate deviates from the analytic value
// by more than 4 binomial standard deviations.
ComparisonReport compare_with_analytic(const SimulationStats& stats,
                                       const EconomicReport& report);

} // namespace pfmea
