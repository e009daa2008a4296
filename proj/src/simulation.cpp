#include "pfmea/simulation.hpp"

#include <cmath>

#include "pfmea/errors.hpp"

namespace pfmea {

namespace {

// splitmix64: tiny, stateless-seedable, stable across platforms.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Per-item substream determined by (seed, item index) only.
SplitMix64 item_stream(std::uint64_t seed, std::int64_t item) {
    SplitMix64 mix{seed ^ (static_cast<std::uint64_t>(item) * 0xd1342543de82ef95ULL)};
    mix.next();
    return mix;
}

} // namespace

SimulationStats simulate(const Process& process, const PfmeaWorksheet& worksheet,
                         const EquipmentCatalog& catalog, const AnalysisConfig& config,
                         std::int64_t items, std::uint64_t seed) {
    if (items < 1) throw AnalysisError("simulation needs at least one item");

    struct RowProb {
        double occurrence;
        double caught;
    };
    std::vector<RowProb> rows;
    rows.reserve(worksheet.rows.size());
    for (const auto& row : worksheet.rows)
        rows.push_back({occurrence_probability(row.occurrence, config),
                        catch_probability(row.detection, config)});

    Money attempt_cost = 0.0;
    for (const auto& step : process.steps) {
        const EquipmentService* es = catalog.find_service(step.uses);
        if (!es)
            throw AnalysisError("process step '" + step.id + "' uses unknown equipment service '" +
                                step.uses + "'");
        attempt_cost += es->cost;
    }

    SimulationStats stats;
    stats.items = items;
    stats.seed = seed;
    stats.total_cost = attempt_cost * static_cast<double>(items);

    for (std::int64_t item = 0; item < items; ++item) {
        SplitMix64 rng = item_stream(seed, item);
        bool any_caught = false;
        bool any_uncaught = false;
        for (const auto& row : rows) {
            if (rng.next_unit() >= row.occurrence) continue;
            if (rng.next_unit() < row.caught)
                any_caught = true;
            else
                any_uncaught = true;
        }
        if (any_caught) ++stats.rejected;
        if (any_uncaught) {
            ++stats.undetected;
            if (!any_caught) ++stats.escaped;
        }
    }
    return stats;
}

ComparisonReport compare_with_analytic(const SimulationStats& stats,
                                       const EconomicReport& report) {
    ComparisonReport comparison;
    const double n = static_cast<double>(stats.items);

    auto check = [&](const char* quantity, double analytic, std::int64_t count) {
        const double empirical = static_cast<double>(count) / n;
        const double sigma = std::sqrt(analytic * (1.0 - analytic) / n);
        if (std::abs(empirical - analytic) > 4.0 * sigma)
            comparison.flags.push_back({quantity, analytic, empirical, sigma});
    };

    check("rejection_rate", report.rejection_rate, stats.rejected);
    check("escape_rate", report.escape_rate, stats.undetected);
    return comparison;
}

} // namespace pfmea
