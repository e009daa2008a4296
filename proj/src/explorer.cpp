#include "pfmea/explorer.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <set>
#include <thread>

#include "pfmea/errors.hpp"
#include "pfmea/matcher.hpp"

namespace pfmea {

namespace {

std::string join_uses(const std::vector<ProcessStep>& steps) {
    std::string id;
    for (const auto& step : steps) {
        if (!id.empty()) id += '+';
        id += step.uses;
    }
    return id;
}

Process make_base_process(const Recipe& recipe, const std::vector<const EquipmentService*>& chosen) {
    Process process;
    process.steps.reserve(chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i)
        process.steps.push_back(
            {"s" + std::to_string(i + 1), chosen[i]->id, recipe.steps[i].id});
    process.id = join_uses(process.steps);
    return process;
}

std::string fresh_measure_step_id(const Process& process) {
    int measures = 0;
    for (const auto& step : process.steps)
        if (step.id.rfind("qm", 0) == 0) ++measures;
    return "qm" + std::to_string(measures + 1);
}

// Insert right after the last binding step, before trailing measures.
void insert_measure(Process& process, const std::string& equipment_service_id) {
    std::size_t position = 0;
    for (std::size_t i = 0; i < process.steps.size(); ++i)
        if (process.steps[i].binds) position = i + 1;
    process.steps.insert(process.steps.begin() + static_cast<std::ptrdiff_t>(position),
                         {fresh_measure_step_id(process), equipment_service_id, std::nullopt});
    process.id += "+" + equipment_service_id;
}

struct CoverOption {
    Rating detection = 0;
    std::string equipment_service;
};

// Best covering measure in the catalog: lowest detection, ties by equipment
// service id. Covers at scale_max leave detection unchanged and do not count.
std::optional<CoverOption> best_cover(const EquipmentCatalog& catalog,
                                      const std::string& equipment_failure_mode,
                                      int scale_max) {
    std::optional<CoverOption> best;
    for (const auto& eq : catalog.equipment) {
        for (const auto& es : eq.services) {
            if (!es.quality_measure) continue;
            for (const auto& cover : es.quality_measure->covers) {
                if (cover.equipment_failure_mode != equipment_failure_mode) continue;
                if (cover.detection >= scale_max) continue;
                if (!best || cover.detection < best->detection ||
                    (cover.detection == best->detection && es.id < best->equipment_service))
                    best = CoverOption{cover.detection, es.id};
            }
        }
    }
    return best;
}

UnreachableRow to_unreachable(const WorksheetRow& row, bool cover_exists) {
    return {row.process_step, row.recipe_step, row.equipment_failure_mode,
            row.service_failure_mode, row.risk(), cover_exists};
}

// Ids of every equipment service that can act as a quality measure, sorted.
std::vector<std::string> quality_measure_services(const EquipmentCatalog& catalog) {
    std::vector<std::string> ids;
    for (const auto& eq : catalog.equipment)
        for (const auto& es : eq.services)
            if (es.quality_measure) ids.push_back(es.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

struct BaseOutcome {
    std::vector<Candidate> kept;
    int rejected = 0;
};

bool passes_filters(const Candidate& candidate, const AnalysisConfig& config) {
    return candidate.worksheet.worst_rpn <= config.rpn_threshold &&
           candidate.economics.within_budget;
}

BaseOutcome evaluate_base_greedy(const Process& base, const Recipe& recipe,
                                 const EquipmentCatalog& catalog, const AnalysisConfig& config) {
    BaseOutcome outcome;
    Candidate candidate;
    candidate.process = base;
    candidate.worksheet = analyze_process(base, recipe, catalog, config);
    candidate.economics = economic_report(base, candidate.worksheet, recipe, catalog, config);

    ImproveOutcome improved = improve_until_threshold(candidate, catalog, recipe, config);
    if (std::holds_alternative<UnreachableQuality>(improved)) {
        outcome.rejected = 1;
        return outcome;
    }
    Candidate& result = std::get<Candidate>(improved);
    if (passes_filters(result, config))
        outcome.kept.push_back(std::move(result));
    else
        outcome.rejected = 1;
    return outcome;
}

BaseOutcome evaluate_base_exhaustive(const Process& base, const Recipe& recipe,
                                     const EquipmentCatalog& catalog,
                                     const AnalysisConfig& config,
                                     const std::vector<std::string>& measures) {
    BaseOutcome outcome;
    const std::size_t budget =
        std::min<std::size_t>(measures.size(),
                              static_cast<std::size_t>(std::max(config.max_quality_measures, 0)));

    std::vector<std::string> subset;
    auto evaluate_subset = [&]() {
        Process process = base;
        for (const auto& id : subset) {
            process.steps.push_back({fresh_measure_step_id(process), id, std::nullopt});
            process.id += "+" + id;
        }
        Candidate candidate;
        candidate.process = std::move(process);
        candidate.worksheet = analyze_process(candidate.process, recipe, catalog, config);
        candidate.economics =
            economic_report(candidate.process, candidate.worksheet, recipe, catalog, config);
        if (passes_filters(candidate, config))
            outcome.kept.push_back(std::move(candidate));
        else
            ++outcome.rejected;
    };

    // All subsets of the sorted measure list up to the insertion budget,
    // appended in sorted order after the binding steps.
    auto recurse = [&](auto&& self, std::size_t from) -> void {
        evaluate_subset();
        if (subset.size() == budget) return;
        for (std::size_t i = from; i < measures.size(); ++i) {
            subset.push_back(measures[i]);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    recurse(recurse, 0);
    return outcome;
}

} // namespace

std::vector<Process> enumerate_base_processes(const Recipe& recipe,
                                              const EquipmentCatalog& catalog,
                                              std::optional<std::size_t> cap,
                                              bool* truncated) {
    if (truncated) *truncated = false;

    // Fulfilling services per recipe step, in lexicographic id order.
    std::vector<std::vector<const EquipmentService*>> options(recipe.steps.size());
    for (std::size_t i = 0; i < recipe.steps.size(); ++i) {
        for (const auto& eq : catalog.equipment)
            for (const auto& es : eq.services)
                if (service_fulfills(es, recipe.steps[i])) options[i].push_back(&es);
        std::sort(options[i].begin(), options[i].end(),
                  [](const EquipmentService* a, const EquipmentService* b) {
                      return a->id < b->id;
                  });
        if (options[i].empty())
            throw ProducibilityError(recipe.steps[i].id,
                                     "no equipment service fulfills recipe step '" +
                                         recipe.steps[i].id + "'");
    }

    std::vector<Process> processes;
    std::vector<std::size_t> odometer(recipe.steps.size(), 0);
    std::vector<const EquipmentService*> chosen(recipe.steps.size());
    while (true) {
        if (cap && processes.size() == *cap) {
            if (truncated) *truncated = true;
            break;
        }
        for (std::size_t i = 0; i < odometer.size(); ++i) chosen[i] = options[i][odometer[i]];
        processes.push_back(make_base_process(recipe, chosen));

        // Advance the rightmost digit: lexicographic over option ids.
        std::size_t digit = odometer.size();
        while (digit > 0) {
            --digit;
            if (++odometer[digit] < options[digit].size()) break;
            odometer[digit] = 0;
            if (digit == 0) return processes;
        }
    }
    return processes;
}

ImproveOutcome improve_until_threshold(const Candidate& candidate,
                                       const EquipmentCatalog& catalog, const Recipe& recipe,
                                       const AnalysisConfig& config) {
    Candidate current = candidate;
    int insertions = 0;
    std::set<std::string> uncoverable;
    std::vector<UnreachableRow> unreachable_rows;
    bool budget_exhausted = false;

    while (true) {
        const WorksheetRow* needy = nullptr;
        for (const auto& row : current.worksheet.rows) {
            if (row.risk() <= config.risk_threshold) continue;
            if (row.detection != config.scale_max) continue;  // already covered
            if (uncoverable.count(row.equipment_failure_mode)) continue;
            needy = &row;
            break;
        }
        if (!needy) break;

        const auto cover = best_cover(catalog, needy->equipment_failure_mode, config.scale_max);
        if (!cover) {
            uncoverable.insert(needy->equipment_failure_mode);
            unreachable_rows.push_back(to_unreachable(*needy, false));
            continue;
        }
        if (insertions >= config.max_quality_measures) {
            budget_exhausted = true;
            for (const auto& row : current.worksheet.rows) {
                if (row.risk() > config.risk_threshold && row.detection == config.scale_max &&
                    !uncoverable.count(row.equipment_failure_mode))
                    unreachable_rows.push_back(to_unreachable(row, true));
            }
            break;
        }

        insert_measure(current.process, cover->equipment_service);
        ++insertions;
        current.worksheet = analyze_process(current.process, recipe, catalog, config);
    }

    if (!unreachable_rows.empty() || budget_exhausted)
        return UnreachableQuality{std::move(unreachable_rows), budget_exhausted};

    current.economics =
        economic_report(current.process, current.worksheet, recipe, catalog, config);
    return current;
}

void rank_candidates(std::vector<Candidate>& candidates, const AnalysisConfig& config) {
    auto key_less = [&config](const Candidate& a, const Candidate& b) {
        constexpr double kInfinity = std::numeric_limits<double>::infinity();
        for (const RankCriterion criterion : config.ranking_criteria) {
            switch (criterion) {
                case RankCriterion::WorstRpn:
                    if (a.worksheet.worst_rpn != b.worksheet.worst_rpn)
                        return a.worksheet.worst_rpn < b.worksheet.worst_rpn;
                    break;
                case RankCriterion::ExpectedCost:
                    if (a.economics.expected_cost_per_accepted !=
                        b.economics.expected_cost_per_accepted)
                        return a.economics.expected_cost_per_accepted <
                               b.economics.expected_cost_per_accepted;
                    break;
                case RankCriterion::Duration: {
                    const double da = a.economics.duration.value_or(kInfinity);
                    const double db = b.economics.duration.value_or(kInfinity);
                    if (da != db) return da < db;
                    break;
                }
            }
        }
        return a.process.id < b.process.id;
    };
    std::stable_sort(candidates.begin(), candidates.end(), key_less);
}

ExplorationResult explore(const Recipe& recipe, const EquipmentCatalog& catalog,
                          const AnalysisConfig& config) {
    ExplorationResult result;
    const auto cap = static_cast<std::size_t>(std::max(config.max_processes, 1));
    const std::vector<Process> bases =
        enumerate_base_processes(recipe, catalog, cap, &result.truncated);

    const std::vector<std::string> measures =
        config.exhaustive_qm ? quality_measure_services(catalog) : std::vector<std::string>{};

    auto evaluate = [&](const Process& base) {
        return config.exhaustive_qm
                   ? evaluate_base_exhaustive(base, recipe, catalog, config, measures)
                   : evaluate_base_greedy(base, recipe, catalog, config);
    };

    // Bases are independent; evaluate in parallel chunks and merge in base
    // order so the output cannot depend on scheduling.
    std::vector<BaseOutcome> outcomes(bases.size());
    const std::size_t workers = std::min<std::size_t>(
        std::max<std::size_t>(std::thread::hardware_concurrency(), 1), bases.size());
    if (workers > 1 && bases.size() >= 16) {
        std::vector<std::future<void>> futures;
        futures.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w]() {
                for (std::size_t i = w; i < bases.size(); i += workers)
                    outcomes[i] = evaluate(bases[i]);
            }));
        }
        for (auto& f : futures) f.get();
    } else {
        for (std::size_t i = 0; i < bases.size(); ++i) outcomes[i] = evaluate(bases[i]);
    }

    for (auto& outcome : outcomes) {
        result.rejected_count += outcome.rejected;
        for (auto& candidate : outcome.kept) result.ranked.push_back(std::move(candidate));
    }
    rank_candidates(result.ranked, config);
    return result;
}

} // namespace pfmea
