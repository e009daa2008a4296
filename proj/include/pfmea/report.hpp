#pragma once

#include <string>

#include "pfmea/explorer.hpp"
#include "pfmea/matcher.hpp"
#include "pfmea/model.hpp"
#include "pfmea/simulation.hpp"
#include "pfmea/worksheet.hpp"

namespace pfmea {

enum class ReportFormat { Table, Csv, Structured };

// Deterministic text: identical inputs produce identical bytes. No
// timestamps, no environment-dependent content. Structured means JSON.

std::string write_report(const PfmeaWorksheet& worksheet, ReportFormat format);
std::string write_report(const ExplorationResult& result, ReportFormat format);
std::string write_report(const MatchResult& result, ReportFormat format);
std::string write_report(const SimulationStats& stats, const EconomicReport& analytic,
                         const ComparisonReport& comparison, ReportFormat format);
std::string write_report(const ValidationReport& report, ReportFormat format);

} // namespace pfmea
