#pragma once

#include <string>

#include "pfmea/config.hpp"
#include "pfmea/errors.hpp"
#include "pfmea/model.hpp"

namespace pfmea {

// Documents are JSON trees, one per entity kind. Parsing checks structure
// and field kinds and rejects unknown fields; cross-reference validation is
// a separate step (validate_*). Every ParseError carries the path of the
// offending field, or line/column for malformed syntax.

ServiceLibrary parse_library(const std::string& text);
EquipmentCatalog parse_catalog(const std::string& text);
Recipe parse_recipe(const std::string& text);
AnalysisConfig parse_config(const std::string& text);
Process parse_process(const std::string& text);

std::string write_library(const ServiceLibrary& library);
std::string write_catalog(const EquipmentCatalog& catalog);
std::string write_recipe(const Recipe& recipe);
std::string write_config(const AnalysisConfig& config);
std::string write_process(const Process& process);

// Whole file as text; throws ParseError naming the path when unreadable.
std::string read_file(const std::string& path);

} // namespace pfmea
