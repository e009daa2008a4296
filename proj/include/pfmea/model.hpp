#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pfmea {

// Ratings share one integer scale 1..scale_max. The top of the scale is the
// worst end for detection (undetectable), the most frequent end for
// occurrence and the most harmful end for severity.
using Rating = int;

// Abstract currency and time units. No conversion anywhere.
using Money = double;

inline constexpr int kDefaultScaleMax = 10;

// ---------------------------------------------------------------------------
// Service library: the global vocabulary of abstract services.

enum class PropertyKind { Numeric, Enumeration, Boolean };

struct ServiceProperty {
    std::string name;
    PropertyKind kind = PropertyKind::Numeric;
    std::string unit;              // Numeric only
    std::set<std::string> values;  // Enumeration only

    friend bool operator==(const ServiceProperty&, const ServiceProperty&) = default;
};

struct ServiceFailureMode {
    std::string id;
    std::string description;

    friend bool operator==(const ServiceFailureMode&, const ServiceFailureMode&) = default;
};

struct Service {
    std::string id;
    std::string name;
    std::vector<ServiceProperty> properties;
    std::vector<ServiceFailureMode> failure_modes;

    const ServiceProperty* find_property(const std::string& property_name) const;
    const ServiceFailureMode* find_failure_mode(const std::string& failure_mode_id) const;

    friend bool operator==(const Service&, const Service&) = default;
};

struct ServiceLibrary {
    std::vector<Service> services;

    const Service* find_service(const std::string& id) const;

    friend bool operator==(const ServiceLibrary&, const ServiceLibrary&) = default;
};

// ---------------------------------------------------------------------------
// Equipment catalog: concrete machines and what they offer.

// Value a recipe step assigns to a service property.
using PropertyValue = std::variant<double, std::string, bool>;

struct NumericRange {
    // Inclusive on both ends; at least one bound present.
    std::optional<double> min;
    std::optional<double> max;

    friend bool operator==(const NumericRange&, const NumericRange&) = default;
};

struct EnumSubset {
    std::set<std::string> allowed;

    friend bool operator==(const EnumSubset&, const EnumSubset&) = default;
};

struct BooleanEquals {
    bool expected = false;

    friend bool operator==(const BooleanEquals&, const BooleanEquals&) = default;
};

using ConstraintPredicate = std::variant<NumericRange, EnumSubset, BooleanEquals>;

struct PropertyConstraint {
    std::string property;  // name of a property of the fulfilled service
    ConstraintPredicate predicate;

    friend bool operator==(const PropertyConstraint&, const PropertyConstraint&) = default;
};

struct EquipmentFailureMode {
    std::string id;         // unique across the whole catalog
    std::string refers_to;  // failure mode of the fulfilled service
    Rating occurrence = 1;

    friend bool operator==(const EquipmentFailureMode&, const EquipmentFailureMode&) = default;
};

enum class QualityMeasureKind { Inspection, Measurement, Correction, Rejection };

struct CoveredFailureMode {
    std::string equipment_failure_mode;
    Rating detection = 1;

    friend bool operator==(const CoveredFailureMode&, const CoveredFailureMode&) = default;
};

struct QualityMeasureSpec {
    QualityMeasureKind kind = QualityMeasureKind::Inspection;
    std::vector<CoveredFailureMode> covers;  // non-empty

    friend bool operator==(const QualityMeasureSpec&, const QualityMeasureSpec&) = default;
};

struct EquipmentService {
    std::string id;        // unique across the whole catalog
    std::string fulfills;  // abstract service id
    std::vector<PropertyConstraint> constraints;
    std::vector<EquipmentFailureMode> failure_modes;
    std::optional<QualityMeasureSpec> quality_measure;
    Money cost = 0.0;  // per execution
    std::optional<double> duration;

    friend bool operator==(const EquipmentService&, const EquipmentService&) = default;
};

struct Equipment {
    std::string id;
    std::string name;
    std::vector<EquipmentService> services;  // at least one

    friend bool operator==(const Equipment&, const Equipment&) = default;
};

struct EquipmentCatalog {
    std::vector<Equipment> equipment;

    const EquipmentService* find_service(const std::string& equipment_service_id) const;
    const EquipmentFailureMode* find_failure_mode(const std::string& equipment_failure_mode_id) const;

    friend bool operator==(const EquipmentCatalog&, const EquipmentCatalog&) = default;
};

// ---------------------------------------------------------------------------
// Recipe: the product-side view.

struct RecipeStepFailureMode {
    std::string belongs_to;  // failure mode of the addressed service
    Rating severity = 1;

    friend bool operator==(const RecipeStepFailureMode&, const RecipeStepFailureMode&) = default;
};

struct RecipeStep {
    std::string id;
    std::string addresses;  // abstract service id
    std::map<std::string, PropertyValue> property_values;
    std::vector<RecipeStepFailureMode> failure_modes;

    // Severity the product team assigned to a service failure mode, if any.
    std::optional<Rating> severity_for(const std::string& service_failure_mode) const;

    friend bool operator==(const RecipeStep&, const RecipeStep&) = default;
};

struct Recipe {
    std::string id;
    std::vector<RecipeStep> steps;  // non-empty, order is the required order
    // Per accepted item. Infinity = no budget check.
    Money budget = std::numeric_limits<double>::infinity();

    const RecipeStep* find_step(const std::string& id) const;
    std::optional<std::size_t> step_index(const std::string& id) const;

    friend bool operator==(const Recipe&, const Recipe&) = default;
};

// ---------------------------------------------------------------------------
// Process: recipe steps bound to equipment services, possibly interleaved
// with quality-measure steps.

struct ProcessStep {
    std::string id;
    std::string uses;                  // equipment service id
    std::optional<std::string> binds;  // recipe step id; absent for quality measures

    friend bool operator==(const ProcessStep&, const ProcessStep&) = default;
};

struct Process {
    std::string id;
    std::vector<ProcessStep> steps;

    friend bool operator==(const Process&, const Process&) = default;
};

// ---------------------------------------------------------------------------
// Validation. Findings are data, not failures: a report with zero findings
// means every invariant holds and every cross-reference resolves.

struct Finding {
    std::string entity;
    std::string field;
    std::string message;

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool clean() const { return findings.empty(); }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate_library(const ServiceLibrary& library);

// Requires a clean library; rating ranges are checked against scale_max.
ValidationReport validate_catalog(const EquipmentCatalog& catalog,
                                  const ServiceLibrary& library,
                                  int scale_max = kDefaultScaleMax);

ValidationReport validate_recipe(const Recipe& recipe,
                                 const ServiceLibrary& library,
                                 int scale_max = kDefaultScaleMax);

} // namespace pfmea
