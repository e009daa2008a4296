#pragma once

#include <string>
#include <vector>

#include "pfmea/model.hpp"

namespace pfmea {

enum class ViolationKind {
    OrderViolation,
    UnboundRecipeStep,
    ServiceMismatch,
    ConstraintViolation,
    NonQualityExtraStep,
};

const char* to_string(ViolationKind kind);

struct MatchViolation {
    ViolationKind kind;
    std::string detail;

    friend bool operator==(const MatchViolation&, const MatchViolation&) = default;
};

struct Binding {
    std::string recipe_step;
    std::string process_step;

    friend bool operator==(const Binding&, const Binding&) = default;
};

// Result of asking whether a process produces a recipe. produces is true iff
// violations is empty; bindings then cover every recipe step exactly once,
// in recipe order.
struct MatchResult {
    bool produces = false;
    std::vector<Binding> bindings;
    std::vector<MatchViolation> violations;
};

// True iff the value lies within the range (inclusive both ends), the
// allowed set, or equals the expected boolean. The value kind must match the
// constraint kind; validation guarantees that for parsed models.
bool constraint_satisfied(const PropertyConstraint& constraint, const PropertyValue& value);

// True iff the equipment service fulfills the step's service and every
// constraint is satisfied by the step's value for that property. A step that
// provides no value for a constrained property does not fulfill.
bool service_fulfills(const EquipmentService& equipment_service, const RecipeStep& step);

// A process produces a recipe iff its binding steps, in process order, bind
// exactly the recipe steps in recipe order, each binding step's equipment
// service fulfills its recipe step, and every non-binding step carries a
// quality measure. Violations enumerate every failed condition.
MatchResult process_produces(const Process& process, const Recipe& recipe,
                             const EquipmentCatalog& catalog);

} // namespace pfmea
