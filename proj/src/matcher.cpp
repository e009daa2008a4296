#include "pfmea/matcher.hpp"

#include <algorithm>
#include <unordered_map>

namespace pfmea {

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::OrderViolation: return "orderViolation";
        case ViolationKind::UnboundRecipeStep: return "unboundRecipeStep";
        case ViolationKind::ServiceMismatch: return "serviceMismatch";
        case ViolationKind::ConstraintViolation: return "constraintViolation";
        case ViolationKind::NonQualityExtraStep: return "nonQualityExtraStep";
    }
    return "?";
}

bool constraint_satisfied(const PropertyConstraint& constraint, const PropertyValue& value) {
    if (const auto* range = std::get_if<NumericRange>(&constraint.predicate)) {
        const double* v = std::get_if<double>(&value);
        if (!v) return false;
        if (range->min && *v < *range->min) return false;
        if (range->max && *v > *range->max) return false;
        return true;
    }
    if (const auto* subset = std::get_if<EnumSubset>(&constraint.predicate)) {
        const std::string* v = std::get_if<std::string>(&value);
        return v && subset->allowed.count(*v) > 0;
    }
    const auto& expected = std::get<BooleanEquals>(constraint.predicate);
    const bool* v = std::get_if<bool>(&value);
    return v && *v == expected.expected;
}

bool service_fulfills(const EquipmentService& equipment_service, const RecipeStep& step) {
    if (equipment_service.fulfills != step.addresses) return false;
    for (const auto& constraint : equipment_service.constraints) {
        auto it = step.property_values.find(constraint.property);
        if (it == step.property_values.end()) return false;
        if (!constraint_satisfied(constraint, it->second)) return false;
    }
    return true;
}

MatchResult process_produces(const Process& process, const Recipe& recipe,
                             const EquipmentCatalog& catalog) {
    MatchResult result;
    auto violate = [&](ViolationKind kind, std::string detail) {
        result.violations.push_back({kind, std::move(detail)});
    };

    // How often each recipe step is bound, and the binding order actually seen.
    std::unordered_map<std::string, int> bound_count;
    std::vector<std::pair<std::size_t, const ProcessStep*>> binding_sequence;

    for (const auto& step : process.steps) {
        const EquipmentService* es = catalog.find_service(step.uses);
        if (!es)
            violate(ViolationKind::ServiceMismatch,
                    "process step '" + step.id + "' uses unknown equipment service '" +
                        step.uses + "'");

        if (!step.binds) {
            if (es && !es->quality_measure)
                violate(ViolationKind::NonQualityExtraStep,
                        "process step '" + step.id + "' binds no recipe step and '" + es->id +
                            "' carries no quality measure");
            continue;
        }

        const auto index = recipe.step_index(*step.binds);
        if (!index) {
            violate(ViolationKind::NonQualityExtraStep,
                    "process step '" + step.id + "' binds unknown recipe step '" + *step.binds +
                        "'");
            continue;
        }
        ++bound_count[*step.binds];
        binding_sequence.emplace_back(*index, &step);

        if (!es) continue;
        const RecipeStep& recipe_step = recipe.steps[*index];
        if (es->fulfills != recipe_step.addresses) {
            violate(ViolationKind::ServiceMismatch,
                    "process step '" + step.id + "' uses '" + es->id + "' fulfilling '" +
                        es->fulfills + "' but recipe step '" + recipe_step.id + "' addresses '" +
                        recipe_step.addresses + "'");
            continue;
        }
        for (const auto& constraint : es->constraints) {
            auto it = recipe_step.property_values.find(constraint.property);
            if (it == recipe_step.property_values.end())
                violate(ViolationKind::ConstraintViolation,
                        "recipe step '" + recipe_step.id + "' provides no value for property '" +
                            constraint.property + "' constrained by '" + es->id + "'");
            else if (!constraint_satisfied(constraint, it->second))
                violate(ViolationKind::ConstraintViolation,
                        "value of property '" + constraint.property + "' in recipe step '" +
                            recipe_step.id + "' violates the constraint of '" + es->id + "'");
        }
    }

    for (const auto& recipe_step : recipe.steps) {
        const int n = bound_count.count(recipe_step.id) ? bound_count[recipe_step.id] : 0;
        if (n == 0)
            violate(ViolationKind::UnboundRecipeStep,
                    "recipe step '" + recipe_step.id + "' is not bound by any process step");
        else if (n > 1)
            violate(ViolationKind::OrderViolation,
                    "recipe step '" + recipe_step.id + "' is bound " + std::to_string(n) +
                        " times");
    }

    // The recipe indices of the binding steps must be strictly increasing; a
    // permutation always breaks this at some adjacent pair.
    for (std::size_t k = 1; k < binding_sequence.size(); ++k) {
        if (binding_sequence[k].first <= binding_sequence[k - 1].first)
            violate(ViolationKind::OrderViolation,
                    "process step '" + binding_sequence[k].second->id + "' binds '" +
                        *binding_sequence[k].second->binds + "' out of recipe order");
    }

    result.produces = result.violations.empty();
    if (result.produces) {
        result.bindings.reserve(binding_sequence.size());
        for (const auto& [index, step] : binding_sequence)
            result.bindings.push_back({recipe.steps[index].id, step->id});
    }
    return result;
}

} // namespace pfmea
