#include "pfmea/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace pfmea {

const ServiceProperty* Service::find_property(const std::string& property_name) const {
    for (const auto& p : properties)
        if (p.name == property_name) return &p;
    return nullptr;
}

const ServiceFailureMode* Service::find_failure_mode(const std::string& failure_mode_id) const {
    for (const auto& fm : failure_modes)
        if (fm.id == failure_mode_id) return &fm;
    return nullptr;
}

const Service* ServiceLibrary::find_service(const std::string& id) const {
    for (const auto& s : services)
        if (s.id == id) return &s;
    return nullptr;
}

const EquipmentService* EquipmentCatalog::find_service(const std::string& equipment_service_id) const {
    for (const auto& eq : equipment)
        for (const auto& es : eq.services)
            if (es.id == equipment_service_id) return &es;
    return nullptr;
}

const EquipmentFailureMode* EquipmentCatalog::find_failure_mode(
    const std::string& equipment_failure_mode_id) const {
    for (const auto& eq : equipment)
        for (const auto& es : eq.services)
            for (const auto& fm : es.failure_modes)
                if (fm.id == equipment_failure_mode_id) return &fm;
    return nullptr;
}

std::optional<Rating> RecipeStep::severity_for(const std::string& service_failure_mode) const {
    for (const auto& fm : failure_modes)
        if (fm.belongs_to == service_failure_mode) return fm.severity;
    return std::nullopt;
}

const RecipeStep* Recipe::find_step(const std::string& step_id) const {
    for (const auto& s : steps)
        if (s.id == step_id) return &s;
    return nullptr;
}

std::optional<std::size_t> Recipe::step_index(const std::string& step_id) const {
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (steps[i].id == step_id) return i;
    return std::nullopt;
}

namespace {

class Findings {
public:
    void add(const std::string& entity, const std::string& field, std::string message) {
        report_.findings.push_back({entity, field, std::move(message)});
    }

    ValidationReport take() { return std::move(report_); }

private:
    ValidationReport report_;
};

bool rating_in_range(Rating r, int scale_max) { return r >= 1 && r <= scale_max; }

const char* kind_name(PropertyKind k) {
    switch (k) {
        case PropertyKind::Numeric: return "numeric";
        case PropertyKind::Enumeration: return "enumeration";
        case PropertyKind::Boolean: return "boolean";
    }
    return "?";
}

// Value kind check. For enumerations the declared value set is the domain of
// the type, so membership is part of the kind.
bool value_matches_kind(const ServiceProperty& prop, const PropertyValue& value) {
    switch (prop.kind) {
        case PropertyKind::Numeric:
            return std::holds_alternative<double>(value);
        case PropertyKind::Enumeration:
            return std::holds_alternative<std::string>(value) &&
                   prop.values.count(std::get<std::string>(value)) > 0;
        case PropertyKind::Boolean:
            return std::holds_alternative<bool>(value);
    }
    return false;
}

void check_constraint(const PropertyConstraint& c, const Service& service,
                      const std::string& owner, Findings& out) {
    const ServiceProperty* prop = service.find_property(c.property);
    if (!prop) {
        out.add(owner, "constraints",
                "constraint references property '" + c.property + "' not declared on service '" +
                    service.id + "'");
        return;
    }
    if (const auto* range = std::get_if<NumericRange>(&c.predicate)) {
        if (prop->kind != PropertyKind::Numeric) {
            out.add(owner, "constraints",
                    "numeric range constraint on " + std::string(kind_name(prop->kind)) +
                        " property '" + c.property + "'");
            return;
        }
        if (!range->min && !range->max)
            out.add(owner, "constraints",
                    "numeric range on '" + c.property + "' has no bounds");
        if (range->min && range->max && *range->min > *range->max)
            out.add(owner, "constraints",
                    "numeric range on '" + c.property + "' has min > max");
    } else if (const auto* subset = std::get_if<EnumSubset>(&c.predicate)) {
        if (prop->kind != PropertyKind::Enumeration) {
            out.add(owner, "constraints",
                    "enumeration constraint on " + std::string(kind_name(prop->kind)) +
                        " property '" + c.property + "'");
            return;
        }
        for (const auto& v : subset->allowed)
            if (!prop->values.count(v))
                out.add(owner, "constraints",
                        "allowed value '" + v + "' is not in the declared value set of '" +
                            c.property + "'");
    } else {
        if (prop->kind != PropertyKind::Boolean)
            out.add(owner, "constraints",
                    "boolean constraint on " + std::string(kind_name(prop->kind)) +
                        " property '" + c.property + "'");
    }
}

} // namespace

ValidationReport validate_library(const ServiceLibrary& library) {
    Findings out;
    std::unordered_set<std::string> service_ids;
    for (const auto& service : library.services) {
        if (service.id.empty()) out.add(service.id, "id", "service id is empty");
        if (!service_ids.insert(service.id).second)
            out.add(service.id, "id", "duplicate service id '" + service.id + "'");

        std::unordered_set<std::string> property_names;
        for (const auto& prop : service.properties) {
            if (!property_names.insert(prop.name).second)
                out.add(service.id, "properties",
                        "duplicate property name '" + prop.name + "'");
            if (prop.kind == PropertyKind::Numeric && prop.unit.empty())
                out.add(service.id, "properties",
                        "numeric property '" + prop.name + "' has an empty unit");
            if (prop.kind == PropertyKind::Enumeration && prop.values.empty())
                out.add(service.id, "properties",
                        "enumeration property '" + prop.name + "' has an empty value set");
        }

        std::unordered_set<std::string> fm_ids;
        for (const auto& fm : service.failure_modes)
            if (!fm_ids.insert(fm.id).second)
                out.add(service.id, "failure_modes",
                        "duplicate failure mode id '" + fm.id + "'");
    }
    return out.take();
}

ValidationReport validate_catalog(const EquipmentCatalog& catalog,
                                  const ServiceLibrary& library,
                                  int scale_max) {
    Findings out;
    std::unordered_set<std::string> equipment_ids;
    std::unordered_set<std::string> es_ids;
    std::unordered_set<std::string> efm_ids;

    // Pass 1: structure, local references, id uniqueness. Equipment service
    // and equipment failure mode ids must be unique across the catalog so
    // that quality measures and process steps can reference them directly.
    for (const auto& eq : catalog.equipment) {
        if (!equipment_ids.insert(eq.id).second)
            out.add(eq.id, "id", "duplicate equipment id '" + eq.id + "'");
        if (eq.services.empty())
            out.add(eq.id, "services", "equipment declares no services");

        for (const auto& es : eq.services) {
            if (!es_ids.insert(es.id).second)
                out.add(es.id, "id", "duplicate equipment service id '" + es.id + "'");
            if (es.cost < 0 || !std::isfinite(es.cost))
                out.add(es.id, "cost", "cost must be a nonnegative finite number");
            if (es.duration && (*es.duration < 0 || !std::isfinite(*es.duration)))
                out.add(es.id, "duration", "duration must be a nonnegative finite number");

            const Service* service = library.find_service(es.fulfills);
            if (!service) {
                out.add(es.id, "fulfills",
                        "unresolved service '" + es.fulfills + "'");
            } else {
                for (const auto& c : es.constraints)
                    check_constraint(c, *service, es.id, out);
                for (const auto& fm : es.failure_modes)
                    if (!service->find_failure_mode(fm.refers_to))
                        out.add(fm.id, "refers_to",
                                "failure mode '" + fm.refers_to +
                                    "' is not declared on service '" + service->id + "'");
            }

            for (const auto& fm : es.failure_modes) {
                if (!efm_ids.insert(fm.id).second)
                    out.add(fm.id, "id",
                            "duplicate equipment failure mode id '" + fm.id + "'");
                if (!rating_in_range(fm.occurrence, scale_max))
                    out.add(fm.id, "occurrence",
                            "occurrence rating " + std::to_string(fm.occurrence) +
                                " outside [1, " + std::to_string(scale_max) + "]");
            }
        }
    }

    // Pass 2: quality measure coverage may point at any equipment failure
    // mode in the catalog, so it needs the full id set.
    for (const auto& eq : catalog.equipment) {
        for (const auto& es : eq.services) {
            if (!es.quality_measure) continue;
            const auto& qm = *es.quality_measure;
            if (qm.covers.empty())
                out.add(es.id, "quality_measure", "covered failure mode list is empty");
            for (const auto& cover : qm.covers) {
                if (!efm_ids.count(cover.equipment_failure_mode))
                    out.add(es.id, "quality_measure",
                            "covered failure mode references unknown equipment failure mode '" +
                                cover.equipment_failure_mode + "'");
                if (!rating_in_range(cover.detection, scale_max))
                    out.add(es.id, "quality_measure",
                            "detection rating " + std::to_string(cover.detection) +
                                " outside [1, " + std::to_string(scale_max) + "]");
            }
        }
    }
    return out.take();
}

ValidationReport validate_recipe(const Recipe& recipe,
                                 const ServiceLibrary& library,
                                 int scale_max) {
    Findings out;
    if (recipe.steps.empty())
        out.add(recipe.id, "steps", "recipe has no steps");
    if (recipe.budget < 0)
        out.add(recipe.id, "budget", "budget must be nonnegative");

    std::unordered_set<std::string> step_ids;
    for (const auto& step : recipe.steps) {
        if (!step_ids.insert(step.id).second)
            out.add(step.id, "id", "duplicate recipe step id '" + step.id + "'");

        const Service* service = library.find_service(step.addresses);
        if (!service) {
            out.add(step.id, "addresses", "unresolved service '" + step.addresses + "'");
            continue;
        }

        for (const auto& [name, value] : step.property_values) {
            const ServiceProperty* prop = service->find_property(name);
            if (!prop) {
                out.add(step.id, "property_values",
                        "value for property '" + name + "' not declared on service '" +
                            service->id + "'");
                continue;
            }
            if (!value_matches_kind(*prop, value))
                out.add(step.id, "property_values",
                        "value for '" + name + "' does not match the " +
                            kind_name(prop->kind) + " property kind");
        }

        std::unordered_set<std::string> rated;
        for (const auto& fm : step.failure_modes) {
            if (!service->find_failure_mode(fm.belongs_to))
                out.add(step.id, "failure_modes",
                        "failure mode '" + fm.belongs_to + "' is not declared on service '" +
                            service->id + "'");
            if (!rated.insert(fm.belongs_to).second)
                out.add(step.id, "failure_modes",
                        "more than one severity rating for failure mode '" + fm.belongs_to + "'");
            if (!rating_in_range(fm.severity, scale_max))
                out.add(step.id, "failure_modes",
                        "severity rating " + std::to_string(fm.severity) + " outside [1, " +
                            std::to_string(scale_max) + "]");
        }
    }
    return out.take();
}

} // namespace pfmea
