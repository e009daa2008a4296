#include "pfmea/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace pfmea {

namespace {

using nlohmann::json;

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column),
                         "malformed document: " + std::string(e.what()));
    }
}

// A json value plus the path that leads to it, for diagnostics.
class Node {
public:
    Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(path_, message); }

    bool has(const char* key) const { return value_->is_object() && value_->contains(key); }

    Node child(const char* key) const {
        expect_object();
        if (!value_->contains(key)) fail(std::string("missing required field '") + key + "'");
        return {(*value_)[key], path_ + "/" + key};
    }

    std::optional<Node> optional_child(const char* key) const {
        expect_object();
        if (!value_->contains(key)) return std::nullopt;
        return Node{(*value_)[key], path_ + "/" + key};
    }

    void expect_object() const {
        if (!value_->is_object()) fail("expected an object");
    }

    void reject_unknown_keys(std::initializer_list<const char*> allowed) const {
        expect_object();
        for (auto it = value_->begin(); it != value_->end(); ++it) {
            bool known = false;
            for (const char* key : allowed)
                if (it.key() == key) {
                    known = true;
                    break;
                }
            if (!known) fail("unknown field '" + it.key() + "'");
        }
    }

    std::size_t array_size() const {
        if (!value_->is_array()) fail("expected a list");
        return value_->size();
    }

    Node element(std::size_t index) const {
        return {(*value_)[index], path_ + "/" + std::to_string(index)};
    }

    std::string as_string() const {
        if (!value_->is_string()) fail("expected a string");
        return value_->get<std::string>();
    }

    double as_number() const {
        if (!value_->is_number()) fail("expected a number");
        return value_->get<double>();
    }

    int as_int() const {
        if (!value_->is_number_integer()) fail("expected an integer");
        return value_->get<int>();
    }

    bool as_bool() const {
        if (!value_->is_boolean()) fail("expected a boolean");
        return value_->get<bool>();
    }

    const json& raw() const { return *value_; }

private:
    const json* value_;
    std::string path_;
};

std::string req_string(const Node& node, const char* key) { return node.child(key).as_string(); }

template <typename F>
void for_each_element(const Node& list, F&& f) {
    const std::size_t n = list.array_size();
    for (std::size_t i = 0; i < n; ++i) f(list.element(i));
}

// --- library ---------------------------------------------------------------

ServiceProperty parse_property(const Node& node) {
    node.reject_unknown_keys({"name", "kind", "unit", "values"});
    ServiceProperty property;
    property.name = req_string(node, "name");
    const std::string kind = req_string(node, "kind");
    if (kind == "numeric") {
        property.kind = PropertyKind::Numeric;
        property.unit = req_string(node, "unit");
        if (node.has("values")) node.child("values").fail("'values' is only for enumerations");
    } else if (kind == "enumeration") {
        property.kind = PropertyKind::Enumeration;
        const Node values = node.child("values");
        for_each_element(values,
                         [&](const Node& v) { property.values.insert(v.as_string()); });
        if (node.has("unit")) node.child("unit").fail("'unit' is only for numeric properties");
    } else if (kind == "boolean") {
        property.kind = PropertyKind::Boolean;
        if (node.has("unit")) node.child("unit").fail("'unit' is only for numeric properties");
        if (node.has("values")) node.child("values").fail("'values' is only for enumerations");
    } else {
        node.child("kind").fail("unknown property kind '" + kind +
                                "' (numeric, enumeration or boolean)");
    }
    return property;
}

Service parse_service(const Node& node) {
    node.reject_unknown_keys({"id", "name", "properties", "failure_modes"});
    Service service;
    service.id = req_string(node, "id");
    service.name = node.has("name") ? req_string(node, "name") : service.id;
    if (auto properties = node.optional_child("properties"))
        for_each_element(*properties, [&](const Node& p) {
            service.properties.push_back(parse_property(p));
        });
    if (auto failure_modes = node.optional_child("failure_modes"))
        for_each_element(*failure_modes, [&](const Node& fm) {
            fm.reject_unknown_keys({"id", "description"});
            service.failure_modes.push_back(
                {req_string(fm, "id"),
                 fm.has("description") ? req_string(fm, "description") : std::string{}});
        });
    return service;
}

// --- catalog ---------------------------------------------------------------

PropertyConstraint parse_constraint(const Node& node) {
    node.reject_unknown_keys({"property", "min", "max", "allowed", "expected"});
    PropertyConstraint constraint;
    constraint.property = req_string(node, "property");

    const bool numeric = node.has("min") || node.has("max");
    const bool enumerated = node.has("allowed");
    const bool boolean = node.has("expected");
    if (numeric + enumerated + boolean != 1)
        node.fail("constraint needs exactly one of min/max, allowed, or expected");

    if (numeric) {
        NumericRange range;
        if (node.has("min")) range.min = node.child("min").as_number();
        if (node.has("max")) range.max = node.child("max").as_number();
        constraint.predicate = range;
    } else if (enumerated) {
        EnumSubset subset;
        for_each_element(node.child("allowed"),
                         [&](const Node& v) { subset.allowed.insert(v.as_string()); });
        constraint.predicate = subset;
    } else {
        constraint.predicate = BooleanEquals{node.child("expected").as_bool()};
    }
    return constraint;
}

QualityMeasureKind parse_measure_kind(const Node& node) {
    const std::string kind = node.as_string();
    if (kind == "inspection") return QualityMeasureKind::Inspection;
    if (kind == "measurement") return QualityMeasureKind::Measurement;
    if (kind == "correction") return QualityMeasureKind::Correction;
    if (kind == "rejection") return QualityMeasureKind::Rejection;
    node.fail("unknown quality measure kind '" + kind +
              "' (inspection, measurement, correction or rejection)");
}

EquipmentService parse_equipment_service(const Node& node) {
    node.reject_unknown_keys({"id", "fulfills", "cost", "duration", "constraints",
                              "failure_modes", "quality_measure"});
    EquipmentService es;
    es.id = req_string(node, "id");
    es.fulfills = req_string(node, "fulfills");
    if (node.has("cost")) es.cost = node.child("cost").as_number();
    if (node.has("duration")) es.duration = node.child("duration").as_number();
    if (auto constraints = node.optional_child("constraints"))
        for_each_element(*constraints, [&](const Node& c) {
            es.constraints.push_back(parse_constraint(c));
        });
    if (auto failure_modes = node.optional_child("failure_modes"))
        for_each_element(*failure_modes, [&](const Node& fm) {
            fm.reject_unknown_keys({"id", "refers_to", "occurrence"});
            es.failure_modes.push_back({req_string(fm, "id"), req_string(fm, "refers_to"),
                                        fm.child("occurrence").as_int()});
        });
    if (auto measure = node.optional_child("quality_measure")) {
        measure->reject_unknown_keys({"kind", "covers"});
        QualityMeasureSpec spec;
        spec.kind = parse_measure_kind(measure->child("kind"));
        for_each_element(measure->child("covers"), [&](const Node& cover) {
            cover.reject_unknown_keys({"equipment_failure_mode", "detection"});
            spec.covers.push_back({req_string(cover, "equipment_failure_mode"),
                                   cover.child("detection").as_int()});
        });
        es.quality_measure = std::move(spec);
    }
    return es;
}

// --- recipe ----------------------------------------------------------------

PropertyValue parse_property_value(const Node& node) {
    const json& raw = node.raw();
    if (raw.is_number()) return raw.get<double>();
    if (raw.is_string()) return raw.get<std::string>();
    if (raw.is_boolean()) return raw.get<bool>();
    node.fail("property values must be numbers, strings or booleans");
}

RecipeStep parse_recipe_step(const Node& node) {
    node.reject_unknown_keys({"id", "addresses", "property_values", "failure_modes"});
    RecipeStep step;
    step.id = req_string(node, "id");
    step.addresses = req_string(node, "addresses");
    if (auto values = node.optional_child("property_values")) {
        values->expect_object();
        for (auto it = values->raw().begin(); it != values->raw().end(); ++it)
            step.property_values.emplace(
                it.key(), parse_property_value({it.value(), values->path() + "/" + it.key()}));
    }
    if (auto failure_modes = node.optional_child("failure_modes"))
        for_each_element(*failure_modes, [&](const Node& fm) {
            fm.reject_unknown_keys({"belongs_to", "severity"});
            step.failure_modes.push_back(
                {req_string(fm, "belongs_to"), fm.child("severity").as_int()});
        });
    return step;
}

// --- config ----------------------------------------------------------------

std::map<Rating, double> parse_probability_map(const Node& node, int scale_max,
                                               bool strictly_increasing, bool open_interval,
                                               bool zero_at_max) {
    node.expect_object();
    std::map<Rating, double> map;
    for (auto it = node.raw().begin(); it != node.raw().end(); ++it) {
        int rating = 0;
        try {
            std::size_t consumed = 0;
            rating = std::stoi(it.key(), &consumed);
            if (consumed != it.key().size()) throw std::invalid_argument(it.key());
        } catch (const std::exception&) {
            node.fail("map keys must be ratings, got '" + it.key() + "'");
        }
        if (rating < 1 || rating > scale_max)
            node.fail("rating " + it.key() + " outside [1, " + std::to_string(scale_max) + "]");
        map[rating] = Node{it.value(), node.path() + "/" + it.key()}.as_number();
    }
    for (int r = 1; r <= scale_max; ++r)
        if (!map.count(r)) node.fail("missing probability for rating " + std::to_string(r));

    for (const auto& [rating, p] : map) {
        const bool in_range = open_interval ? (p > 0.0 && p < 1.0) : (p >= 0.0 && p <= 1.0);
        if (!in_range)
            node.fail("probability for rating " + std::to_string(rating) + " must lie in " +
                      (open_interval ? "(0, 1)" : "[0, 1]"));
    }
    for (int r = 2; r <= scale_max; ++r) {
        if (strictly_increasing && map[r] <= map[r - 1])
            node.fail("probabilities must be strictly increasing; ratings " +
                      std::to_string(r - 1) + " and " + std::to_string(r) + " violate this");
        if (!strictly_increasing && map[r] > map[r - 1])
            node.fail("probabilities must be non-increasing; ratings " + std::to_string(r - 1) +
                      " and " + std::to_string(r) + " violate this");
    }
    if (zero_at_max && map[scale_max] != 0.0)
        node.fail("probability for the maximum rating " + std::to_string(scale_max) +
                  " must be 0 (uncovered failure modes catch nothing)");
    return map;
}

RankCriterion parse_criterion(const Node& node) {
    const std::string name = node.as_string();
    if (name == "worst_rpn") return RankCriterion::WorstRpn;
    if (name == "expected_cost") return RankCriterion::ExpectedCost;
    if (name == "duration") return RankCriterion::Duration;
    node.fail("unknown ranking criterion '" + name +
              "' (worst_rpn, expected_cost or duration)");
}

int positive_int(const Node& parent, const char* key, int minimum, int fallback) {
    if (!parent.has(key)) return fallback;
    const Node node = parent.child(key);
    const int value = node.as_int();
    if (value < minimum)
        node.fail(std::string("'") + key + "' must be at least " + std::to_string(minimum));
    return value;
}

} // namespace

ServiceLibrary parse_library(const std::string& text) {
    const json document = parse_text(text);
    const Node root{document, ""};
    root.reject_unknown_keys({"services"});
    ServiceLibrary library;
    for_each_element(root.child("services"), [&](const Node& s) {
        library.services.push_back(parse_service(s));
    });
    return library;
}

EquipmentCatalog parse_catalog(const std::string& text) {
    const json document = parse_text(text);
    const Node root{document, ""};
    root.reject_unknown_keys({"equipment"});
    EquipmentCatalog catalog;
    for_each_element(root.child("equipment"), [&](const Node& e) {
        e.reject_unknown_keys({"id", "name", "services"});
        Equipment equipment;
        equipment.id = req_string(e, "id");
        equipment.name = e.has("name") ? req_string(e, "name") : equipment.id;
        for_each_element(e.child("services"), [&](const Node& s) {
            equipment.services.push_back(parse_equipment_service(s));
        });
        catalog.equipment.push_back(std::move(equipment));
    });
    return catalog;
}

Recipe parse_recipe(const std::string& text) {
    const json document = parse_text(text);
    const Node root{document, ""};
    root.reject_unknown_keys({"id", "budget", "steps"});
    Recipe recipe;
    recipe.id = req_string(root, "id");
    if (root.has("budget")) recipe.budget = root.child("budget").as_number();
    const Node steps = root.child("steps");
    if (steps.array_size() == 0) steps.fail("recipe needs at least one step");
    for_each_element(steps, [&](const Node& s) {
        recipe.steps.push_back(parse_recipe_step(s));
    });
    return recipe;
}

AnalysisConfig parse_config(const std::string& text) {
    const json document = parse_text(text);
    const Node root{document, ""};
    root.reject_unknown_keys({"scale_max", "risk_threshold", "rpn_threshold",
                              "max_quality_measures", "occurrence_probability",
                              "catch_probability", "ranking_criteria", "max_processes",
                              "exhaustive_qm"});

    const int scale_max = positive_int(root, "scale_max", 2, kDefaultScaleMax);
    AnalysisConfig config = default_config(scale_max);
    config.risk_threshold =
        positive_int(root, "risk_threshold", 1, config.risk_threshold);
    config.rpn_threshold = positive_int(root, "rpn_threshold", 1, config.rpn_threshold);
    config.max_quality_measures =
        positive_int(root, "max_quality_measures", 0, config.max_quality_measures);
    config.max_processes = positive_int(root, "max_processes", 1, config.max_processes);
    if (root.has("exhaustive_qm")) config.exhaustive_qm = root.child("exhaustive_qm").as_bool();

    if (auto occurrence = root.optional_child("occurrence_probability"))
        config.occurrence_probability = parse_probability_map(
            *occurrence, scale_max, /*strictly_increasing=*/true,
            /*open_interval=*/true, /*zero_at_max=*/false);
    if (auto catch_map = root.optional_child("catch_probability"))
        config.catch_probability = parse_probability_map(
            *catch_map, scale_max, /*strictly_increasing=*/false,
            /*open_interval=*/false, /*zero_at_max=*/true);

    if (auto criteria = root.optional_child("ranking_criteria")) {
        config.ranking_criteria.clear();
        for_each_element(*criteria, [&](const Node& c) {
            const RankCriterion criterion = parse_criterion(c);
            for (const RankCriterion existing : config.ranking_criteria)
                if (existing == criterion) c.fail("duplicate ranking criterion");
            config.ranking_criteria.push_back(criterion);
        });
        if (config.ranking_criteria.empty()) criteria->fail("ranking criteria must not be empty");
    }
    return config;
}

Process parse_process(const std::string& text) {
    const json document = parse_text(text);
    const Node root{document, ""};
    root.reject_unknown_keys({"id", "steps"});
    Process process;
    process.id = req_string(root, "id");
    for_each_element(root.child("steps"), [&](const Node& s) {
        s.reject_unknown_keys({"id", "uses", "binds"});
        ProcessStep step;
        step.id = req_string(s, "id");
        step.uses = req_string(s, "uses");
        if (s.has("binds")) step.binds = req_string(s, "binds");
        process.steps.push_back(std::move(step));
    });
    return process;
}

// --- writers ---------------------------------------------------------------

namespace {

json property_to_json(const ServiceProperty& property) {
    json j{{"name", property.name}};
    switch (property.kind) {
        case PropertyKind::Numeric:
            j["kind"] = "numeric";
            j["unit"] = property.unit;
            break;
        case PropertyKind::Enumeration:
            j["kind"] = "enumeration";
            j["values"] = property.values;
            break;
        case PropertyKind::Boolean:
            j["kind"] = "boolean";
            break;
    }
    return j;
}

json constraint_to_json(const PropertyConstraint& constraint) {
    json j{{"property", constraint.property}};
    if (const auto* range = std::get_if<NumericRange>(&constraint.predicate)) {
        if (range->min) j["min"] = *range->min;
        if (range->max) j["max"] = *range->max;
    } else if (const auto* subset = std::get_if<EnumSubset>(&constraint.predicate)) {
        j["allowed"] = subset->allowed;
    } else {
        j["expected"] = std::get<BooleanEquals>(constraint.predicate).expected;
    }
    return j;
}

const char* measure_kind_name(QualityMeasureKind kind) {
    switch (kind) {
        case QualityMeasureKind::Inspection: return "inspection";
        case QualityMeasureKind::Measurement: return "measurement";
        case QualityMeasureKind::Correction: return "correction";
        case QualityMeasureKind::Rejection: return "rejection";
    }
    return "?";
}

json value_to_json(const PropertyValue& value) {
    if (const auto* number = std::get_if<double>(&value)) return *number;
    if (const auto* text = std::get_if<std::string>(&value)) return *text;
    return std::get<bool>(value);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string write_library(const ServiceLibrary& library) {
    json services = json::array();
    for (const auto& service : library.services) {
        json s{{"id", service.id}, {"name", service.name}};
        if (!service.properties.empty()) {
            s["properties"] = json::array();
            for (const auto& p : service.properties) s["properties"].push_back(property_to_json(p));
        }
        if (!service.failure_modes.empty()) {
            s["failure_modes"] = json::array();
            for (const auto& fm : service.failure_modes)
                s["failure_modes"].push_back({{"id", fm.id}, {"description", fm.description}});
        }
        services.push_back(std::move(s));
    }
    return dump({{"services", std::move(services)}});
}

std::string write_catalog(const EquipmentCatalog& catalog) {
    json equipment = json::array();
    for (const auto& eq : catalog.equipment) {
        json services = json::array();
        for (const auto& es : eq.services) {
            json s{{"id", es.id}, {"fulfills", es.fulfills}, {"cost", es.cost}};
            if (es.duration) s["duration"] = *es.duration;
            if (!es.constraints.empty()) {
                s["constraints"] = json::array();
                for (const auto& c : es.constraints) s["constraints"].push_back(constraint_to_json(c));
            }
            if (!es.failure_modes.empty()) {
                s["failure_modes"] = json::array();
                for (const auto& fm : es.failure_modes)
                    s["failure_modes"].push_back({{"id", fm.id},
                                                  {"refers_to", fm.refers_to},
                                                  {"occurrence", fm.occurrence}});
            }
            if (es.quality_measure) {
                json covers = json::array();
                for (const auto& cover : es.quality_measure->covers)
                    covers.push_back({{"equipment_failure_mode", cover.equipment_failure_mode},
                                      {"detection", cover.detection}});
                s["quality_measure"] = {{"kind", measure_kind_name(es.quality_measure->kind)},
                                        {"covers", std::move(covers)}};
            }
            services.push_back(std::move(s));
        }
        equipment.push_back({{"id", eq.id}, {"name", eq.name}, {"services", std::move(services)}});
    }
    return dump({{"equipment", std::move(equipment)}});
}

std::string write_recipe(const Recipe& recipe) {
    json steps = json::array();
    for (const auto& step : recipe.steps) {
        json s{{"id", step.id}, {"addresses", step.addresses}};
        if (!step.property_values.empty()) {
            json values = json::object();
            for (const auto& [name, value] : step.property_values)
                values[name] = value_to_json(value);
            s["property_values"] = std::move(values);
        }
        if (!step.failure_modes.empty()) {
            s["failure_modes"] = json::array();
            for (const auto& fm : step.failure_modes)
                s["failure_modes"].push_back(
                    {{"belongs_to", fm.belongs_to}, {"severity", fm.severity}});
        }
        steps.push_back(std::move(s));
    }
    json j{{"id", recipe.id}, {"steps", std::move(steps)}};
    if (std::isfinite(recipe.budget)) j["budget"] = recipe.budget;
    return dump(j);
}

std::string write_config(const AnalysisConfig& config) {
    auto map_to_json = [](const std::map<Rating, double>& map) {
        json j = json::object();
        for (const auto& [rating, p] : map) j[std::to_string(rating)] = p;
        return j;
    };
    json criteria = json::array();
    for (const RankCriterion criterion : config.ranking_criteria) {
        switch (criterion) {
            case RankCriterion::WorstRpn: criteria.push_back("worst_rpn"); break;
            case RankCriterion::ExpectedCost: criteria.push_back("expected_cost"); break;
            case RankCriterion::Duration: criteria.push_back("duration"); break;
        }
    }
    return dump({{"scale_max", config.scale_max},
                 {"risk_threshold", config.risk_threshold},
                 {"rpn_threshold", config.rpn_threshold},
                 {"max_quality_measures", config.max_quality_measures},
                 {"occurrence_probability", map_to_json(config.occurrence_probability)},
                 {"catch_probability", map_to_json(config.catch_probability)},
                 {"ranking_criteria", std::move(criteria)},
                 {"max_processes", config.max_processes},
                 {"exhaustive_qm", config.exhaustive_qm}});
}

std::string write_process(const Process& process) {
    json steps = json::array();
    for (const auto& step : process.steps) {
        json s{{"id", step.id}, {"uses", step.uses}};
        if (step.binds) s["binds"] = *step.binds;
        steps.push_back(std::move(s));
    }
    return dump({{"id", process.id}, {"steps", std::move(steps)}});
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot read file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace pfmea
