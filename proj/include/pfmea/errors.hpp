#pragma once

#include <stdexcept>
#include <string>

namespace pfmea {

// Document could not be read: malformed syntax or a schema violation.
// `path` points at the offending field ("/equipment/0/services/1/cost")
// or carries "line N, column M" for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// A request that cannot be answered for the given models, e.g. analyzing a
// process that does not produce the recipe.
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& message)
        : std::runtime_error(message) {}
};

// No equipment service in the catalog fulfills one of the recipe steps.
class ProducibilityError : public AnalysisError {
public:
    ProducibilityError(std::string recipe_step, const std::string& message)
        : AnalysisError(message), recipe_step_(std::move(recipe_step)) {}

    const std::string& recipe_step() const { return recipe_step_; }

private:
    std::string recipe_step_;
};

} // namespace pfmea
