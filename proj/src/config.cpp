#include "pfmea/config.hpp"

#include <cmath>

namespace pfmea {

std::map<Rating, double> default_occurrence_probability(int scale_max) {
    std::map<Rating, double> m;
    for (int r = 1; r <= scale_max; ++r)
        m[r] = std::pow(10.0, r - scale_max - 1);
    return m;
}

std::map<Rating, double> default_catch_probability(int scale_max) {
    std::map<Rating, double> m;
    for (int d = 1; d <= scale_max; ++d)
        m[d] = static_cast<double>(scale_max - d) / (scale_max - 1);
    return m;
}

AnalysisConfig default_config(int scale_max) {
    AnalysisConfig c;
    c.scale_max = scale_max;
    c.risk_threshold = scale_max * scale_max;
    c.rpn_threshold = scale_max * scale_max * scale_max;
    c.occurrence_probability = default_occurrence_probability(scale_max);
    c.catch_probability = default_catch_probability(scale_max);
    return c;
}

} // namespace pfmea
