#include "gsnoise/metrics.hpp"

#include <cmath>
#include <string>

#include "gsnoise/error.hpp"

namespace gsnoise {

double sum_squared_deviation(std::span<const double> values)
{
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return ss;
}

double nrmse_with_denominator(std::span<const double> targets,
                              std::span<const double> predictions, double target_ss)
{
    double sse = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double e = targets[i] - predictions[i];
        sse += e * e;
    }
    return std::sqrt(sse / target_ss);
}

double nrmse(std::span<const double> targets, std::span<const double> predictions)
{
    if (targets.size() != predictions.size()) {
        throw DimensionError("nrmse: " + std::to_string(targets.size()) + " targets vs "
                             + std::to_string(predictions.size()) + " predictions");
    }
    if (targets.size() < 2) {
        throw DimensionError("nrmse needs at least two instances");
    }
    const double ss = sum_squared_deviation(targets);
    if (!(ss > 0.0)) {
        throw DegenerateError("nrmse undefined: targets have zero spread");
    }
    return nrmse_with_denominator(targets, predictions, ss);
}

void ErrorByNoise::set(NoiseLevel level, double error)
{
    if (!(error >= 0.0) || !std::isfinite(error)) {
        throw DomainError("error values must be finite and non-negative");
    }
    errors_[level] = error;
}

double ErrorByNoise::at(NoiseLevel level) const
{
    auto it = errors_.find(level);
    if (it == errors_.end()) {
        throw ConfigError("no error recorded at noise level " + level.label());
    }
    return it->second;
}

double ErrorByNoise::baseline() const
{
    auto it = errors_.find(NoiseLevel{});
    if (it == errors_.end()) {
        throw DegenerateError("RIE/EIE need the 0% noise baseline");
    }
    return it->second;
}

double ErrorByNoise::rie_at(NoiseLevel level) const
{
    return rie(at(level), baseline());
}

double ErrorByNoise::eie_at(NoiseLevel level) const
{
    return eie(at(level), baseline());
}

} // namespace gsnoise
