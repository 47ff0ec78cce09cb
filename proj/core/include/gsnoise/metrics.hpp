#pragma once

#include <map>
#include <span>

#include "gsnoise/bench_data.hpp"

namespace gsnoise {

/// Normalized RMSE in radical form:
///   sqrt( sum (y_i - f_i)^2 / sum (y_i - mean(y))^2 ).
/// 1 for the mean predictor, 0 for a perfect fit, unbounded above.
/// Throws DimensionError on length mismatch or n < 2 and DegenerateError
/// when the targets have zero spread.
double nrmse(std::span<const double> targets, std::span<const double> predictions);

/// Same as nrmse with the target dispersion precomputed; used on hot paths.
double nrmse_with_denominator(std::span<const double> targets,
                              std::span<const double> predictions, double target_ss);

/// Sum of squared deviations from the mean.
double sum_squared_deviation(std::span<const double> values);

/// Relative increase in error: (e_x - e_0) / (1 + e_0).
inline double rie(double e_x, double e_0) noexcept
{
    return (e_x - e_0) / (1.0 + e_0);
}

/// Equalized increase in error: e_x / (1 + e_0). Equals rie(e_x, e_0) + eie(e_0, e_0).
inline double eie(double e_x, double e_0) noexcept
{
    return e_x / (1.0 + e_0);
}

/// NRMSE per noise level for one model/dataset pair.
class ErrorByNoise {
public:
    void set(NoiseLevel level, double error);
    bool has(NoiseLevel level) const { return errors_.contains(level); }
    double at(NoiseLevel level) const;

    /// Both throw DegenerateError when the 0% baseline is absent.
    double rie_at(NoiseLevel level) const;
    double eie_at(NoiseLevel level) const;

    const std::map<NoiseLevel, double>& values() const noexcept { return errors_; }

private:
    double baseline() const;
    std::map<NoiseLevel, double> errors_;
};

} // namespace gsnoise
