#include "gsnoise/engine.hpp"

#include <cmath>
#include <limits>

#include "gsnoise/error.hpp"
#include "gsnoise/metrics.hpp"

namespace gsnoise {

std::size_t tournament_select(std::span<const double> fitness, std::size_t k, Rng& rng)
{
    if (fitness.empty() || k == 0) {
        throw ConfigError("tournament needs a non-empty population and k >= 1");
    }
    std::size_t contenders[64];
    std::size_t tied = 0;
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t draw = 0; draw < k; ++draw) {
        const std::size_t idx = uniform_index(rng, fitness.size());
        const double f = fitness[idx];
        if (!any || f < best) {
            best = f;
            contenders[0] = idx;
            tied = 1;
            any = true;
        } else if (f == best) {
            bool seen = false;
            for (std::size_t t = 0; t < tied; ++t) {
                seen = seen || contenders[t] == idx;
            }
            if (!seen && tied < std::size(contenders)) {
                contenders[tied++] = idx;
            }
        }
    }
    return tied == 1 ? contenders[0] : contenders[uniform_index(rng, tied)];
}

double selection_fitness(std::span<const double> targets, std::span<const double> predictions,
                         double target_ss)
{
    const double f = nrmse_with_denominator(targets, predictions, target_ss);
    return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
}

void check_run_inputs(const Dataset& train, const Dataset& test)
{
    if (train.size() < 2 || test.size() < 2) {
        throw ConfigError("train and test partitions need at least two instances each");
    }
    if (train.dims() != test.dims()) {
        throw DimensionError("train and test partitions have different dimensionality");
    }
    if (!(sum_squared_deviation(train.targets) > 0.0)) {
        throw DegenerateError("training targets have zero spread; NRMSE is undefined");
    }
}

} // namespace gsnoise
