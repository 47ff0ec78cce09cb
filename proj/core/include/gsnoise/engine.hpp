#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gsnoise/bench_data.hpp"
#include "gsnoise/random.hpp"

namespace gsnoise {

/// Per-generation diagnostics. Index 0 is the initial population.
struct RunTrace {
    std::vector<double> best_train;
    /// Filled only when timing is requested.
    std::vector<double> generation_seconds;
    /// Bytes held by the live population (and provenance, for GSGP).
    std::vector<std::size_t> footprint_bytes;
};

struct EngineResult {
    /// Training NRMSE of the final population's best individual.
    double train_nrmse = 0.0;
    /// Test NRMSE of that same individual.
    double test_nrmse = 0.0;
    RunTrace trace;
};

/// Draws k indices uniformly with replacement and returns the one with the
/// lowest fitness; ties among distinct sampled indices are broken uniformly.
std::size_t tournament_select(std::span<const double> fitness, std::size_t k, Rng& rng);

/// Fitness used for selection: training NRMSE, with NaN mapped to +inf so a
/// numerically broken individual always loses.
double selection_fitness(std::span<const double> targets, std::span<const double> predictions,
                         double target_ss);

/// Rejects empty or mismatched train/test pairs and constant training targets.
void check_run_inputs(const Dataset& train, const Dataset& test);

} // namespace gsnoise
