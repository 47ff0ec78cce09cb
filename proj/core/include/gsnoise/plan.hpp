#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gsnoise/gp.hpp"
#include "gsnoise/gsgp.hpp"
#include "gsnoise/records.hpp"

namespace gsnoise {

/// One unit of work. The seed is a pure function of the plan's base seed and
/// the cell coordinates.
struct Cell {
    Method method;
    std::string dataset;
    NoiseLevel noise;
    int sample_id;
    int rep_index;
    std::uint64_t seed;

    std::string key() const;
};

struct ExperimentPlan {
    std::vector<std::string> datasets;
    std::vector<NoiseLevel> noise_levels;
    std::vector<Method> methods{Method::GP, Method::GSGP};
    /// Repetitions per (method, dataset, level) cell.
    int repetitions = 50;
    /// Resamples for uniformly sampled datasets; repetitions split evenly.
    int samples = kUniformResamples;
    std::uint64_t base_seed = 20170715;
    /// Redraw the noisy targets per repetition instead of per sample.
    bool noise_per_repetition = false;
    GpConfig gp;
    GsgpConfig gsgp;

    std::vector<Cell> cells;

    std::string config_hash(Method m) const;
    /// Resolved settings as `key = value` lines; parses back to the same plan.
    std::string describe() const;
};

/// Key/value configuration. Recognised keys:
///   preset = full | desk         (applied first; full is the default)
///   datasets = all | name,name,...
///   noise_levels = standard | r,r,...
///   methods = GP,GSGP
///   repetitions, samples, base_seed, noise_per_repetition
///   pop_size, generations, tournament_size, elitism, init_max_depth (both engines)
///   gp.p_crossover, gp.max_depth, gp.mutation_max_depth
///   gsgp.p_crossover, gsgp.ms_fraction, gsgp.random_tree_depth, gsgp.bound_mutation_trees
/// Blank lines and `#` comments are ignored.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::string_view text);
ConfigMap read_config(const std::filesystem::path& path);

/// Expands a configuration into a full cell list. Throws ConfigError on
/// unknown datasets or keys, malformed grids, and duplicate cells.
ExperimentPlan plan_experiment(const ConfigMap& config);
ExperimentPlan plan_experiment(const std::filesystem::path& config_file);

/// Default plan: all 15 datasets, 11 levels, both methods, 50 repetitions.
ExperimentPlan full_plan();
/// Desk-scale preset: pop 200, 200 generations, 10 repetitions, levels 0/0.1/0.2.
ExperimentPlan desk_plan();

/// Rebuilds the cell list after the plan's fields were edited in code.
void expand_cells(ExperimentPlan& plan);

/// Seed streams derived from the plan's base seed.
std::uint64_t run_seed(std::uint64_t base, Method m, std::string_view dataset, NoiseLevel r,
                       int sample_id, int rep_index);
std::uint64_t data_seed(std::uint64_t base, std::string_view dataset, Partition p, int sample_id);
std::uint64_t noise_seed(std::uint64_t base, std::string_view dataset, NoiseLevel r,
                         int sample_id, int rep_index, bool per_repetition);

/// Materialized inputs for one cell: clean test set and (noisy) training set.
struct CellData {
    Dataset train;
    Dataset test;
};

CellData materialize(const ExperimentPlan& plan, const Cell& cell);

/// Runs one cell in isolation; the result depends only on (plan, cell).
RunRecord run_cell(const ExperimentPlan& plan, const Cell& cell);

} // namespace gsnoise
