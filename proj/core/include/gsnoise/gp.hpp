#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gsnoise/engine.hpp"
#include "gsnoise/expr.hpp"

namespace gsnoise {

struct GpConfig {
    std::size_t pop_size = 1000;
    std::size_t generations = 2000;
    std::size_t tournament_size = 10;
    double p_crossover = 0.9;
    double p_mutation = 0.1;
    std::size_t init_max_depth = 6;
    /// Depth of the fresh subtree grown by subtree mutation.
    std::size_t mutation_max_depth = 6;
    /// Offspring deeper than this are discarded in favour of the parent.
    std::size_t max_depth = 17;
    std::size_t elitism = 1;
    bool record_timing = false;
    /// Re-derive one individual's fitness from scratch each generation and
    /// throw std::logic_error on mismatch.
    bool verify_fitness = false;

    void validate() const;
    /// Canonical text of every field that influences results.
    std::string canonical() const;
};

struct GpIndividual {
    ExprTree tree;
    SemanticVector train_semantics;
    double fitness;
};

const GpIndividual& tournament_select(std::span<const GpIndividual> pop, std::size_t k, Rng& rng);

/// Copy of p1 with one uniformly chosen node replaced by a copy of a
/// uniformly chosen subtree of p2. Returns p1 unchanged if the result would
/// exceed max_depth.
ExprTree subtree_crossover(const ExprTree& p1, const ExprTree& p2, std::size_t max_depth,
                           Rng& rng);

/// Copy of p with one uniformly chosen node replaced by grow(grow_depth).
/// Returns p unchanged if the result would exceed max_depth.
ExprTree subtree_mutation(const ExprTree& p, std::size_t dims, std::size_t grow_depth,
                          std::size_t max_depth, Rng& rng);

/// Variants that report a depth-cap rejection as nullopt.
std::optional<ExprTree> try_subtree_crossover(const ExprTree& p1, const ExprTree& p2,
                                              std::size_t max_depth, Rng& rng);
std::optional<ExprTree> try_subtree_mutation(const ExprTree& p, std::size_t dims,
                                             std::size_t grow_depth, std::size_t max_depth,
                                             Rng& rng);

/// Generational canonical GP. Training targets (possibly noisy) drive
/// fitness; the test partition is only touched for the final model.
EngineResult run_gp(const GpConfig& config, const Dataset& train, const Dataset& test,
                    std::uint64_t seed);

} // namespace gsnoise
