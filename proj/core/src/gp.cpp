#include "gsnoise/gp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gsnoise/error.hpp"
#include "gsnoise/metrics.hpp"

namespace gsnoise {

void GpConfig::validate() const
{
    if (pop_size < 2) {
        throw ConfigError("GP population must hold at least 2 individuals");
    }
    if (tournament_size < 1 || tournament_size > pop_size) {
        throw ConfigError("tournament size must be in [1, pop_size]");
    }
    if (p_crossover < 0.0 || p_mutation < 0.0 || std::abs(p_crossover + p_mutation - 1.0) > 1e-9) {
        throw ConfigError("GP crossover and mutation probabilities must sum to 1");
    }
    if (init_max_depth < 2 || mutation_max_depth < 1) {
        throw ConfigError("GP depths must be positive (init depth >= 2)");
    }
    if (max_depth < init_max_depth) {
        throw ConfigError("GP evolution depth cap is below the initialization depth");
    }
    if (elitism >= pop_size) {
        throw ConfigError("elitism must leave room for offspring");
    }
}

std::string GpConfig::canonical() const
{
    std::ostringstream os;
    os.precision(17);
    os << "gp;pop=" << pop_size << ";gens=" << generations << ";tour=" << tournament_size
       << ";pxo=" << p_crossover << ";pmut=" << p_mutation << ";init_depth=" << init_max_depth
       << ";mut_depth=" << mutation_max_depth << ";cap=" << max_depth << ";elitism=" << elitism;
    return os.str();
}

const GpIndividual& tournament_select(std::span<const GpIndividual> pop, std::size_t k, Rng& rng)
{
    std::vector<double> fitness(pop.size());
    std::transform(pop.begin(), pop.end(), fitness.begin(),
                   [](const GpIndividual& ind) { return ind.fitness; });
    return pop[tournament_select(fitness, k, rng)];
}

std::optional<ExprTree> try_subtree_crossover(const ExprTree& p1, const ExprTree& p2,
                                              std::size_t max_depth, Rng& rng)
{
    const std::size_t at = uniform_index(rng, p1.size());
    const std::size_t from = uniform_index(rng, p2.size());
    if (p1.node_level(at) - 1 + p2.subtree_depth(from) > max_depth) {
        return std::nullopt;
    }
    return p1.replace_subtree(at, p2.subtree(from));
}

ExprTree subtree_crossover(const ExprTree& p1, const ExprTree& p2, std::size_t max_depth,
                           Rng& rng)
{
    auto child = try_subtree_crossover(p1, p2, max_depth, rng);
    return child ? std::move(*child) : p1;
}

std::optional<ExprTree> try_subtree_mutation(const ExprTree& p, std::size_t dims,
                                             std::size_t grow_depth, std::size_t max_depth,
                                             Rng& rng)
{
    const std::size_t at = uniform_index(rng, p.size());
    auto fresh = grow(grow_depth, dims, rng);
    if (p.node_level(at) - 1 + fresh.depth() > max_depth) {
        return std::nullopt;
    }
    return p.replace_subtree(at, fresh);
}

ExprTree subtree_mutation(const ExprTree& p, std::size_t dims, std::size_t grow_depth,
                          std::size_t max_depth, Rng& rng)
{
    auto child = try_subtree_mutation(p, dims, grow_depth, max_depth, rng);
    return child ? std::move(*child) : p;
}

namespace {

struct Population {
    std::vector<GpIndividual> members;
    std::vector<double> fitness;

    void push(GpIndividual ind)
    {
        fitness.push_back(ind.fitness);
        members.push_back(std::move(ind));
    }
    std::size_t best() const
    {
        return static_cast<std::size_t>(
            std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
    }
    std::size_t footprint() const
    {
        std::size_t bytes = 0;
        for (const auto& m : members) {
            bytes += sizeof(GpIndividual) + m.tree.size() * sizeof(Node)
                     + m.train_semantics.capacity() * sizeof(double);
        }
        return bytes;
    }
};

/// Indices of the `count` best individuals, best first.
std::vector<std::size_t> elite_indices(const std::vector<double>& fitness, std::size_t count)
{
    std::vector<std::size_t> idx(fitness.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          return fitness[a] < fitness[b] || (fitness[a] == fitness[b] && a < b);
                      });
    idx.resize(count);
    return idx;
}

} // namespace

EngineResult run_gp(const GpConfig& config, const Dataset& train, const Dataset& test,
                    std::uint64_t seed)
{
    config.validate();
    check_run_inputs(train, test);

    Rng rng(seed);
    Rng probe_rng(mix64(seed));
    const std::size_t dims = train.dims();
    const double target_ss = sum_squared_deviation(train.targets);

    auto make = [&](ExprTree tree) {
        auto sem = eval_tree(tree, train.inputs);
        const double f = selection_fitness(train.targets, sem, target_ss);
        return GpIndividual{std::move(tree), std::move(sem), f};
    };

    Population pop;
    pop.members.reserve(config.pop_size);
    for (auto& tree : ramped_half_and_half(config.pop_size, config.init_max_depth, dims, rng)) {
        pop.push(make(std::move(tree)));
    }

    EngineResult result;
    result.trace.best_train.push_back(pop.fitness[pop.best()]);

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        const auto started = std::chrono::steady_clock::now();
        Population next;
        next.members.reserve(config.pop_size);
        for (auto e : elite_indices(pop.fitness, config.elitism)) {
            next.push(pop.members[e]);
        }
        while (next.members.size() < config.pop_size) {
            std::optional<ExprTree> child;
            std::size_t parent;
            if (bernoulli(rng, config.p_crossover)) {
                parent = tournament_select(pop.fitness, config.tournament_size, rng);
                const auto donor = tournament_select(pop.fitness, config.tournament_size, rng);
                child = try_subtree_crossover(pop.members[parent].tree, pop.members[donor].tree,
                                              config.max_depth, rng);
            } else {
                parent = tournament_select(pop.fitness, config.tournament_size, rng);
                child = try_subtree_mutation(pop.members[parent].tree, dims,
                                             config.mutation_max_depth, config.max_depth, rng);
            }
            if (child) {
                next.push(make(std::move(*child)));
            } else {
                next.push(pop.members[parent]);
            }
        }
        pop = std::move(next);

        if (config.verify_fitness) {
            const auto& probe = pop.members[uniform_index(probe_rng, pop.members.size())];
            const double fresh = selection_fitness(
                train.targets, eval_tree(probe.tree, train.inputs), target_ss);
            if (!(fresh == probe.fitness || (std::isinf(fresh) && std::isinf(probe.fitness)))) {
                throw std::logic_error("cached GP fitness diverged from recomputation");
            }
        }

        result.trace.best_train.push_back(pop.fitness[pop.best()]);
        if (config.record_timing) {
            result.trace.generation_seconds.push_back(
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
            result.trace.footprint_bytes.push_back(pop.footprint());
        }
    }

    const auto& best = pop.members[pop.best()];
    result.train_nrmse = best.fitness;
    const auto test_pred = eval_tree(best.tree, test.inputs);
    result.test_nrmse = selection_fitness(test.targets, test_pred, sum_squared_deviation(test.targets));
    return result;
}

} // namespace gsnoise
