#include "gsnoise/gsgp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gsnoise/error.hpp"
#include "gsnoise/log.hpp"
#include "gsnoise/metrics.hpp"

namespace gsnoise {

void GsgpConfig::validate() const
{
    if (pop_size < 2) {
        throw ConfigError("GSGP population must hold at least 2 individuals");
    }
    if (tournament_size < 1 || tournament_size > pop_size) {
        throw ConfigError("tournament size must be in [1, pop_size]");
    }
    if (p_crossover < 0.0 || p_mutation < 0.0 || std::abs(p_crossover + p_mutation - 1.0) > 1e-9) {
        throw ConfigError("GSGP crossover and mutation probabilities must sum to 1");
    }
    if (!(ms_fraction > 0.0)) {
        throw ConfigError("mutation step fraction must be positive");
    }
    if (init_max_depth < 2 || random_tree_depth < 1) {
        throw ConfigError("GSGP depths must be positive (init depth >= 2)");
    }
    if (elitism >= pop_size) {
        throw ConfigError("elitism must leave room for offspring");
    }
}

std::string GsgpConfig::canonical() const
{
    std::ostringstream os;
    os.precision(17);
    os << "gsgp;pop=" << pop_size << ";gens=" << generations << ";tour=" << tournament_size
       << ";pxo=" << p_crossover << ";pmut=" << p_mutation << ";ms_fraction=" << ms_fraction
       << ";init_depth=" << init_max_depth << ";rt_depth=" << random_tree_depth
       << ";bounded=" << bound_mutation_trees << ";elitism=" << elitism;
    return os.str();
}

namespace {

std::size_t vec_bytes(const SemanticVector& v)
{
    return v.capacity() * sizeof(double);
}

std::size_t tree_bytes(const ExprTree& t)
{
    return sizeof(ExprTree) + t.size() * sizeof(Node);
}

void release(SemanticVector& v)
{
    SemanticVector{}.swap(v);
}

} // namespace

void GsgpNode::release_operator_semantics()
{
    if (auto* x = std::get_if<CrossoverOrigin>(&origin)) {
        release(x->r_train);
        release(x->r_test);
    } else if (auto* m = std::get_if<MutationOrigin>(&origin)) {
        release(m->tr1_train);
        release(m->tr1_test);
        release(m->tr2_train);
        release(m->tr2_test);
    }
}

std::size_t GsgpNode::footprint_bytes() const
{
    std::size_t bytes = sizeof(GsgpNode) + vec_bytes(train) + vec_bytes(test);
    if (const auto* i = std::get_if<InitialOrigin>(&origin)) {
        bytes += tree_bytes(i->tree);
    } else if (const auto* x = std::get_if<CrossoverOrigin>(&origin)) {
        bytes += tree_bytes(x->random_tree) + vec_bytes(x->r_train) + vec_bytes(x->r_test);
    } else if (const auto* m = std::get_if<MutationOrigin>(&origin)) {
        bytes += tree_bytes(m->tree1) + tree_bytes(m->tree2) + vec_bytes(m->tr1_train)
                 + vec_bytes(m->tr1_test) + vec_bytes(m->tr2_train) + vec_bytes(m->tr2_test);
    }
    return bytes;
}

SemanticSpace::SemanticSpace(const Dataset& train, const Dataset& test)
    : train_(&train), test_(&test), target_ss_(sum_squared_deviation(train.targets))
{
    check_run_inputs(train, test);
}

double SemanticSpace::fitness(std::span<const double> train_semantics) const
{
    return selection_fitness(train_->targets, train_semantics, target_ss_);
}

SemanticVector logistic(std::span<const double> values)
{
    SemanticVector out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = 1.0 / (1.0 + std::exp(-values[i]));
    }
    return out;
}

SemanticVector geometric_crossover(std::span<const double> s1, std::span<const double> s2,
                                   std::span<const double> r)
{
    if (s1.size() != s2.size() || s1.size() != r.size()) {
        throw DimensionError("crossover semantics have mismatched lengths");
    }
    SemanticVector out(s1.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = r[i] * s1[i] + (1.0 - r[i]) * s2[i];
    }
    return out;
}

SemanticVector geometric_mutation(std::span<const double> s, double ms,
                                  std::span<const double> t1, std::span<const double> t2)
{
    if (s.size() != t1.size() || s.size() != t2.size()) {
        throw DimensionError("mutation semantics have mismatched lengths");
    }
    SemanticVector out(s.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = s[i] + ms * (t1[i] - t2[i]);
    }
    return out;
}

GsgpNode make_initial_node(ExprTree tree, SemanticSpace& space)
{
    auto train = eval_tree(tree, space.train_inputs());
    auto test = eval_tree(tree, space.test_inputs());
    const double fitness = space.fitness(train);
    return {space.issue_id(), InitialOrigin{std::move(tree)}, std::move(train), std::move(test),
            fitness};
}

GsgpNode gsx(const GsgpNode& p1, const GsgpNode& p2, SemanticSpace& space,
             std::size_t random_tree_depth, Rng& rng)
{
    auto tree = grow(random_tree_depth, space.dims(), rng);
    CrossoverOrigin origin{p1.id, p2.id, std::move(tree), {}, {}};
    origin.r_train = logistic(eval_tree(origin.random_tree, space.train_inputs()));
    origin.r_test = logistic(eval_tree(origin.random_tree, space.test_inputs()));

    auto train = geometric_crossover(p1.train, p2.train, origin.r_train);
    auto test = geometric_crossover(p1.test, p2.test, origin.r_test);
    const double fitness = space.fitness(train);
    return {space.issue_id(), std::move(origin), std::move(train), std::move(test), fitness};
}

GsgpNode gsm(const GsgpNode& p, double ms, SemanticSpace& space, std::size_t random_tree_depth,
             bool bounded, Rng& rng)
{
    if (!(ms >= 0.0)) {
        throw ConfigError("mutation step must be non-negative");
    }
    auto t1 = grow(random_tree_depth, space.dims(), rng);
    auto t2 = grow(random_tree_depth, space.dims(), rng);
    auto semantics = [&](const ExprTree& t, const EvalContext& ctx) {
        auto raw = eval_tree(t, ctx);
        return bounded ? logistic(raw) : raw;
    };
    MutationOrigin origin{p.id, ms, bounded, std::move(t1), std::move(t2), {}, {}, {}, {}};
    origin.tr1_train = semantics(origin.tree1, space.train_inputs());
    origin.tr1_test = semantics(origin.tree1, space.test_inputs());
    origin.tr2_train = semantics(origin.tree2, space.train_inputs());
    origin.tr2_test = semantics(origin.tree2, space.test_inputs());

    auto train = geometric_mutation(p.train, ms, origin.tr1_train, origin.tr2_train);
    auto test = geometric_mutation(p.test, ms, origin.tr1_test, origin.tr2_test);
    const double fitness = space.fitness(train);
    return {space.issue_id(), std::move(origin), std::move(train), std::move(test), fitness};
}

double compute_ms(std::span<const double> train_targets, double fraction)
{
    const std::size_t n = train_targets.size();
    if (n < 2) {
        throw DimensionError("mutation step needs at least two training targets");
    }
    const double ss = sum_squared_deviation(train_targets);
    if (!(ss > 0.0)) {
        log_warning("training targets are constant; geometric mutation step is 0");
        return 0.0;
    }
    return fraction * std::sqrt(ss / static_cast<double>(n - 1));
}

ProvenanceRecord ProvenanceRecord::from(const GsgpNode& node)
{
    ProvenanceRecord rec{node.id, Kind::Initial, 0, 0, 0.0, false, {}};
    if (const auto* i = std::get_if<InitialOrigin>(&node.origin)) {
        rec.trees.push_back(i->tree);
    } else if (const auto* x = std::get_if<CrossoverOrigin>(&node.origin)) {
        rec.kind = Kind::Crossover;
        rec.parent1 = x->parent1;
        rec.parent2 = x->parent2;
        rec.trees.push_back(x->random_tree);
    } else if (const auto* m = std::get_if<MutationOrigin>(&node.origin)) {
        rec.kind = Kind::Mutation;
        rec.parent1 = m->parent;
        rec.ms = m->ms;
        rec.bounded = m->bounded;
        rec.trees.push_back(m->tree1);
        rec.trees.push_back(m->tree2);
    }
    return rec;
}

std::size_t ProvenanceRecord::footprint_bytes() const
{
    std::size_t bytes = sizeof(ProvenanceRecord);
    for (const auto& t : trees) {
        bytes += tree_bytes(t);
    }
    return bytes;
}

void ProvenanceLog::append(ProvenanceRecord record)
{
    bytes_ += record.footprint_bytes();
    records_.push_back(std::move(record));
}

void ProvenanceLog::write_jsonl(std::ostream& out) const
{
    static constexpr const char* kinds[] = {"initial", "crossover", "mutation"};
    auto saved = out.precision(17);
    for (const auto& r : records_) {
        out << "{\"id\":" << r.id << ",\"kind\":\"" << kinds[static_cast<int>(r.kind)]
            << "\",\"parents\":[";
        if (r.kind == ProvenanceRecord::Kind::Crossover) {
            out << r.parent1 << ',' << r.parent2;
        } else if (r.kind == ProvenanceRecord::Kind::Mutation) {
            out << r.parent1;
        }
        out << "]";
        if (r.kind == ProvenanceRecord::Kind::Mutation) {
            out << ",\"ms\":" << r.ms << ",\"bounded\":" << (r.bounded ? "true" : "false");
        }
        out << ",\"trees\":[";
        for (std::size_t t = 0; t < r.trees.size(); ++t) {
            out << (t ? "," : "") << '"' << r.trees[t].to_prefix() << '"';
        }
        out << "]}\n";
    }
    out.precision(saved);
}

namespace {

struct Population {
    std::vector<GsgpNode> members;
    std::vector<double> fitness;

    void push(GsgpNode node)
    {
        fitness.push_back(node.fitness);
        members.push_back(std::move(node));
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
            bytes += m.footprint_bytes();
        }
        return bytes;
    }
};

std::vector<std::size_t> elite_indices(const std::vector<double>& fitness, std::size_t count)
{
    std::vector<std::size_t> idx(fitness.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          return fitness[a] < fitness[b] || (fitness[a] == fitness[b] && a < b);
                      });
    idx.resize(count);
    return idx;
}

} // namespace

GsgpRun run_gsgp_traced(const GsgpConfig& config, const Dataset& train, const Dataset& test,
                        std::uint64_t seed)
{
    config.validate();
    SemanticSpace space(train, test);
    Rng rng(seed);
    Rng probe_rng(mix64(seed));
    const double ms = compute_ms(train.targets, config.ms_fraction);

    GsgpRun run;
    auto keep = [&](GsgpNode node, Population& into) {
        if (config.record_provenance) {
            run.provenance.append(ProvenanceRecord::from(node));
        }
        node.release_operator_semantics();
        into.push(std::move(node));
    };

    Population pop;
    pop.members.reserve(config.pop_size);
    for (auto& tree :
         ramped_half_and_half(config.pop_size, config.init_max_depth, space.dims(), rng)) {
        keep(make_initial_node(std::move(tree), space), pop);
    }

    auto& trace = run.result.trace;
    trace.best_train.push_back(pop.fitness[pop.best()]);

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        const auto started = std::chrono::steady_clock::now();
        Population next;
        next.members.reserve(config.pop_size);
        for (auto e : elite_indices(pop.fitness, config.elitism)) {
            next.push(pop.members[e]);
        }
        while (next.members.size() < config.pop_size) {
            if (bernoulli(rng, config.p_crossover)) {
                const auto a = tournament_select(pop.fitness, config.tournament_size, rng);
                const auto b = tournament_select(pop.fitness, config.tournament_size, rng);
                keep(gsx(pop.members[a], pop.members[b], space, config.random_tree_depth, rng),
                     next);
            } else {
                const auto a = tournament_select(pop.fitness, config.tournament_size, rng);
                keep(gsm(pop.members[a], ms, space, config.random_tree_depth,
                         config.bound_mutation_trees, rng),
                     next);
            }
        }
        pop = std::move(next);

        if (config.verify_fitness) {
            const auto& probe = pop.members[uniform_index(probe_rng, pop.members.size())];
            const double fresh = nrmse(train.targets, probe.train);
            const bool same = fresh == probe.fitness
                              || (!std::isfinite(fresh) && !std::isfinite(probe.fitness));
            if (!same) {
                throw std::logic_error("cached GSGP fitness diverged from recomputation");
            }
        }

        trace.best_train.push_back(pop.fitness[pop.best()]);
        if (config.record_timing) {
            trace.generation_seconds.push_back(
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
            trace.footprint_bytes.push_back(pop.footprint() + run.provenance.footprint_bytes());
        }
    }

    const auto& best = pop.members[pop.best()];
    run.result.train_nrmse = best.fitness;
    run.result.test_nrmse =
        selection_fitness(test.targets, best.test, sum_squared_deviation(test.targets));
    return run;
}

EngineResult run_gsgp(const GsgpConfig& config, const Dataset& train, const Dataset& test,
                      std::uint64_t seed)
{
    return run_gsgp_traced(config, train, test, seed).result;
}

} // namespace gsnoise
