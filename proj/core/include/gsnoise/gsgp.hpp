#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gsnoise/engine.hpp"
#include "gsnoise/expr.hpp"

namespace gsnoise {

/// Geometric semantic GP.
///
/// Individuals are never expanded into syntax. Each one is a node of a
/// provenance DAG: an initial tree, or an operator application that names its
/// parents by id and keeps the random functions it drew. The engine caches the
/// train and test semantics of every live individual, so producing an
/// offspring costs O(n_train + n_test) plus the evaluation of one or two small
/// random trees, independent of how many generations led to its parents.

struct GsgpConfig {
    std::size_t pop_size = 1000;
    std::size_t generations = 2000;
    std::size_t tournament_size = 10;
    double p_crossover = 0.5;
    double p_mutation = 0.5;
    /// Mutation step as a fraction of the training-target standard deviation.
    double ms_fraction = 0.1;
    std::size_t init_max_depth = 6;
    /// Depth bound for the grow trees inside both operators.
    std::size_t random_tree_depth = 6;
    /// Wrap the mutation trees in a logistic so tr1 - tr2 lies in [-1, 1].
    bool bound_mutation_trees = true;
    std::size_t elitism = 1;
    /// Keep a provenance record for every node ever created.
    bool record_provenance = false;
    bool record_timing = false;
    /// Recompute one node's fitness from its cached semantics each generation
    /// and throw std::logic_error on mismatch.
    bool verify_fitness = false;

    void validate() const;
    std::string canonical() const;
};

using NodeId = std::uint64_t;

struct InitialOrigin {
    ExprTree tree;
};

struct CrossoverOrigin {
    NodeId parent1;
    NodeId parent2;
    ExprTree random_tree;
    /// logistic(random_tree) on each partition; entries lie in [0, 1].
    SemanticVector r_train;
    SemanticVector r_test;
};

struct MutationOrigin {
    NodeId parent;
    double ms;
    bool bounded;
    ExprTree tree1;
    ExprTree tree2;
    SemanticVector tr1_train;
    SemanticVector tr1_test;
    SemanticVector tr2_train;
    SemanticVector tr2_test;
};

using NodeOrigin = std::variant<InitialOrigin, CrossoverOrigin, MutationOrigin>;

struct GsgpNode {
    NodeId id = 0;
    NodeOrigin origin;
    SemanticVector train;
    SemanticVector test;
    double fitness = 0.0;

    /// Drops the operator's random-function semantics, keeping the trees.
    void release_operator_semantics();
    std::size_t footprint_bytes() const;
};

/// Train/test instance sets and the fitness targets shared by a GSGP run.
/// Hands out monotonically increasing node ids, so a child id always
/// exceeds the ids of its parents.
class SemanticSpace {
public:
    /// The datasets must outlive the space.
    SemanticSpace(const Dataset& train, const Dataset& test);

    const EvalContext& train_inputs() const noexcept { return train_->inputs; }
    const EvalContext& test_inputs() const noexcept { return test_->inputs; }
    std::span<const double> train_targets() const noexcept { return train_->targets; }
    std::size_t dims() const noexcept { return train_->dims(); }

    double fitness(std::span<const double> train_semantics) const;
    NodeId issue_id() noexcept { return next_id_++; }

private:
    const Dataset* train_;
    const Dataset* test_;
    double target_ss_;
    NodeId next_id_ = 0;
};

/// Componentwise 1 / (1 + exp(-v)).
SemanticVector logistic(std::span<const double> values);

/// r * s1 + (1 - r) * s2, componentwise.
SemanticVector geometric_crossover(std::span<const double> s1, std::span<const double> s2,
                                   std::span<const double> r);

/// s + ms * (t1 - t2), componentwise.
SemanticVector geometric_mutation(std::span<const double> s, double ms,
                                  std::span<const double> t1, std::span<const double> t2);

GsgpNode make_initial_node(ExprTree tree, SemanticSpace& space);

/// Manhattan-flavoured geometric semantic crossover with r = logistic(grow tree).
GsgpNode gsx(const GsgpNode& p1, const GsgpNode& p2, SemanticSpace& space,
             std::size_t random_tree_depth, Rng& rng);

/// Geometric semantic mutation: s(p) + ms * (s(tr1) - s(tr2)).
GsgpNode gsm(const GsgpNode& p, double ms, SemanticSpace& space, std::size_t random_tree_depth,
             bool bounded, Rng& rng);

/// fraction * sample standard deviation (n - 1 denominator). Logs a warning
/// and returns 0 for constant targets; throws DimensionError for n < 2.
double compute_ms(std::span<const double> train_targets, double fraction);

/// Lightweight, semantics-free account of how a node was formed.
struct ProvenanceRecord {
    NodeId id;
    enum class Kind { Initial, Crossover, Mutation } kind;
    NodeId parent1 = 0;
    NodeId parent2 = 0;
    double ms = 0.0;
    bool bounded = false;
    std::vector<ExprTree> trees;

    static ProvenanceRecord from(const GsgpNode& node);
    std::size_t footprint_bytes() const;
};

class ProvenanceLog {
public:
    void append(ProvenanceRecord record);
    const std::vector<ProvenanceRecord>& records() const noexcept { return records_; }
    std::size_t footprint_bytes() const noexcept { return bytes_; }
    /// One JSON object per line: id, kind, parents, ms, bounded, trees.
    void write_jsonl(std::ostream& out) const;

private:
    std::vector<ProvenanceRecord> records_;
    std::size_t bytes_ = 0;
};

struct GsgpRun {
    EngineResult result;
    ProvenanceLog provenance;
};

EngineResult run_gsgp(const GsgpConfig& config, const Dataset& train, const Dataset& test,
                      std::uint64_t seed);

/// run_gsgp plus the provenance log when config.record_provenance is set.
GsgpRun run_gsgp_traced(const GsgpConfig& config, const Dataset& train, const Dataset& test,
                        std::uint64_t seed);

} // namespace gsnoise
