#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gsnoise/expr.hpp"
#include "gsnoise/random.hpp"

namespace gsnoise {

/// One-dimensional sampling rule. E[a, b, c] is an inclusive grid with
/// spacing c; U[a, b, c] is c independent uniform draws from [a, b].
struct SamplingRule {
    enum class Kind : std::uint8_t { Grid, Uniform };

    Kind kind;
    double a;
    double b;
    double c;

    static SamplingRule grid(double a, double b, double step);
    static SamplingRule uniform(double a, double b, std::size_t count);

    /// Number of values the rule produces.
    std::size_t count() const;
    std::string to_string() const;
};

/// Inclusive index-based grid: value i is exactly a + i * c.
std::vector<double> generate_grid(const SamplingRule& rule);
std::vector<double> generate_uniform(const SamplingRule& rule, Rng& rng);

enum class Partition : std::uint8_t { Train, Test };

const char* to_string(Partition p) noexcept;

/// Noise rate r: the probability that a training target is perturbed.
/// Compared and keyed by integer basis points so 0.02 and 0.020000001
/// never split a group.
class NoiseLevel {
public:
    constexpr NoiseLevel() = default;
    static NoiseLevel from_rate(double r);
    static NoiseLevel parse(std::string_view text);

    double rate() const noexcept { return rate_; }
    long basis_points() const noexcept;
    /// "0.02" style label with two decimals.
    std::string label() const;

    friend bool operator==(const NoiseLevel& a, const NoiseLevel& b) noexcept
    {
        return a.basis_points() == b.basis_points();
    }
    friend std::strong_ordering operator<=>(const NoiseLevel& a, const NoiseLevel& b) noexcept
    {
        return a.basis_points() <=> b.basis_points();
    }

private:
    explicit constexpr NoiseLevel(double r) : rate_(r) {}
    double rate_ = 0.0;
};

/// The eleven levels 0.00, 0.02, ..., 0.20.
std::vector<NoiseLevel> standard_noise_grid();

using Objective = double (*)(std::span<const double>);

struct DatasetSpec {
    std::string name;
    Objective objective;
    std::size_t dims;
    /// One rule per variable, or a single rule applied to every variable.
    std::vector<SamplingRule> train_rules;
    std::vector<SamplingRule> test_rules;
    /// Instance counts as listed in the benchmark table.
    std::size_t listed_train_n;
    std::size_t listed_test_n;

    bool uses_uniform_sampling() const;
    std::size_t formula_count(Partition p) const;
    std::size_t listed_count(Partition p) const;
    /// Non-empty when the listed count disagrees with the sampling formula.
    std::string count_discrepancy(Partition p) const;
};

/// The fifteen Keijzer and Vladislavleva benchmarks.
const std::vector<DatasetSpec>& benchmark_registry();
/// Throws ConfigError for unknown names.
const DatasetSpec& find_spec(std::string_view name);

/// Evaluates the named objective. Throws DomainError outside its domain.
double objective(const DatasetSpec& spec, std::span<const double> x);

inline constexpr int kUniformResamples = 5;

struct Dataset {
    std::string name;
    Partition partition = Partition::Train;
    int sample_id = 0;
    NoiseLevel noise;
    EvalContext inputs;
    std::vector<double> targets;

    std::size_t size() const noexcept { return targets.size(); }
    std::size_t dims() const noexcept { return inputs.cols(); }
};

/// Samples one partition of a benchmark. Multi-variable grids form the full
/// Cartesian mesh with the first variable varying slowest; uniform rules draw
/// every variable per row. sample_id must be 1..5 for specs with any uniform
/// rule and 0 otherwise.
Dataset build_dataset(const DatasetSpec& spec, Partition partition, int sample_id, Rng& rng);

/// Adds one N(0,1) draw to each training target with probability r.
/// Throws ConfigError for test partitions.
Dataset inject_noise(const Dataset& clean, NoiseLevel r, Rng& rng);

} // namespace gsnoise
