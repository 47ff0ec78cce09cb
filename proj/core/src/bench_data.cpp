#include "gsnoise/bench_data.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gsnoise/error.hpp"

namespace gsnoise {

SamplingRule SamplingRule::grid(double a, double b, double step)
{
    if (!(a < b) || !(step > 0.0)) {
        throw ConfigError("grid rule needs a < b and a positive step");
    }
    return {Kind::Grid, a, b, step};
}

SamplingRule SamplingRule::uniform(double a, double b, std::size_t count)
{
    if (!(a < b) || count == 0) {
        throw ConfigError("uniform rule needs a < b and a positive count");
    }
    return {Kind::Uniform, a, b, static_cast<double>(count)};
}

std::size_t SamplingRule::count() const
{
    if (kind == Kind::Uniform) {
        return static_cast<std::size_t>(c);
    }
    // Relative guard so (b - a) / c landing a hair below an integer still
    // includes the endpoint.
    const double steps = (b - a) / c;
    return static_cast<std::size_t>(std::floor(steps + 1e-9 * std::max(1.0, steps))) + 1;
}

std::string SamplingRule::to_string() const
{
    std::ostringstream os;
    os << (kind == Kind::Grid ? "E[" : "U[") << a << ", " << b << ", " << c << "]";
    return os.str();
}

std::vector<double> generate_grid(const SamplingRule& rule)
{
    if (rule.kind != SamplingRule::Kind::Grid) {
        throw ConfigError("generate_grid called with a uniform rule");
    }
    const std::size_t n = rule.count();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = rule.a + static_cast<double>(i) * rule.c;
    }
    return out;
}

std::vector<double> generate_uniform(const SamplingRule& rule, Rng& rng)
{
    if (rule.kind != SamplingRule::Kind::Uniform) {
        throw ConfigError("generate_uniform called with a grid rule");
    }
    std::vector<double> out(rule.count());
    for (auto& v : out) {
        v = uniform(rng, rule.a, rule.b);
    }
    return out;
}

const char* to_string(Partition p) noexcept
{
    return p == Partition::Train ? "train" : "test";
}

NoiseLevel NoiseLevel::from_rate(double r)
{
    if (!(r >= 0.0 && r <= 1.0)) {
        throw ConfigError("noise rate must lie in [0, 1]");
    }
    return NoiseLevel(r);
}

NoiseLevel NoiseLevel::parse(std::string_view text)
{
    double r = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), r);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError("cannot parse noise level '" + std::string(text) + "'");
    }
    return from_rate(r);
}

long NoiseLevel::basis_points() const noexcept
{
    return std::lround(rate_ * 10000.0);
}

std::string NoiseLevel::label() const
{
    char buf[32];
    const long bp = basis_points();
    if (bp % 100 == 0) {
        std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(bp) / 10000.0);
    } else {
        std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(bp) / 10000.0);
    }
    return buf;
}

std::vector<NoiseLevel> standard_noise_grid()
{
    std::vector<NoiseLevel> grid;
    for (int k = 0; k <= 10; ++k) {
        grid.push_back(NoiseLevel::from_rate(0.02 * k));
    }
    return grid;
}

namespace {

double keijzer_sine(std::span<const double> x)
{
    return 0.3 * x[0] * std::sin(2.0 * std::numbers::pi * x[0]);
}

double keijzer4(std::span<const double> x)
{
    const double v = x[0];
    const double s = std::sin(v);
    const double c = std::cos(v);
    return v * v * v * std::exp(-v) * c * s * (s * s * c - 1.0);
}

double keijzer6(std::span<const double> x)
{
    if (x[0] < 0.0) {
        throw DomainError("Keijzer-6 harmonic sum is undefined for negative x");
    }
    const auto terms = static_cast<long>(std::floor(x[0]));
    double sum = 0.0;
    for (long i = 1; i <= terms; ++i) {
        sum += 1.0 / static_cast<double>(i);
    }
    return sum;
}

double keijzer7(std::span<const double> x)
{
    if (!(x[0] > 0.0)) {
        throw DomainError("Keijzer-7 ln(x) requires x > 0");
    }
    return std::log(x[0]);
}

double keijzer8(std::span<const double> x)
{
    if (x[0] < 0.0) {
        throw DomainError("Keijzer-8 sqrt(x) requires x >= 0");
    }
    return std::sqrt(x[0]);
}

double keijzer9(std::span<const double> x)
{
    return std::log(x[0] + std::sqrt(x[0] * x[0] + 1.0));
}

double vlad1(std::span<const double> x)
{
    const double dx = x[0] - 1.0;
    const double dy = x[1] - 2.5;
    return std::exp(-dx * dx) / (1.2 + dy * dy);
}

double vlad2(std::span<const double> x)
{
    const double v = x[0];
    const double s = std::sin(v);
    const double c = std::cos(v);
    return std::exp(-v) * v * v * v * (c * s) * (c * s * s - 1.0);
}

double vlad3(std::span<const double> x)
{
    return vlad2(x) * (x[1] - 5.0);
}

double vlad4(std::span<const double> x)
{
    double denom = 5.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double d = x[i] - 3.0;
        denom += d * d;
    }
    return 10.0 / denom;
}

double vlad5(std::span<const double> x)
{
    const double denom = x[1] * x[1] * (x[0] - 10.0);
    if (denom == 0.0) {
        throw DomainError("Vladislavleva-5 is undefined where y = 0 or x = 10");
    }
    return 30.0 * (x[0] - 1.0) * (x[2] - 1.0) / denom;
}

double vlad7(std::span<const double> x)
{
    return (x[0] - 3.0) * (x[1] - 3.0) + 2.0 * std::sin((x[0] - 4.0) * (x[1] - 4.0));
}

double vlad8(std::span<const double> x)
{
    const double dx = x[0] - 3.0;
    const double dy = x[1] - 3.0;
    const double dy2 = x[1] - 2.0;
    return (dx * dx * dx * dx + dy * dy * dy - dy) / (dy2 * dy2 * dy2 * dy2 + 10.0);
}

using R = SamplingRule;

std::vector<DatasetSpec> make_registry()
{
    return {
        {"Keijzer-1", keijzer_sine, 1, {R::grid(-1, 1, 0.1)}, {R::grid(-1, 1, 0.001)}, 21, 2001},
        {"Keijzer-2", keijzer_sine, 1, {R::grid(-2, 2, 0.1)}, {R::grid(-2, 2, 0.001)}, 41, 4001},
        {"Keijzer-3", keijzer_sine, 1, {R::grid(-3, 3, 0.1)}, {R::grid(-3, 3, 0.001)}, 61, 6001},
        {"Keijzer-4", keijzer4, 1, {R::grid(0, 10, 0.1)}, {R::grid(0.05, 10.05, 0.1)}, 101, 101},
        {"Keijzer-6", keijzer6, 1, {R::grid(1, 50, 1)}, {R::grid(1, 120, 1)}, 50, 120},
        {"Keijzer-7", keijzer7, 1, {R::grid(1, 100, 1)}, {R::grid(1, 100, 0.1)}, 100, 991},
        {"Keijzer-8", keijzer8, 1, {R::grid(0, 100, 1)}, {R::grid(0, 100, 0.1)}, 101, 1001},
        {"Keijzer-9", keijzer9, 1, {R::grid(0, 100, 1)}, {R::grid(0, 100, 0.1)}, 100, 2025},
        {"Vladislavleva-1", vlad1, 2, {R::uniform(0.3, 4, 100)}, {R::grid(-0.2, 4.2, 0.1)}, 100,
         2025},
        {"Vladislavleva-2", vlad2, 1, {R::grid(0.05, 10, 0.1)}, {R::grid(-0.5, 10.5, 0.05)}, 100,
         221},
        {"Vladislavleva-3", vlad3, 2, {R::grid(0.05, 10, 0.1), R::grid(0.05, 10.05, 2)},
         {R::grid(-0.5, 10.5, 0.05), R::grid(-0.5, 10.5, 0.5)}, 600, 5083},
        {"Vladislavleva-4", vlad4, 5, {R::uniform(0.05, 6.05, 1024)},
         {R::uniform(-0.25, 6.35, 5000)}, 1024, 5000},
        {"Vladislavleva-5", vlad5, 3,
         {R::uniform(0.05, 2, 300), R::uniform(1, 2, 300), R::uniform(0.05, 2, 300)},
         {R::grid(-0.05, 2.1, 0.15), R::grid(0.95, 2.05, 0.1), R::grid(-0.05, 2.1, 0.15)}, 300,
         2700},
        {"Vladislavleva-7", vlad7, 2, {R::uniform(0.05, 6.05, 300)},
         {R::uniform(-0.25, 6.35, 1000)}, 300, 1000},
        {"Vladislavleva-8", vlad8, 2, {R::uniform(0.05, 6.05, 50)},
         {R::grid(-0.25, 6.35, 0.2)}, 50, 1089},
    };
}

const std::vector<SamplingRule>& rules_for(const DatasetSpec& spec, Partition p)
{
    return p == Partition::Train ? spec.train_rules : spec.test_rules;
}

const SamplingRule& rule_for_var(const std::vector<SamplingRule>& rules, std::size_t j)
{
    return rules.size() == 1 ? rules.front() : rules[j];
}

bool any_uniform(const std::vector<SamplingRule>& rules)
{
    for (const auto& r : rules) {
        if (r.kind == SamplingRule::Kind::Uniform) {
            return true;
        }
    }
    return false;
}

} // namespace

bool DatasetSpec::uses_uniform_sampling() const
{
    return any_uniform(train_rules) || any_uniform(test_rules);
}

std::size_t DatasetSpec::formula_count(Partition p) const
{
    const auto& rules = rules_for(*this, p);
    if (any_uniform(rules)) {
        // Joint per-row draws: every variable shares the row count.
        return rules.front().count();
    }
    std::size_t n = 1;
    for (std::size_t j = 0; j < dims; ++j) {
        n *= rule_for_var(rules, j).count();
    }
    return n;
}

std::size_t DatasetSpec::listed_count(Partition p) const
{
    return p == Partition::Train ? listed_train_n : listed_test_n;
}

std::string DatasetSpec::count_discrepancy(Partition p) const
{
    const auto formula = formula_count(p);
    const auto listed = listed_count(p);
    if (formula == listed) {
        return {};
    }
    std::string rules;
    for (const auto& r : rules_for(*this, p)) {
        rules += (rules.empty() ? "" : " x ") + r.to_string();
    }
    return name + " " + to_string(p) + ": listed count " + std::to_string(listed)
           + " disagrees with sampling rule " + rules + " which yields "
           + std::to_string(formula) + "; using " + std::to_string(formula);
}

const std::vector<DatasetSpec>& benchmark_registry()
{
    static const std::vector<DatasetSpec> registry = make_registry();
    return registry;
}

const DatasetSpec& find_spec(std::string_view name)
{
    for (const auto& spec : benchmark_registry()) {
        if (spec.name == name) {
            return spec;
        }
    }
    throw ConfigError("unknown dataset '" + std::string(name) + "'");
}

double objective(const DatasetSpec& spec, std::span<const double> x)
{
    if (x.size() != spec.dims) {
        throw DimensionError(spec.name + " expects " + std::to_string(spec.dims) + " inputs");
    }
    return spec.objective(x);
}

Dataset build_dataset(const DatasetSpec& spec, Partition partition, int sample_id, Rng& rng)
{
    const bool resampled = spec.uses_uniform_sampling();
    if (resampled ? (sample_id < 1 || sample_id > kUniformResamples) : sample_id != 0) {
        throw ConfigError("invalid sample_id " + std::to_string(sample_id) + " for " + spec.name);
    }
    const auto& rules = rules_for(spec, partition);
    if (rules.size() != 1 && rules.size() != spec.dims) {
        throw ConfigError(spec.name + ": rule count does not match dimensionality");
    }

    const std::size_t d = spec.dims;
    const std::size_t n = spec.formula_count(partition);
    std::vector<double> data(n * d);

    if (any_uniform(rules)) {
        for (const auto& r : rules) {
            if (r.kind != SamplingRule::Kind::Uniform || r.count() != n) {
                throw ConfigError(spec.name + ": mixed or ragged uniform rules");
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const auto& r = rule_for_var(rules, j);
                data[j * n + i] = uniform(rng, r.a, r.b);
            }
        }
    } else {
        std::vector<std::vector<double>> axes(d);
        for (std::size_t j = 0; j < d; ++j) {
            axes[j] = generate_grid(rule_for_var(rules, j));
        }
        // Mixed-radix counter; the last variable varies fastest.
        std::vector<std::size_t> idx(d, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                data[j * n + i] = axes[j][idx[j]];
            }
            for (std::size_t j = d; j-- > 0;) {
                if (++idx[j] < axes[j].size()) {
                    break;
                }
                idx[j] = 0;
            }
        }
    }

    Dataset ds;
    ds.name = spec.name;
    ds.partition = partition;
    ds.sample_id = sample_id;
    ds.inputs = EvalContext(n, d, std::move(data));
    ds.targets.resize(n);
    std::vector<double> x(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = ds.inputs.at(i, j);
        }
        ds.targets[i] = spec.objective(x);
    }
    return ds;
}

Dataset inject_noise(const Dataset& clean, NoiseLevel r, Rng& rng)
{
    if (clean.partition != Partition::Train) {
        throw ConfigError("noise is only injected into training partitions");
    }
    Dataset noisy = clean;
    noisy.noise = r;
    const double p = r.rate();
    for (auto& y : noisy.targets) {
        if (bernoulli(rng, p)) {
            y += standard_normal(rng);
        }
    }
    return noisy;
}

} // namespace gsnoise
