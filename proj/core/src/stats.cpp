#include "gsnoise/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gsnoise/error.hpp"

namespace gsnoise {

double median(std::span<const double> values)
{
    if (values.empty()) {
        throw ConfigError("median of an empty set");
    }
    std::vector<double> v(values.begin(), values.end());
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

std::vector<double> average_ranks(std::span<const double> values)
{
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(values[a]) < std::abs(values[b]);
    });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(values[order[j + 1]]) == std::abs(values[order[i]])) {
            ++j;
        }
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = shared;
        }
        i = j + 1;
    }
    return ranks;
}

namespace {

/// Counts of sign assignments per doubled rank sum. Ranks are multiples of
/// 1/2, so doubling makes every sum an integer.
std::vector<double> signed_rank_null_counts(std::span<const long> doubled_ranks)
{
    const long total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0L);
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    long reach = 0;
    for (long r : doubled_ranks) {
        for (long s = reach; s >= 0; --s) {
            if (counts[static_cast<std::size_t>(s)] != 0.0) {
                counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
            }
        }
        reach += r;
    }
    return counts;
}

double standard_normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

} // namespace

WilcoxonResult wilcoxon_one_tailed(const PairedSample& pairs, Alternative alternative,
                                   WilcoxonMethod method)
{
    if (pairs.gp.size() != pairs.gsgp.size()) {
        throw DimensionError("paired sample has unequal sides");
    }
    std::vector<double> diffs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double d = pairs.gsgp[i] - pairs.gp[i];
        if (d != 0.0) {
            diffs.push_back(d);
        }
    }
    if (diffs.size() < 5) {
        throw DegenerateError("Wilcoxon test needs at least 5 non-zero differences, got "
                              + std::to_string(diffs.size()));
    }
    const std::size_t n = diffs.size();
    const auto ranks = average_ranks(diffs);

    WilcoxonResult result;
    result.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0) {
            result.statistic += ranks[i];
        }
    }

    const bool exact = method == WilcoxonMethod::Exact
                       || (method == WilcoxonMethod::Auto && n <= kWilcoxonExactLimit);
    result.exact = exact;

    if (exact) {
        std::vector<long> doubled(n);
        for (std::size_t i = 0; i < n; ++i) {
            doubled[i] = std::lround(2.0 * ranks[i]);
        }
        const auto counts = signed_rank_null_counts(doubled);
        const double all = std::ldexp(1.0, static_cast<int>(n));
        const auto observed = static_cast<std::size_t>(std::lround(2.0 * result.statistic));
        double tail = 0.0;
        if (alternative == Alternative::GsgpLess) {
            for (std::size_t s = 0; s <= observed; ++s) tail += counts[s];
        } else {
            for (std::size_t s = observed; s < counts.size(); ++s) tail += counts[s];
        }
        result.p_value = tail / all;
        return result;
    }

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    // Tie correction: sum over tie groups of (t^3 - t) / 48.
    std::vector<double> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        var -= (t * t * t - t) / 48.0;
        i = j;
    }
    const double sd = std::sqrt(var);
    if (alternative == Alternative::GsgpLess) {
        result.p_value = standard_normal_cdf((result.statistic - mean + 0.5) / sd);
    } else {
        result.p_value = 1.0 - standard_normal_cdf((result.statistic - mean - 0.5) / sd);
    }
    return result;
}

Verdict verdict(double p_value, Alternative alternative, bool lower_is_better)
{
    if (!(p_value < kSignificance)) {
        return Verdict::NoDifference;
    }
    const bool gsgp_lower = alternative == Alternative::GsgpLess;
    return gsgp_lower == lower_is_better ? Verdict::GsgpBetter : Verdict::GsgpWorse;
}

const char* verdict_symbol(Verdict v) noexcept
{
    switch (v) {
    case Verdict::GsgpBetter: return "▲";
    case Verdict::GsgpWorse: return "▼";
    case Verdict::NoDifference: return "♦";
    }
    return "?";
}

} // namespace gsnoise
