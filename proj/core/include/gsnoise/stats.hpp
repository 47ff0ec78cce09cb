#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gsnoise {

/// Median with the midpoint convention for even counts. Throws ConfigError
/// on empty input.
double median(std::span<const double> values);

/// Per-dataset values of one measure for both methods at one noise level.
struct PairedSample {
    std::vector<double> gp;
    std::vector<double> gsgp;

    void add(double gp_value, double gsgp_value)
    {
        gp.push_back(gp_value);
        gsgp.push_back(gsgp_value);
    }
    std::size_t size() const noexcept { return gp.size(); }
};

/// One-tailed alternative on the paired difference gsgp - gp.
enum class Alternative { GsgpLess, GsgpGreater };

enum class WilcoxonMethod { Auto, Exact, Normal };

struct WilcoxonResult {
    /// W+: rank sum of positive (gsgp - gp) differences; average ranks on ties.
    double statistic = 0.0;
    double p_value = 1.0;
    /// Number of non-zero differences actually ranked.
    std::size_t n = 0;
    bool exact = true;
};

/// Largest n for which Auto picks the exact null distribution.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Paired one-tailed Wilcoxon signed-rank test. Zero differences are
/// dropped; fewer than five remaining throws DegenerateError.
WilcoxonResult wilcoxon_one_tailed(const PairedSample& pairs, Alternative alternative,
                                   WilcoxonMethod method = WilcoxonMethod::Auto);

/// Average ranks (1-based) of the absolute values, ties sharing the mean rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Report symbols at 95% confidence: GSGP better, GSGP worse, no difference.
enum class Verdict { GsgpBetter, GsgpWorse, NoDifference };

inline constexpr double kSignificance = 0.05;

/// Maps a one-tailed p-value to the direction its alternative encodes.
/// GsgpLess on a lower-is-better measure means GSGP is better.
Verdict verdict(double p_value, Alternative alternative, bool lower_is_better = true);

/// "▲", "▼" or "♦".
const char* verdict_symbol(Verdict v) noexcept;

} // namespace gsnoise
