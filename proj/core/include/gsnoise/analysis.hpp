#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gsnoise/records.hpp"
#include "gsnoise/stats.hpp"

namespace gsnoise {

/// How per-level RIE/EIE are aggregated over repetitions.
enum class Aggregation {
    /// Metric applied to the median test NRMSE at x% and at 0%.
    MetricOfMedians,
    /// Median over runs of the metric, pairing each run with the 0% run of
    /// the same sample and repetition.
    MedianOfRunMetrics,
};

struct CellSummary {
    std::string dataset;
    Method method;
    NoiseLevel noise;
    std::size_t runs = 0;
    double median_train_nrmse = 0.0;
    double median_test_nrmse = 0.0;
    /// Present only for noise > 0.
    std::optional<double> test_rie;
    std::optional<double> test_eie;
};

enum class Measure { NRMSE, RIE, EIE };

const char* to_string(Measure m) noexcept;

struct WilcoxonRow {
    Measure measure;
    NoiseLevel noise;
    Alternative alternative;
    std::size_t pairs = 0;
    /// Empty when fewer than five non-zero paired differences exist.
    std::optional<WilcoxonResult> result;
    Verdict verdict = Verdict::NoDifference;
};

struct RobustnessReport {
    Aggregation aggregation = Aggregation::MetricOfMedians;
    std::vector<std::string> datasets;
    std::vector<NoiseLevel> levels;
    /// Ordered by dataset (registry order), method, noise level.
    std::vector<CellSummary> cells;
    /// Ordered by measure, then noise level. RIE/EIE rows skip 0%.
    std::vector<WilcoxonRow> tests;

    const CellSummary* find(std::string_view dataset, Method m, NoiseLevel r) const;
};

/// Medians per cell, RIE/EIE against the 0% baseline, and one-tailed
/// Wilcoxon tests paired over datasets: GSGP < GP for NRMSE and EIE,
/// GSGP > GP for RIE. Throws ConfigError if a (dataset, method) pair lacks
/// its 0% records.
RobustnessReport analyze(const std::vector<RunRecord>& records,
                         Aggregation aggregation = Aggregation::MetricOfMedians);

/// summary.csv and wilcoxon.csv.
void write_report(const RobustnessReport& report, const std::filesystem::path& out_dir);

/// Per dataset: nrmse_<name>.csv (noise_level,gp_train,gp_test,gsgp_train,gsgp_test) and
/// robustness_<name>.csv (noise_level,gp_rie,gsgp_rie,gp_eie,gsgp_eie). Returns paths written.
std::vector<std::filesystem::path> emit_plot_data(const RobustnessReport& report,
                                                  const std::filesystem::path& out_dir);

/// Text table of p-values and ▲/▼/♦ markers, one row per measure.
std::string render_table(const RobustnessReport& report);

} // namespace gsnoise
