// gsnoise command-line front end: dataset materialization, experiment
// execution, analysis, and tabular reporting.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "gsnoise/analysis.hpp"
#include "gsnoise/dataset_io.hpp"
#include "gsnoise/error.hpp"
#include "gsnoise/execute.hpp"
#include "gsnoise/plan.hpp"

namespace fs = std::filesystem;
using namespace gsnoise;

namespace {

constexpr const char* kSeedEnv = "GSNOISE_SEED";

int exit_code(ErrorCategory c)
{
    switch (c) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Io: return 3;
    case ErrorCategory::Dimension:
    case ErrorCategory::Domain:
    case ErrorCategory::Degenerate: return 4;
    }
    return 1;
}

std::uint64_t seed_override(std::uint64_t fallback)
{
    if (const char* env = std::getenv(kSeedEnv); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string(kSeedEnv) + " is not an unsigned integer");
        }
    }
    return fallback;
}

std::string file_stem(const std::string& name, Partition p, int sample, NoiseLevel r)
{
    return name + "_" + to_string(p) + "_s" + std::to_string(sample) + "_r" + r.label();
}

struct GenDataArgs {
    std::vector<std::string> datasets{"all"};
    std::vector<std::string> noise{"0"};
    std::vector<int> samples;
    std::uint64_t seed = ExperimentPlan{}.base_seed;
    std::string out = "data";
};

int gen_data(const GenDataArgs& args)
{
    ExperimentPlan plan;
    plan.base_seed = seed_override(args.seed);
    std::vector<std::string> names;
    if (args.datasets.size() == 1 && args.datasets.front() == "all") {
        for (const auto& s : benchmark_registry()) names.push_back(s.name);
    } else {
        names = args.datasets;
    }
    std::vector<NoiseLevel> levels;
    if (args.noise.size() == 1 && args.noise.front() == "standard") {
        levels = standard_noise_grid();
    } else {
        for (const auto& n : args.noise) levels.push_back(NoiseLevel::parse(n));
    }

    fs::create_directories(args.out);
    std::size_t files = 0;
    for (const auto& name : names) {
        const auto& spec = find_spec(name);
        std::vector<int> samples = args.samples;
        if (samples.empty()) {
            if (spec.uses_uniform_sampling()) {
                for (int s = 1; s <= kUniformResamples; ++s) samples.push_back(s);
            } else {
                samples.push_back(0);
            }
        }
        for (int sample : samples) {
            for (auto level : levels) {
                Cell cell{Method::GP, name, level, sample, 0, 0};
                const auto data = materialize(plan, cell);
                const auto stem = file_stem(name, Partition::Train, sample, level);
                write_dataset_csv(fs::path(args.out) / (stem + ".csv"), data.train);
                write_manifest(fs::path(args.out) / (stem + ".manifest"),
                               make_manifest(spec, data.train,
                                             noise_seed(plan.base_seed, name, level, sample, 0,
                                                        false)));
                files += 2;
            }
            const auto data = materialize(plan, {Method::GP, name, NoiseLevel{}, sample, 0, 0});
            const auto stem = file_stem(name, Partition::Test, sample, NoiseLevel{});
            write_dataset_csv(fs::path(args.out) / (stem + ".csv"), data.test);
            write_manifest(fs::path(args.out) / (stem + ".manifest"),
                           make_manifest(spec, data.test,
                                         data_seed(plan.base_seed, name, Partition::Test, sample)));
            files += 2;
            for (auto p : {Partition::Train, Partition::Test}) {
                if (auto note = spec.count_discrepancy(p); !note.empty() && sample <= 1) {
                    std::cerr << "note: " << note << '\n';
                }
            }
        }
    }
    std::cout << "wrote " << files << " files to " << args.out << '\n';
    return 0;
}

struct RunArgs {
    std::string plan;
    std::string preset;
    std::size_t parallelism = 1;
    bool resume = false;
    bool dry_run = false;
    std::string out = "results";
};

int run(const RunArgs& args)
{
    ConfigMap config;
    if (!args.plan.empty()) {
        config = read_config(args.plan);
    }
    if (!args.preset.empty()) {
        config["preset"] = args.preset;
    }
    if (const char* env = std::getenv(kSeedEnv); env && *env) {
        config["base_seed"] = std::to_string(seed_override(0));
    }
    const auto plan = plan_experiment(config);

    if (args.dry_run) {
        std::cout << plan.describe() << "# " << plan.cells.size() << " runs planned\n";
        for (const auto& cell : plan.cells) {
            std::cout << cell.key() << " seed=" << cell.seed << '\n';
        }
        return 0;
    }

    ExecuteOptions opts;
    opts.parallelism = args.parallelism;
    opts.out_dir = args.out;
    opts.resume = args.resume;
    const std::size_t total = plan.cells.size();
    std::size_t finished = 0;
    opts.on_record = [&](const RunRecord& r) {
        ++finished;
        std::cerr << "[" << finished << "] " << r.key() << " train=" << r.final_train_nrmse
                  << " test=" << r.final_test_nrmse << '\n';
    };
    const auto summary = execute(plan, opts);
    std::cout << "planned " << total << ", executed " << summary.executed << ", skipped "
              << summary.skipped << ", failed " << summary.failures.size() << '\n';
    return summary.failures.empty() ? 0 : 5;
}

Aggregation parse_aggregation(const std::string& s)
{
    if (s == "metric-of-medians") return Aggregation::MetricOfMedians;
    if (s == "median-of-runs") return Aggregation::MedianOfRunMetrics;
    throw ConfigError("unknown aggregation '" + s + "'");
}

std::vector<RunRecord> load_records(const fs::path& dir)
{
    const auto path = fs::is_directory(dir) ? dir / kRecordsFile : dir;
    return read_records(path);
}

int analyze_cmd(const std::string& records_dir, const std::string& out, const std::string& agg)
{
    const auto report = analyze(load_records(records_dir), parse_aggregation(agg));
    write_report(report, out);
    const auto files = emit_plot_data(report, fs::path(out) / "plots");
    std::cout << "analysis of " << report.cells.size() << " cells written to " << out << " ("
              << files.size() << " plot-data files)\n";
    return 0;
}

int report_cmd(const std::string& records_dir, const std::string& out, const std::string& agg)
{
    const auto table = render_table(analyze(load_records(records_dir), parse_aggregation(agg)));
    if (out.empty()) {
        std::cout << table;
    } else {
        std::ofstream f(out);
        if (!f) throw IoError("cannot open " + out);
        f << table;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Noise-robustness laboratory for canonical GP and geometric semantic GP"};
    app.require_subcommand(1);

    GenDataArgs gd;
    auto* gen = app.add_subcommand("gen-data", "Materialize benchmark datasets and noisy variants");
    gen->add_option("--dataset", gd.datasets, "Dataset names, or 'all'")->delimiter(',');
    gen->add_option("--noise", gd.noise, "Noise rates, or 'standard' for the 11-level grid")
        ->delimiter(',');
    gen->add_option("--sample", gd.samples, "Sample ids (default: 0, or 1..5 when resampled)")
        ->delimiter(',');
    gen->add_option("--seed", gd.seed, "Base seed (overridden by $GSNOISE_SEED)");
    gen->add_option("--out", gd.out, "Output directory");

    RunArgs ra;
    auto* runc = app.add_subcommand("run", "Execute an experiment plan");
    runc->add_option("--plan", ra.plan, "Plan file (key = value)");
    runc->add_option("--preset", ra.preset, "full or desk (overrides the plan's preset)");
    runc->add_option("--parallelism", ra.parallelism, "Concurrent cells")
        ->check(CLI::PositiveNumber);
    runc->add_flag("--resume", ra.resume, "Skip cells already in records.csv");
    runc->add_flag("--dry-run", ra.dry_run, "Print the expanded plan and exit");
    runc->add_option("--out", ra.out, "Output directory");

    std::string records_dir, analysis_out = "analysis", aggregation = "metric-of-medians";
    auto* an = app.add_subcommand("analyze", "Aggregate records into summary and plot data");
    an->add_option("--records", records_dir, "Directory holding records.csv")->required();
    an->add_option("--out", analysis_out, "Output directory");
    an->add_option("--aggregation", aggregation, "metric-of-medians or median-of-runs");

    std::string report_records, report_out, report_agg = "metric-of-medians";
    auto* rep = app.add_subcommand("report", "Render the Wilcoxon p-value table");
    rep->add_option("--records", report_records, "Directory holding records.csv")->required();
    rep->add_option("--out", report_out, "Write the table here instead of stdout");
    rep->add_option("--aggregation", report_agg, "metric-of-medians or median-of-runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen) return gen_data(gd);
        if (*runc) return run(ra);
        if (*an) return analyze_cmd(records_dir, analysis_out, aggregation);
        if (*rep) return report_cmd(report_records, report_out, report_agg);
    } catch (const Error& e) {
        std::cerr << "error[" << to_string(e.category()) << "]: " << e.what() << '\n';
        return exit_code(e.category());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error[io]: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
