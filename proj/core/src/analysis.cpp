#include "gsnoise/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "gsnoise/dataset_io.hpp"
#include "gsnoise/error.hpp"
#include "gsnoise/metrics.hpp"

namespace gsnoise {

const char* to_string(Measure m) noexcept
{
    switch (m) {
    case Measure::NRMSE: return "NRMSE";
    case Measure::RIE: return "RIE";
    case Measure::EIE: return "EIE";
    }
    return "?";
}

const CellSummary* RobustnessReport::find(std::string_view dataset, Method m, NoiseLevel r) const
{
    for (const auto& c : cells) {
        if (c.dataset == dataset && c.method == m && c.noise == r) {
            return &c;
        }
    }
    return nullptr;
}

namespace {

/// Registry order first, then anything unknown alphabetically.
std::size_t dataset_rank(const std::string& name)
{
    const auto& reg = benchmark_registry();
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (reg[i].name == name) {
            return i;
        }
    }
    return reg.size();
}

using GroupKey = std::tuple<std::string, Method, NoiseLevel>;

} // namespace

RobustnessReport analyze(const std::vector<RunRecord>& records, Aggregation aggregation)
{
    RobustnessReport report;
    report.aggregation = aggregation;

    std::map<GroupKey, std::vector<const RunRecord*>> groups;
    std::set<std::string> names;
    std::set<NoiseLevel> levels;
    std::set<Method> methods;
    for (const auto& r : records) {
        groups[{r.dataset, r.method, r.noise}].push_back(&r);
        names.insert(r.dataset);
        levels.insert(r.noise);
        methods.insert(r.method);
    }
    report.datasets.assign(names.begin(), names.end());
    std::stable_sort(report.datasets.begin(), report.datasets.end(),
                     [](const std::string& a, const std::string& b) {
                         return dataset_rank(a) < dataset_rank(b);
                     });
    report.levels.assign(levels.begin(), levels.end());

    const NoiseLevel zero{};
    for (const auto& name : report.datasets) {
        for (auto m : methods) {
            auto base_it = groups.find({name, m, zero});
            bool any = false;
            for (auto r : report.levels) {
                any = any || groups.contains({name, m, r});
            }
            if (!any) {
                continue;
            }
            if (base_it == groups.end()) {
                throw ConfigError("missing 0% baseline records for " + name + " / "
                                  + to_string(m));
            }
            const auto& base_runs = base_it->second;
            std::vector<double> base_test;
            for (const auto* r : base_runs) base_test.push_back(r->final_test_nrmse);
            const double e0 = median(base_test);

            for (auto level : report.levels) {
                auto it = groups.find({name, m, level});
                if (it == groups.end()) {
                    continue;
                }
                CellSummary cell{name, m, level, it->second.size(), 0.0, 0.0, {}, {}};
                std::vector<double> train, test;
                for (const auto* r : it->second) {
                    train.push_back(r->final_train_nrmse);
                    test.push_back(r->final_test_nrmse);
                }
                cell.median_train_nrmse = median(train);
                cell.median_test_nrmse = median(test);
                if (level != zero) {
                    if (aggregation == Aggregation::MetricOfMedians) {
                        cell.test_rie = rie(cell.median_test_nrmse, e0);
                        cell.test_eie = eie(cell.median_test_nrmse, e0);
                    } else {
                        std::map<std::pair<int, int>, double> baseline;
                        for (const auto* r : base_runs) {
                            baseline[{r->sample_id, r->rep_index}] = r->final_test_nrmse;
                        }
                        std::vector<double> ries, eies;
                        for (const auto* r : it->second) {
                            auto b = baseline.find({r->sample_id, r->rep_index});
                            if (b == baseline.end()) continue;
                            ries.push_back(rie(r->final_test_nrmse, b->second));
                            eies.push_back(eie(r->final_test_nrmse, b->second));
                        }
                        if (!ries.empty()) {
                            cell.test_rie = median(ries);
                            cell.test_eie = median(eies);
                        }
                    }
                }
                report.cells.push_back(cell);
            }
        }
    }

    if (methods.contains(Method::GP) && methods.contains(Method::GSGP)) {
        for (auto measure : {Measure::NRMSE, Measure::RIE, Measure::EIE}) {
            for (auto level : report.levels) {
                if (measure != Measure::NRMSE && level == zero) {
                    continue;
                }
                WilcoxonRow row{measure, level,
                                measure == Measure::RIE ? Alternative::GsgpGreater
                                                        : Alternative::GsgpLess,
                                0, std::nullopt, Verdict::NoDifference};
                PairedSample pairs;
                for (const auto& name : report.datasets) {
                    const auto* gp = report.find(name, Method::GP, level);
                    const auto* gs = report.find(name, Method::GSGP, level);
                    if (!gp || !gs) continue;
                    auto value = [&](const CellSummary& c) -> std::optional<double> {
                        switch (measure) {
                        case Measure::NRMSE: return c.median_test_nrmse;
                        case Measure::RIE: return c.test_rie;
                        case Measure::EIE: return c.test_eie;
                        }
                        return std::nullopt;
                    };
                    auto a = value(*gp);
                    auto b = value(*gs);
                    if (a && b) pairs.add(*a, *b);
                }
                row.pairs = pairs.size();
                try {
                    row.result = wilcoxon_one_tailed(pairs, row.alternative);
                    row.verdict = verdict(row.result->p_value, row.alternative);
                } catch (const DegenerateError&) {
                    row.result.reset();
                }
                report.tests.push_back(row);
            }
        }
    }
    return report;
}

namespace {

std::string opt_real(const std::optional<double>& v)
{
    return v ? format_real(*v) : std::string{};
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

} // namespace

void write_report(const RobustnessReport& report, const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    {
        auto out = open_out(out_dir / "summary.csv");
        out << "dataset,method,noise_level,runs,median_train_nrmse,median_test_nrmse,test_rie,"
               "test_eie\n";
        for (const auto& c : report.cells) {
            out << c.dataset << ',' << to_string(c.method) << ',' << c.noise.label() << ','
                << c.runs << ',' << format_real(c.median_train_nrmse) << ','
                << format_real(c.median_test_nrmse) << ',' << opt_real(c.test_rie) << ','
                << opt_real(c.test_eie) << '\n';
        }
    }
    {
        auto out = open_out(out_dir / "wilcoxon.csv");
        out << "measure,noise_level,alternative,pairs,statistic,p_value,exact,symbol\n";
        for (const auto& t : report.tests) {
            out << to_string(t.measure) << ',' << t.noise.label() << ','
                << (t.alternative == Alternative::GsgpLess ? "gsgp_less" : "gsgp_greater") << ','
                << t.pairs << ',';
            if (t.result) {
                out << format_real(t.result->statistic) << ',' << format_real(t.result->p_value)
                    << ',' << (t.result->exact ? "true" : "false");
            } else {
                out << ",,";
            }
            out << ',' << verdict_symbol(t.verdict) << '\n';
        }
    }
}

std::vector<std::filesystem::path> emit_plot_data(const RobustnessReport& report,
                                                  const std::filesystem::path& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    const NoiseLevel zero{};
    for (const auto& name : report.datasets) {
        auto nrmse_path = out_dir / ("nrmse_" + name + ".csv");
        auto robust_path = out_dir / ("robustness_" + name + ".csv");
        auto nrmse_out = open_out(nrmse_path);
        auto robust_out = open_out(robust_path);
        nrmse_out << "noise_level,gp_train,gp_test,gsgp_train,gsgp_test\n";
        robust_out << "noise_level,gp_rie,gsgp_rie,gp_eie,gsgp_eie\n";
        for (auto level : report.levels) {
            const auto* gp = report.find(name, Method::GP, level);
            const auto* gs = report.find(name, Method::GSGP, level);
            auto train = [](const CellSummary* c) {
                return c ? format_real(c->median_train_nrmse) : std::string{};
            };
            auto test = [](const CellSummary* c) {
                return c ? format_real(c->median_test_nrmse) : std::string{};
            };
            // At 0% the measures reduce to RIE = 0 and EIE = E0 / (1 + E0).
            auto rie_of = [&](const CellSummary* c) {
                if (!c) return std::string{};
                return level == zero ? format_real(0.0) : opt_real(c->test_rie);
            };
            auto eie_of = [&](const CellSummary* c) {
                if (!c) return std::string{};
                return level == zero ? format_real(eie(c->median_test_nrmse, c->median_test_nrmse))
                                     : opt_real(c->test_eie);
            };
            nrmse_out << level.label() << ',' << train(gp) << ',' << test(gp) << ',' << train(gs)
                      << ',' << test(gs) << '\n';
            robust_out << level.label() << ',' << rie_of(gp) << ',' << rie_of(gs) << ','
                       << eie_of(gp) << ',' << eie_of(gs) << '\n';
        }
        if (!nrmse_out || !robust_out) {
            throw IoError("write failed under " + out_dir.string());
        }
        written.push_back(nrmse_path);
        written.push_back(robust_path);
    }
    return written;
}

std::string render_table(const RobustnessReport& report)
{
    std::ostringstream os;
    char buf[64];
    os << "Training instances affected by noise (%)\n";
    std::snprintf(buf, sizeof buf, "%-8s", "");
    os << buf;
    for (auto level : report.levels) {
        std::snprintf(buf, sizeof buf, " %9g", static_cast<double>(level.basis_points()) / 100.0);
        os << buf;
    }
    os << '\n';
    for (auto measure : {Measure::NRMSE, Measure::RIE, Measure::EIE}) {
        std::snprintf(buf, sizeof buf, "%-8s", to_string(measure));
        os << buf;
        for (auto level : report.levels) {
            const WilcoxonRow* row = nullptr;
            for (const auto& t : report.tests) {
                if (t.measure == measure && t.noise == level) row = &t;
            }
            if (!row) {
                os << "       ---";
            } else if (!row->result) {
                os << "     n/a ♦";
            } else {
                std::snprintf(buf, sizeof buf, " %7.3f ", row->result->p_value);
                os << buf << verdict_symbol(row->verdict);
            }
        }
        os << '\n';
    }
    os << "▲ GSGP better, ▼ GSGP worse, ♦ no significant difference (alpha = 0.05)\n";
    return os.str();
}

} // namespace gsnoise
