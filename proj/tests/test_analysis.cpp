#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gsnoise/analysis.hpp"
#include "gsnoise/error.hpp"
#include "helpers.hpp"

using namespace gsnoise;

namespace {

RunRecord record(Method m, const std::string& ds, double r, int rep, double train, double test)
{
    RunRecord rec;
    rec.method = m;
    rec.dataset = ds;
    rec.noise = NoiseLevel::from_rate(r);
    rec.rep_index = rep;
    rec.final_train_nrmse = train;
    rec.final_test_nrmse = test;
    rec.config_hash = "h";
    return rec;
}

/// Records over every registry dataset, both methods, and the standard grid.
/// GSGP trains better and degrades faster with noise.
std::vector<RunRecord> synthetic_records(int reps)
{
    std::vector<RunRecord> out;
    Rng rng(31);
    for (const auto& spec : benchmark_registry()) {
        for (auto level : standard_noise_grid()) {
            for (int rep = 0; rep < reps; ++rep) {
                const double r = level.rate();
                const double jitter = uniform(rng, -0.002, 0.002);
                out.push_back(record(Method::GP, spec.name, r, rep, 0.5 + jitter,
                                     0.6 + r + jitter));
                out.push_back(record(Method::GSGP, spec.name, r, rep, 0.2 + jitter,
                                     0.4 + 3 * r + jitter));
            }
        }
    }
    return out;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

} // namespace

TEST_CASE("identical errors at every level give zero RIE")
{
    std::vector<RunRecord> rs;
    for (double r : {0.0, 0.1, 0.2}) {
        for (int rep = 0; rep < 3; ++rep) {
            rs.push_back(record(Method::GP, "Keijzer-1", r, rep, 0.4, 0.7));
        }
    }
    auto rep = analyze(rs);
    for (const auto& c : rep.cells) {
        if (c.noise == NoiseLevel{}) {
            CHECK_FALSE(c.test_rie.has_value());
            CHECK_FALSE(c.test_eie.has_value());
        } else {
            CHECK(*c.test_rie == 0.0);
            CHECK(*c.test_eie == doctest::Approx(0.7 / 1.7));
        }
    }
}

TEST_CASE("two-level toy example")
{
    std::vector<RunRecord> rs{
        record(Method::GP, "Keijzer-1", 0.0, 0, 0.1, 0.4),
        record(Method::GP, "Keijzer-1", 0.0, 1, 0.1, 0.5),
        record(Method::GP, "Keijzer-1", 0.0, 2, 0.1, 0.9),
        record(Method::GP, "Keijzer-1", 0.1, 0, 0.1, 0.8),
        record(Method::GP, "Keijzer-1", 0.1, 1, 0.1, 0.7),
        record(Method::GP, "Keijzer-1", 0.1, 2, 0.1, 1.0),
    };
    auto rep = analyze(rs);
    REQUIRE(rep.cells.size() == 2);
    const auto* c = rep.find("Keijzer-1", Method::GP, NoiseLevel::from_rate(0.1));
    REQUIRE(c);
    CHECK(c->median_test_nrmse == 0.8);
    CHECK(*c->test_rie == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(*c->test_eie == doctest::Approx(0.8 / 1.5).epsilon(1e-14));
    CHECK(rep.tests.empty());
}

TEST_CASE("median of per-run metrics pairs runs by sample and repetition")
{
    std::vector<RunRecord> rs{
        record(Method::GP, "Keijzer-1", 0.0, 0, 0.1, 0.0),
        record(Method::GP, "Keijzer-1", 0.0, 1, 0.1, 1.0),
        record(Method::GP, "Keijzer-1", 0.1, 0, 0.1, 1.0),
        record(Method::GP, "Keijzer-1", 0.1, 1, 0.1, 1.0),
    };
    auto mm = analyze(rs, Aggregation::MetricOfMedians);
    auto mr = analyze(rs, Aggregation::MedianOfRunMetrics);
    const auto level = NoiseLevel::from_rate(0.1);
    // medians: E0 = 0.5, E10 = 1 -> 0.5 / 1.5
    CHECK(*mm.find("Keijzer-1", Method::GP, level)->test_rie == doctest::Approx(1.0 / 3.0));
    // per run: (1 - 0)/1 = 1 and (1 - 1)/2 = 0 -> 0.5
    CHECK(*mr.find("Keijzer-1", Method::GP, level)->test_rie == doctest::Approx(0.5));
}

TEST_CASE("missing baseline")
{
    std::vector<RunRecord> rs{record(Method::GP, "Keijzer-1", 0.1, 0, 0.1, 0.8)};
    CHECK_THROWS_AS(analyze(rs), ConfigError);
}

TEST_CASE("full report")
{
    auto rs = synthetic_records(3);
    auto rep = analyze(rs);
    CHECK(rep.datasets.size() == 15);
    CHECK(rep.datasets.front() == "Keijzer-1");
    CHECK(rep.datasets.back() == "Vladislavleva-8");
    CHECK(rep.levels.size() == 11);
    CHECK(rep.cells.size() == 15 * 2 * 11);
    CHECK(rep.tests.size() == 11 + 10 + 10);

    for (const auto& t : rep.tests) {
        CHECK(t.pairs == 15);
        if (t.noise == NoiseLevel{} && t.measure != Measure::NRMSE) {
            FAIL("RIE/EIE row at 0%");
        }
        REQUIRE(t.result.has_value());
        CHECK(t.result->exact);
        if (t.measure == Measure::RIE) {
            CHECK(t.alternative == Alternative::GsgpGreater);
            CHECK(t.result->p_value == doctest::Approx(1.0 / 32768));
            CHECK(t.verdict == Verdict::GsgpWorse);
        } else {
            CHECK(t.alternative == Alternative::GsgpLess);
        }
    }

    SUBCASE("shuffled input gives the same report")
    {
        auto shuffled = rs;
        std::shuffle(shuffled.begin(), shuffled.end(), Rng(4));
        auto again = analyze(shuffled);
        test::TempDir a("rep_a"), b("rep_b");
        write_report(rep, a.path());
        write_report(again, b.path());
        CHECK(slurp(a.path() / "summary.csv") == slurp(b.path() / "summary.csv"));
        CHECK(slurp(a.path() / "wilcoxon.csv") == slurp(b.path() / "wilcoxon.csv"));
        CHECK(render_table(rep) == render_table(again));
    }
    SUBCASE("plot data")
    {
        test::TempDir dir("plots");
        auto files = emit_plot_data(rep, dir.path());
        CHECK(files.size() == 30);
        std::vector<std::string> first;
        for (const auto& f : files) {
            CHECK(count_lines(f) == 12);
            first.push_back(slurp(f));
        }
        auto again = emit_plot_data(rep, dir.path());
        for (std::size_t i = 0; i < again.size(); ++i) CHECK(slurp(again[i]) == first[i]);

        std::ifstream in(dir.path() / "robustness_Keijzer-1.csv");
        std::string header, zero_row;
        std::getline(in, header);
        std::getline(in, zero_row);
        CHECK(header == "noise_level,gp_rie,gsgp_rie,gp_eie,gsgp_eie");
        CHECK(zero_row.rfind("0.00,0,0,", 0) == 0);
    }
    SUBCASE("table")
    {
        auto table = render_table(rep);
        CHECK(table.find("NRMSE") != std::string::npos);
        CHECK(table.find("▼") != std::string::npos);
        CHECK(table.find("---") != std::string::npos);
    }
}

TEST_CASE("too few datasets leaves the test empty")
{
    std::vector<RunRecord> rs;
    for (const char* ds : {"Keijzer-1", "Keijzer-2"}) {
        rs.push_back(record(Method::GP, ds, 0, 0, 0.1, 0.4));
        rs.push_back(record(Method::GSGP, ds, 0, 0, 0.1, 0.3));
    }
    auto rep = analyze(rs);
    REQUIRE(rep.tests.size() == 1);
    CHECK(rep.tests[0].pairs == 2);
    CHECK_FALSE(rep.tests[0].result.has_value());
    CHECK(rep.tests[0].verdict == Verdict::NoDifference);
    CHECK(render_table(rep).find("n/a") != std::string::npos);
}
