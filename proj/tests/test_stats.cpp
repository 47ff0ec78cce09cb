#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gsnoise/error.hpp"
#include "gsnoise/random.hpp"
#include "gsnoise/stats.hpp"

using namespace gsnoise;

namespace {

/// P-value by enumerating all 2^n sign patterns over the (average) ranks.
double brute_force_p(const PairedSample& s, Alternative alt)
{
    std::vector<double> d;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.gsgp[i] - s.gp[i] != 0.0) d.push_back(s.gsgp[i] - s.gp[i]);
    }
    std::vector<double> mag(d.size());
    std::transform(d.begin(), d.end(), mag.begin(), [](double x) { return std::abs(x); });
    auto ranks = average_ranks(mag);
    double w = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] > 0) w += ranks[i];
    }
    const std::size_t n = d.size();
    std::size_t hits = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double t = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) t += ranks[i];
        }
        if (alt == Alternative::GsgpLess ? t <= w + 1e-9 : t >= w - 1e-9) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(std::size_t{1} << n);
}

PairedSample from_diffs(const std::vector<double>& diffs)
{
    PairedSample s;
    for (double x : diffs) s.add(10.0, 10.0 + x);
    return s;
}

} // namespace

TEST_CASE("median examples")
{
    CHECK(median(std::vector<double>{3}) == 3);
    CHECK(median(std::vector<double>{1, 2, 3, 4}) == 2.5);
    CHECK(median(std::vector<double>{5, 1, 3}) == 3);
    CHECK_THROWS_AS(median(std::vector<double>{}), ConfigError);
}

TEST_CASE("wilcoxon examples")
{
    SUBCASE("five differences all favouring the alternative")
    {
        auto greater = wilcoxon_one_tailed(from_diffs({1, 2, 3, 4, 5}), Alternative::GsgpGreater);
        CHECK(greater.p_value == doctest::Approx(0.03125).epsilon(1e-15));
        CHECK(greater.statistic == 15);
        CHECK(greater.exact);
        auto less = wilcoxon_one_tailed(from_diffs({-1, -2, -3, -4, -5}), Alternative::GsgpLess);
        CHECK(less.p_value == doctest::Approx(0.03125).epsilon(1e-15));
    }
    SUBCASE("symmetric differences sit at the centre")
    {
        auto r = wilcoxon_one_tailed(from_diffs({1, -1, 2, -2, 3, -3}), Alternative::GsgpLess);
        CHECK(r.p_value > 0.4);
        CHECK(r.p_value < 0.7);
    }
    SUBCASE("all differences zero")
    {
        CHECK_THROWS_AS(wilcoxon_one_tailed(from_diffs({0, 0, 0, 0, 0, 0}), Alternative::GsgpLess),
                        DegenerateError);
        CHECK_THROWS_AS(wilcoxon_one_tailed(from_diffs({1, 2, 0, 3, 0, 4}), Alternative::GsgpLess),
                        DegenerateError);
    }
    SUBCASE("mismatched pairs")
    {
        PairedSample s = from_diffs({1, 2, 3, 4, 5});
        s.gp.pop_back();
        CHECK_THROWS_AS(wilcoxon_one_tailed(s, Alternative::GsgpLess), DimensionError);
    }
}

TEST_CASE("average ranks")
{
    CHECK(average_ranks(std::vector<double>{3, 1, 2}) == std::vector<double>{3, 1, 2});
    CHECK(average_ranks(std::vector<double>{1, 2, 2, 5}) == std::vector<double>{1, 2.5, 2.5, 4});
    CHECK(average_ranks(std::vector<double>{7, 7, 7}) == std::vector<double>{2, 2, 2});
}

TEST_CASE("exact p-values match brute-force enumeration, ties included")
{
    Rng rng(10);
    for (int k = 0; k < 400; ++k) {
        const std::size_t n = 5 + uniform_index(rng, 10);
        std::vector<double> diffs(n);
        for (auto& x : diffs) {
            // coarse values force ties and the occasional zero
            x = std::round(uniform(rng, -4, 4) * 2) / 2;
        }
        auto s = from_diffs(diffs);
        for (auto alt : {Alternative::GsgpLess, Alternative::GsgpGreater}) {
            double expected;
            try {
                auto r = wilcoxon_one_tailed(s, alt, WilcoxonMethod::Exact);
                expected = brute_force_p(s, alt);
                REQUIRE(r.p_value == doctest::Approx(expected).epsilon(1e-12));
            } catch (const DegenerateError&) {
                std::size_t nz = std::count_if(diffs.begin(), diffs.end(),
                                               [](double x) { return x != 0.0; });
                REQUIRE(nz < 5);
            }
        }
    }
}

TEST_CASE("exact p-values depend only on ranks")
{
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> diffs(12);
        for (auto& x : diffs) x = uniform(rng, -1, 1);
        std::vector<double> warped(diffs.size());
        std::transform(diffs.begin(), diffs.end(), warped.begin(), [](double x) {
            return std::copysign(std::exp(5 * std::abs(x)) - 0.5, x);
        });
        for (auto alt : {Alternative::GsgpLess, Alternative::GsgpGreater}) {
            REQUIRE(wilcoxon_one_tailed(from_diffs(diffs), alt).p_value
                    == wilcoxon_one_tailed(from_diffs(warped), alt).p_value);
        }
    }
}

TEST_CASE("opposite one-tailed p-values sum to at least one")
{
    Rng rng(12);
    for (int k = 0; k < 500; ++k) {
        std::vector<double> diffs(5 + uniform_index(rng, 15));
        for (auto& x : diffs) x = std::round(uniform(rng, -3, 3) * 4) / 4 + 0.01;
        auto s = from_diffs(diffs);
        const double a = wilcoxon_one_tailed(s, Alternative::GsgpLess).p_value;
        const double b = wilcoxon_one_tailed(s, Alternative::GsgpGreater).p_value;
        REQUIRE(a + b >= 1.0 - 1e-12);
    }
}

TEST_CASE("exact and normal approximation agree at n = 15")
{
    Rng rng(13);
    double worst = 0;
    for (int k = 0; k < 500; ++k) {
        std::vector<double> diffs(15);
        const double shift = uniform(rng, -0.8, 0.8);
        for (auto& x : diffs) x = standard_normal(rng) + shift;
        auto s = from_diffs(diffs);
        for (auto alt : {Alternative::GsgpLess, Alternative::GsgpGreater}) {
            auto e = wilcoxon_one_tailed(s, alt, WilcoxonMethod::Exact);
            auto a = wilcoxon_one_tailed(s, alt, WilcoxonMethod::Normal);
            CHECK(e.exact);
            CHECK_FALSE(a.exact);
            CHECK(e.statistic == a.statistic);
            worst = std::max(worst, std::abs(e.p_value - a.p_value));
        }
    }
    CHECK(worst < 0.02);
}

TEST_CASE("automatic mode switches to the normal approximation above 25 pairs")
{
    std::vector<double> diffs;
    for (int i = 1; i <= 26; ++i) diffs.push_back(i % 3 ? i : -i);
    CHECK_FALSE(wilcoxon_one_tailed(from_diffs(diffs), Alternative::GsgpLess).exact);
    diffs.pop_back();
    CHECK(wilcoxon_one_tailed(from_diffs(diffs), Alternative::GsgpLess).exact);
}

TEST_CASE("verdicts and symbols")
{
    CHECK(verdict(0.01, Alternative::GsgpLess) == Verdict::GsgpBetter);
    CHECK(verdict(0.01, Alternative::GsgpGreater) == Verdict::GsgpWorse);
    CHECK(verdict(0.2, Alternative::GsgpLess) == Verdict::NoDifference);
    CHECK(verdict(0.05, Alternative::GsgpLess) == Verdict::NoDifference);
    CHECK(std::string(verdict_symbol(Verdict::GsgpBetter)) == "▲");
    CHECK(std::string(verdict_symbol(Verdict::GsgpWorse)) == "▼");
    CHECK(std::string(verdict_symbol(Verdict::NoDifference)) == "♦");
}
