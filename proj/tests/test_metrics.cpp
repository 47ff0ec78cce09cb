#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gsnoise/error.hpp"
#include "gsnoise/metrics.hpp"
#include "gsnoise/random.hpp"

using namespace gsnoise;

using V = std::vector<double>;

TEST_CASE("nrmse examples")
{
    CHECK(nrmse(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
    CHECK(nrmse(V{1, 2, 3, 6}, V{3, 3, 3, 3}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(nrmse(V{0, 2}, V{1, 1}) == 1.0);
    CHECK(nrmse(V{0, 2}, V{0, 0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("nrmse errors")
{
    CHECK_THROWS_AS(nrmse(V{1, 1, 1}, V{1, 2, 3}), DegenerateError);
    CHECK_THROWS_AS(nrmse(V{1, 2}, V{1}), DimensionError);
    CHECK_THROWS_AS(nrmse(V{1}, V{1}), DimensionError);
}

TEST_CASE("nrmse reference points on random datasets")
{
    Rng rng(3);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 2 + uniform_index(rng, 200);
        V t(n);
        for (double& y : t) y = uniform(rng, -50, 50);
        const double mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(n);
        REQUIRE(std::abs(nrmse(t, t)) <= 1e-9);
        REQUIRE(std::abs(nrmse(t, V(n, mean)) - 1.0) <= 1e-9);
    }
}

TEST_CASE("nrmse is invariant under joint scaling")
{
    Rng rng(4);
    for (int k = 0; k < 500; ++k) {
        V t(20), p(20);
        for (auto& y : t) y = uniform(rng, -5, 5);
        for (auto& y : p) y = uniform(rng, -5, 5);
        const double s = uniform(rng, 0.1, 100) * (k % 2 ? -1 : 1);
        V ts = t, ps = p;
        for (auto& y : ts) y *= s;
        for (auto& y : ps) y *= s;
        REQUIRE(nrmse(ts, ps) == doctest::Approx(nrmse(t, p)).epsilon(1e-12));
    }
}

TEST_CASE("rie and eie examples")
{
    CHECK(rie(0.7, 0.7) == 0.0);
    CHECK(rie(0.8, 0.5) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(rie(1, 0) == 1.0);
    CHECK(eie(0, 0.4) == 0.0);
    CHECK(eie(0.5, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(rie(0.3, 0.5) < 0.0);
}

TEST_CASE("eie equals rie plus the 0% eie")
{
    Rng rng(5);
    for (int k = 0; k < 100000; ++k) {
        const double e0 = uniform(rng, 0, 10);
        const double ex = uniform(rng, 0, 10);
        REQUIRE(std::abs(eie(ex, e0) - (rie(ex, e0) + eie(e0, e0))) <= 1e-12);
    }
}

TEST_CASE("both measures grow strictly with the noisy error")
{
    Rng rng(6);
    for (int k = 0; k < 10000; ++k) {
        const double e0 = uniform(rng, 0, 10);
        const double a = uniform(rng, 0, 10);
        const double b = a + uniform(rng, 1e-6, 1);
        REQUIRE(rie(b, e0) > rie(a, e0));
        REQUIRE(eie(b, e0) > eie(a, e0));
    }
}

TEST_CASE("error-by-noise table")
{
    ErrorByNoise t;
    t.set(NoiseLevel::from_rate(0.1), 0.8);
    CHECK_THROWS_AS(t.rie_at(NoiseLevel::from_rate(0.1)), DegenerateError);
    t.set(NoiseLevel{}, 0.5);
    CHECK(t.rie_at(NoiseLevel::from_rate(0.1)) == doctest::Approx(0.2));
    CHECK(t.eie_at(NoiseLevel::from_rate(0.1)) == doctest::Approx(0.8 / 1.5));
    CHECK(t.has(NoiseLevel{}));
    CHECK_FALSE(t.has(NoiseLevel::from_rate(0.2)));
    CHECK_THROWS_AS(t.at(NoiseLevel::from_rate(0.2)), ConfigError);
    CHECK_THROWS_AS(t.set(NoiseLevel{}, -1), DomainError);
    CHECK_THROWS_AS(t.set(NoiseLevel{}, NAN), DomainError);
}
