#include <doctest.h>

#include <fstream>
#include <set>

#include "gsnoise/error.hpp"
#include "gsnoise/plan.hpp"
#include "helpers.hpp"

using namespace gsnoise;

TEST_CASE("plan sizes")
{
    CHECK(full_plan().cells.size() == 16500);
    CHECK(plan_experiment(ConfigMap{}).cells.size() == 16500);
    CHECK(desk_plan().cells.size() == 900);

    for (const char* name : {"Keijzer-1", "Vladislavleva-4"}) {
        auto plan = plan_experiment(ConfigMap{{"datasets", name}, {"noise_levels", "0.1"}});
        CHECK(plan.cells.size() == 100);
    }
}

TEST_CASE("repetition scheme follows the sampling kind")
{
    auto plan = plan_experiment(
        ConfigMap{{"datasets", "Keijzer-1,Vladislavleva-1"}, {"noise_levels", "0"}});
    std::set<int> k1, v1;
    for (const auto& c : plan.cells) {
        (c.dataset == "Keijzer-1" ? k1 : v1).insert(c.sample_id);
        if (c.dataset == "Keijzer-1") {
            CHECK(c.sample_id == 0);
            CHECK(c.rep_index < 50);
        } else {
            CHECK(c.sample_id >= 1);
            CHECK(c.sample_id <= 5);
            CHECK(c.rep_index < 10);
        }
    }
    CHECK(k1 == std::set<int>{0});
    CHECK(v1 == std::set<int>{1, 2, 3, 4, 5});
}

TEST_CASE("cell keys are unique and seeds deterministic")
{
    auto plan = full_plan();
    std::set<std::string> keys;
    std::set<std::uint64_t> seeds;
    for (const auto& c : plan.cells) {
        keys.insert(c.key());
        seeds.insert(c.seed);
        REQUIRE(c.seed == run_seed(plan.base_seed, c.method, c.dataset, c.noise, c.sample_id,
                                   c.rep_index));
    }
    CHECK(keys.size() == plan.cells.size());
    CHECK(seeds.size() == plan.cells.size());
    auto again = full_plan();
    for (std::size_t i = 0; i < plan.cells.size(); i += 97) {
        CHECK(again.cells[i].seed == plan.cells[i].seed);
    }
}

TEST_CASE("plan errors")
{
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"datasets", "Keijzer-5"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"datasets", "Keijzer-1,Keijzer-1"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"noise_levels", "0,0.1,0.10"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"noise_levels", "0,abc"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"methods", "GP,GP"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"repetitions", "12"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"pop_size", "-3"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"popsize", "10"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(ConfigMap{{"preset", "huge"}}), ConfigError);
    CHECK_THROWS_AS(plan_experiment(std::filesystem::path("/nonexistent/plan.conf")), IoError);
}

TEST_CASE("config text parsing")
{
    auto m = parse_config("# comment\npreset = desk\n\n  datasets=Keijzer-1 , Keijzer-7 \n");
    CHECK(m.at("preset") == "desk");
    CHECK(m.size() == 2);
    auto plan = plan_experiment(m);
    CHECK(plan.datasets == std::vector<std::string>{"Keijzer-1", "Keijzer-7"});
    CHECK(plan.gp.pop_size == 200);
    CHECK(plan.cells.size() == 2 * 3 * 2 * 10);
    CHECK_THROWS_AS(parse_config("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);

    test::TempDir dir("plan");
    {
        std::ofstream out(dir.path() / "p.conf");
        out << "datasets = Keijzer-2\nnoise_levels = 0, 0.2\nrepetitions = 3\npop_size = 20\n";
    }
    auto p = plan_experiment(dir.path() / "p.conf");
    CHECK(p.cells.size() == 12);
    CHECK(p.gp.pop_size == 20);
    CHECK(p.gsgp.pop_size == 20);
}

TEST_CASE("config hashes track engine settings")
{
    auto a = full_plan();
    auto b = full_plan();
    CHECK(a.config_hash(Method::GP) == b.config_hash(Method::GP));
    CHECK(a.config_hash(Method::GP).size() == 16);
    CHECK(a.config_hash(Method::GP) != a.config_hash(Method::GSGP));
    b.gsgp.bound_mutation_trees = false;
    CHECK(a.config_hash(Method::GSGP) != b.config_hash(Method::GSGP));
    CHECK(a.config_hash(Method::GP) == b.config_hash(Method::GP));
    b.noise_per_repetition = true;
    CHECK(a.config_hash(Method::GP) != b.config_hash(Method::GP));
}

TEST_CASE("materialized data")
{
    auto plan = desk_plan();
    Cell c{Method::GP, "Vladislavleva-1", NoiseLevel::from_rate(0.2), 2, 0, 0};
    auto a = materialize(plan, c);
    CHECK(a.train.size() == 100);
    CHECK(a.test.size() == 2025);
    CHECK(a.train.noise == NoiseLevel::from_rate(0.2));

    SUBCASE("noise is fixed across repetitions and methods")
    {
        Cell other = c;
        other.rep_index = 7;
        other.method = Method::GSGP;
        auto b = materialize(plan, other);
        CHECK(b.train.targets == a.train.targets);
        CHECK(b.test.targets == a.test.targets);
    }
    SUBCASE("noise varies per repetition when asked")
    {
        auto p = plan;
        p.noise_per_repetition = true;
        Cell other = c;
        other.rep_index = 7;
        CHECK(materialize(p, c).train.targets != materialize(p, other).train.targets);
        CHECK(materialize(p, c).train.inputs == materialize(p, other).train.inputs);
    }
    SUBCASE("clean and noisy variants share inputs")
    {
        Cell clean = c;
        clean.noise = NoiseLevel{};
        auto z = materialize(plan, clean);
        CHECK(z.train.inputs == a.train.inputs);
        CHECK(z.train.targets != a.train.targets);
        CHECK(z.test.targets == a.test.targets);
    }
    SUBCASE("samples differ")
    {
        Cell other = c;
        other.sample_id = 3;
        CHECK_FALSE(materialize(plan, other).train.inputs == a.train.inputs);
    }
}

TEST_CASE("run_cell reproduces a record in isolation")
{
    auto plan = plan_experiment(ConfigMap{{"preset", "desk"},
                                          {"datasets", "Keijzer-1"},
                                          {"noise_levels", "0.1"},
                                          {"repetitions", "2"},
                                          {"pop_size", "20"},
                                          {"generations", "5"}});
    for (const auto& cell : plan.cells) {
        auto a = run_cell(plan, cell);
        auto b = run_cell(plan, cell);
        CHECK(a.same_outcome(b));
        CHECK(a.key() == cell.key());
        CHECK(a.seed == cell.seed);
        CHECK(a.config_hash == plan.config_hash(cell.method));
        CHECK(a.wall_time_s >= 0.0);
    }
}
