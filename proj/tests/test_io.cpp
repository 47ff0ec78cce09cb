#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "gsnoise/dataset_io.hpp"
#include "gsnoise/error.hpp"
#include "gsnoise/records.hpp"
#include "helpers.hpp"

using namespace gsnoise;

TEST_CASE("real formatting round-trips exactly")
{
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double v = uniform(rng, -1e6, 1e6) * std::pow(10.0, uniform(rng, -20, 20));
        REQUIRE(parse_real(format_real(v)) == v);
    }
    CHECK(format_real(0.1) == "0.1");
    CHECK(parse_real("inf") == std::numeric_limits<double>::infinity());
    CHECK(parse_real("-inf") == -std::numeric_limits<double>::infinity());
    CHECK(std::isnan(parse_real("nan")));
    CHECK_THROWS_AS(parse_real("1.5x"), IoError);
    CHECK_THROWS_AS(parse_real(""), IoError);
}

TEST_CASE("dataset csv and manifest round-trip")
{
    test::TempDir dir("io");
    Rng rng(4);
    const auto& spec = find_spec("Vladislavleva-5");
    auto clean = build_dataset(spec, Partition::Train, 3, rng);
    auto noisy = inject_noise(clean, NoiseLevel::from_rate(0.1), rng);

    write_dataset_csv(dir.path() / "v5.csv", noisy);
    auto back = read_dataset_csv(dir.path() / "v5.csv");
    CHECK(back.inputs == noisy.inputs);
    CHECK(back.targets == noisy.targets);

    std::ifstream in(dir.path() / "v5.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "x0,x1,x2,y");

    auto m = make_manifest(spec, noisy, 1234);
    CHECK(m.instances == 300);
    CHECK(m.listed_instances == 300);
    CHECK(m.note.empty());
    write_manifest(dir.path() / "v5.manifest", m);
    auto mb = read_manifest(dir.path() / "v5.manifest");
    CHECK(mb.name == m.name);
    CHECK(mb.partition == m.partition);
    CHECK(mb.sample_id == 3);
    CHECK(mb.noise == NoiseLevel::from_rate(0.1));
    CHECK(mb.seed == 1234);
    CHECK(mb.instances == 300);
}

TEST_CASE("manifest records count discrepancies")
{
    Rng rng(0);
    const auto& spec = find_spec("Vladislavleva-8");
    auto test = build_dataset(spec, Partition::Test, 1, rng);
    auto m = make_manifest(spec, test, 0);
    CHECK(m.instances == 1156);
    CHECK(m.listed_instances == 1089);
    CHECK_FALSE(m.note.empty());
}

TEST_CASE("reading missing or malformed files")
{
    test::TempDir dir("io_bad");
    CHECK_THROWS_AS(read_dataset_csv(dir.path() / "nope.csv"), IoError);
    {
        std::ofstream out(dir.path() / "bad.csv");
        out << "x0,y\n1,2\n3\n";
    }
    CHECK_THROWS_AS(read_dataset_csv(dir.path() / "bad.csv"), Error);
}

TEST_CASE("run records round-trip through serialization")
{
    Rng rng(8);
    for (int i = 0; i < 2000; ++i) {
        RunRecord r;
        r.method = i % 2 ? Method::GSGP : Method::GP;
        r.dataset = benchmark_registry()[i % 15].name;
        r.noise = standard_noise_grid()[i % 11];
        r.sample_id = i % 6;
        r.rep_index = i % 50;
        r.seed = rng();
        r.final_train_nrmse = uniform(rng, 0, 3);
        r.final_test_nrmse = i % 97 == 0 ? std::numeric_limits<double>::infinity()
                                         : uniform(rng, 0, 1e3);
        r.wall_time_s = uniform(rng, 0, 100);
        r.config_hash = "0123456789abcdef";
        REQUIRE(parse_record(serialize_record(r)) == r);
    }
    CHECK_THROWS_AS(parse_record("GP,Keijzer-1,0.00,0,0"), IoError);
    CHECK_THROWS_AS(parse_method("SGP"), ConfigError);
}

TEST_CASE("record files")
{
    test::TempDir dir("records");
    std::vector<RunRecord> rs(3);
    rs[0].dataset = "Keijzer-2";
    rs[1].dataset = "Keijzer-1";
    rs[1].method = Method::GSGP;
    rs[2].dataset = "Keijzer-1";
    write_records(dir.path() / "r.csv", rs);
    auto back = read_records(dir.path() / "r.csv");
    CHECK(back == rs);
    sort_records(back);
    CHECK(back[0].key() <= back[1].key());
    CHECK(back[1].key() <= back[2].key());
    RunRecord a = rs[0], b = rs[0];
    b.wall_time_s = 9;
    CHECK(a.same_outcome(b));
    CHECK_FALSE(a == b);
}
