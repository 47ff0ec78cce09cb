#include <benchmark/benchmark.h>

#include "gsnoise/gp.hpp"
#include "gsnoise/gsgp.hpp"

using namespace gsnoise;

namespace {

struct Data {
    Dataset train;
    Dataset test;
};

const Data& keijzer1()
{
    static const Data d = [] {
        Rng rng(0);
        const auto& spec = find_spec("Keijzer-1");
        return Data{build_dataset(spec, Partition::Train, 0, rng),
                    build_dataset(spec, Partition::Test, 0, rng)};
    }();
    return d;
}

void BM_EvalTree(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    std::vector<double> xs(n);
    for (auto& x : xs) x = uniform(rng, -1, 1);
    EvalContext ctx(n, 1, xs);
    std::vector<ExprTree> trees;
    for (int i = 0; i < 64; ++i) trees.push_back(full(6, 1, rng));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_tree(trees[i++ % trees.size()], ctx));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * 63));
}
BENCHMARK(BM_EvalTree)->Arg(21)->Arg(1000)->Arg(5000);

void BM_Gsx(benchmark::State& state)
{
    const auto& d = keijzer1();
    SemanticSpace space(d.train, d.test);
    Rng rng(2);
    auto a = make_initial_node(grow(6, 1, rng), space);
    auto b = make_initial_node(grow(6, 1, rng), space);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gsx(a, b, space, 6, rng));
    }
}
BENCHMARK(BM_Gsx);

void BM_Gsm(benchmark::State& state)
{
    const auto& d = keijzer1();
    SemanticSpace space(d.train, d.test);
    Rng rng(3);
    auto a = make_initial_node(grow(6, 1, rng), space);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gsm(a, 0.05, space, 6, true, rng));
    }
}
BENCHMARK(BM_Gsm);

void BM_GsgpGenerations(benchmark::State& state)
{
    const auto& d = keijzer1();
    GsgpConfig c;
    c.pop_size = static_cast<std::size_t>(state.range(0));
    c.generations = 20;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_gsgp(c, d.train, d.test, seed++));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * c.pop_size * 20));
}
BENCHMARK(BM_GsgpGenerations)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GpGenerations(benchmark::State& state)
{
    const auto& d = keijzer1();
    GpConfig c;
    c.pop_size = static_cast<std::size_t>(state.range(0));
    c.generations = 20;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_gp(c, d.train, d.test, seed++));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * c.pop_size * 20));
}
BENCHMARK(BM_GpGenerations)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
