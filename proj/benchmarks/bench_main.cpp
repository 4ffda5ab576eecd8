#include <benchmark/benchmark.h>

#include "hqft/suites.hpp"

using namespace hqft;
using namespace hqft::maxwell;

static void BM_SectorCohomology(benchmark::State& st) {
    Config cfg = default_config();
    cfg.knots = uniform_knots(-1, 1, static_cast<int>(st.range(0)));
    ExactModel m(cfg, cfg.knots);
    for (auto _ : st) benchmark::DoNotOptimize(cohomology(m.sector_complex({1, 1})));
}
BENCHMARK(BM_SectorCohomology)->Arg(7)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_SmallModel(benchmark::State& st) {
    Config cfg = default_config();
    for (auto _ : st) benchmark::DoNotOptimize(build_small_model(cfg));
}
BENCHMARK(BM_SmallModel)->Unit(benchmark::kMillisecond);

static void BM_PoissonTableSector(benchmark::State& st) {
    Config cfg = default_config();
    ExactModel m(cfg, cfg.knots);
    Sector s{static_cast<int>(st.range(0)), 1};
    std::vector<FormData> x, y;
    for (std::size_t j = 0; j < m.dim(0); ++j) x.push_back(form_data(to_numeric(m.basis_form(s, 0, j))));
    for (auto _ : st) {
        double acc = 0;
        for (const auto& a : x)
            for (const auto& b : x) acc += poisson(a, b);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_PoissonTableSector)->Arg(1)->Arg(8);

static void BM_ModeDecomposition(benchmark::State& st) {
    Diamond d{"D", 0, 0, 0.1};
    auto g = diamond_generator(d);
    for (auto _ : st) benchmark::DoNotOptimize(mode_decomposition(g, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_ModeDecomposition)->Arg(64)->Arg(128);

static void BM_NormalForm(benchmark::State& st) {
    auto sm = build_small_model(default_config());
    const auto& A = *sm.A;
    Word w;
    for (int i = 0; i < st.range(0); ++i) w.push_back(static_cast<int>((A.num_generators() - 1 - i % A.num_generators())));
    for (auto _ : st) benchmark::DoNotOptimize(normal_form_rewrite(A, w, RewriteStrategy::Leftmost));
}
BENCHMARK(BM_NormalForm)->Arg(4)->Arg(6);

static void BM_GNSRadical(benchmark::State& st) {
    auto sm = build_small_model(default_config());
    auto w = exact_state(*sm.A, sm.two_point);
    int c = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(gns_radical(*sm.A, w, c, c));
}
BENCHMARK(BM_GNSRadical)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
