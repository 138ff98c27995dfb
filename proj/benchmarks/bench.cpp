#include "cmzv/btable.hpp"
#include "cmzv/ihara.hpp"
#include "cmzv/mhs.hpp"
#include "cmzv/pmzv.hpp"
#include "cmzv/stuffle.hpp"

#include <benchmark/benchmark.h>

using namespace cmzv;

static void BM_FrakHDirect(benchmark::State& state)
{
    HarmonicWord w = HarmonicWord::plain({2, 1, 3});
    long n = state.range(0);
    for (auto _ : state) {
        // bypass the memo by varying the index
        benchmark::DoNotOptimize(frak_h(n + (state.iterations() % 2), w));
    }
}
BENCHMARK(BM_FrakHDirect)->Arg(50)->Arg(200);

static void BM_FrakHTables(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(frak_h_tables_upto(state.range(0), 1, 5, 3));
}
BENCHMARK(BM_FrakHTables)->Arg(20)->Arg(40);

static void BM_QuasiShuffle(benchmark::State& state)
{
    HarmonicWord u = HarmonicWord::plain({1, 2, 1});
    HarmonicWord v = HarmonicWord::plain({2, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(quasi_shuffle(u, v));
}
BENCHMARK(BM_QuasiShuffle);

static void BM_ShuffleWords(benchmark::State& state)
{
    WordKey u = parse_word_key("0 1 0 1", 1);
    WordKey v = parse_word_key("0 0 1", 1);
    for (auto _ : state) {
        // the cache makes steady-state lookups the measured path
        benchmark::DoNotOptimize(shuffle_words(u, v));
    }
}
BENCHMARK(BM_ShuffleWords);

static void BM_BTableDecompose(benchmark::State& state)
{
    for (auto _ : state) {
        BTable fresh(64);
        benchmark::DoNotOptimize(fresh.decompose({4, -2, 3}));
    }
}
BENCHMARK(BM_BTableDecompose);

static void BM_ActRtDepth2(benchmark::State& state)
{
    PrecCtx ctx{5, 1, 6};
    GSystem g = g_har(ctx);
    HarmonicSeq h = HarmonicSeq::har_seq();
    HarmonicWord w = HarmonicWord::plain({2, 3});
    long n = 7;
    for (auto _ : state)
        benchmark::DoNotOptimize(act_rt(ctx, g, h, n, w));
}
BENCHMARK(BM_ActRtDepth2);

static void BM_SigmaRt(benchmark::State& state)
{
    PrecCtx ctx{5, 1, 5};
    GSystem g = g_har(ctx);
    for (auto _ : state)
        benchmark::DoNotOptimize(sigma_rt(ctx, g, 10, 4));
}
BENCHMARK(BM_SigmaRt);

static void BM_LiDaggerSolve(benchmark::State& state)
{
    FrobeniusConfig cfg;
    cfg.p = 5;
    cfg.prec = 4;
    cfg.max_weight = 3;
    cfg.z_degree = static_cast<int>(state.range(0));
    NCSeries<PAdicNum> phi = compute_phi(cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_li_dagger(cfg, phi));
}
BENCHMARK(BM_LiDaggerSolve)->Arg(10)->Arg(40);

BENCHMARK_MAIN();
