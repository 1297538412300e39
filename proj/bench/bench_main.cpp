// Parallel kernels against their serial references, plus corpus generation.
//   fbga_bench --benchmark_filter=Dim

#include "fbga/fixtures.hpp"
#include "fbga/quiver.hpp"
#include "fbga/walks.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace fbga;

namespace {

// Brauer graph on a cycle of n vertices with a chord fan at vertex 0: many edges, all pairs nontrivial.
BiserialFBG wheel(int n) {
    std::vector<VertexSpec> vs;
    std::vector<std::vector<std::string>> pairs;
    std::vector<std::string> hub;
    for (int i = 0; i < n; ++i) {
        std::string e = "r" + std::to_string(i), s = "s" + std::to_string(i);
        hub.push_back(s);
        vs.push_back({"v" + std::to_string(i), 3, {e + "a", "r" + std::to_string((i + n - 1) % n) + "b", s + "'"}});
        pairs.push_back({e + "a", e + "b"});
        pairs.push_back({s, s + "'"});
    }
    vs.push_back({"hub", 2 * n, hub});
    return check_si(load_deg(make_raw(vs, pairs)));
}

void BM_DimReport(benchmark::State& st) {
    BiserialFBG f = wheel(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(dim_report(f));
    st.counters["edges"] = f.graph().num_edges();
    st.counters["threads"] = omp_get_max_threads();
}
void BM_DimReportSerial(benchmark::State& st) {
    BiserialFBG f = wheel(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(dim_report_serial(f));
    st.counters["edges"] = f.graph().num_edges();
}
BENCHMARK(BM_DimReport)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DimReportSerial)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

std::vector<SignedWalk> walks_of(int len) {
    static const BiserialFBG f = fixture_fbg("kauer-gamma1");
    return enumerate_signed_walks(walk_space(f), len);
}

void BM_CompatMatrix(benchmark::State& st) {
    WalkSpace s = walk_space(fixture_fbg("kauer-gamma1"));
    auto ws = walks_of(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(compat_matrix(s, ws));
    st.counters["walks"] = static_cast<double>(ws.size());
}
void BM_CompatMatrixSerial(benchmark::State& st) {
    WalkSpace s = walk_space(fixture_fbg("kauer-gamma1"));
    auto ws = walks_of(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(compat_matrix_serial(s, ws));
    st.counters["walks"] = static_cast<double>(ws.size());
}
BENCHMARK(BM_CompatMatrix)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompatMatrixSerial)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_RandomCorpus(benchmark::State& st) {
    const int count = static_cast<int>(st.range(0));
    uint64_t seed = 1;
    for (auto _ : st) benchmark::DoNotOptimize(random_corpus(seed++, count, 8));
    st.SetItemsProcessed(st.iterations() * count);
}
BENCHMARK(BM_RandomCorpus)->Arg(60)->Arg(240)->Unit(benchmark::kMillisecond);

// Corpus sweep: walks and counts on every graph, the shape the acceptance checks take.
void BM_CorpusSweep(benchmark::State& st) {
    auto corpus = random_corpus(20240611, static_cast<int>(st.range(0)), 5);
    for (auto _ : st) {
        long long total = 0;
        for (const auto& f : corpus) {
            WalkUniverse u = build_universe(walk_space(f), std::min(2 * f.graph().num_edges(), 6));
            total += count_sets(u, {}, max_count_default()).complete;
        }
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_CorpusSweep)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
