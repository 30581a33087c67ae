#include <benchmark/benchmark.h>

#include "minorforge/bipartite.hpp"
#include "minorforge/builder.hpp"
#include "minorforge/kernel.hpp"
#include "minorforge/models.hpp"
#include "minorforge/oracle.hpp"

namespace mf = minorforge;

namespace {

void BM_ConfigurationSample(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    mf::RandomSource src(1);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        mf::RngStream rng = src.stream(stream++);
        benchmark::DoNotOptimize(mf::sample_g_star(n, 3, rng));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ConfigurationSample)->Arg(1 << 16)->Arg(1 << 20);

void BM_HamiltonPlusMatching(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    mf::RandomSource src(2);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        mf::RngStream rng = src.stream(stream++);
        benchmark::DoNotOptimize(mf::sample_hamilton_plus_matching(n, rng));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HamiltonPlusMatching)->Arg(1 << 16)->Arg(1 << 20);

// The matching contract point: 1e5 + 1e5 vertices, 1e6 edges.
void BM_HopcroftKarp(benchmark::State& state) {
    const std::size_t n = 100000, m = 1000000;
    mf::RngStream rng(3, 0);
    mf::BipartiteGraph b(n, n);
    for (std::size_t i = 0; i < m; ++i)
        b.adjacency[rng.below(n)].push_back(static_cast<std::uint32_t>(rng.below(n)));
    for (auto _ : state) benchmark::DoNotOptimize(mf::maximum_matching(b));
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_HopcroftKarp)->Unit(benchmark::kMillisecond);

void BM_MinorBuild(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    mf::RandomSource src(4);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        mf::RngStream rng = src.stream(stream++);
        mf::ModelInstance inst = mf::sample_hamilton_plus_matching(n, rng);
        mf::MultiGraph host = mf::instance_to_graph(inst);
        benchmark::DoNotOptimize(
            mf::run_build(inst, host, 0.3, mf::BuildMode::practical, stream));
    }
}
BENCHMARK(BM_MinorBuild)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_KernelExtract(benchmark::State& state) {
    mf::RandomSource src(5);
    std::uint64_t stream = 0;
    mf::PhaseParams params{200000, 3.0, true};
    for (auto _ : state) {
        mf::RngStream rng = src.stream(stream++);
        mf::MultiGraph g = mf::sample_gnm(200000, params.edge_count(), rng);
        benchmark::DoNotOptimize(mf::extract_kernel(g));
    }
}
BENCHMARK(BM_KernelExtract)->Unit(benchmark::kMillisecond);

void BM_VerifyCertificate(benchmark::State& state) {
    mf::RandomSource src(6);
    mf::RngStream rng = src.stream(0);
    mf::ModelInstance inst = mf::sample_hamilton_plus_matching(1 << 16, rng);
    mf::MultiGraph host = mf::instance_to_graph(inst);
    mf::BuildResult res = mf::run_build(inst, host, 0.3, mf::BuildMode::practical, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(mf::verify_certificate(*res.certificate, host));
}
BENCHMARK(BM_VerifyCertificate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
