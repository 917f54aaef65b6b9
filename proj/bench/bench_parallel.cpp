// Serial reference kernels against the OpenMP versions.
#include <random>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "bolab/grid.hpp"
#include "bolab/kernels.hpp"
#include "bolab/pseudoproduct.hpp"
#include "bolab/random_fields.hpp"
#include "bolab/reference.hpp"
#include "bolab/spectral.hpp"

using namespace bolab;

namespace {

pseudo::BilinearSymbol smooth_symbol() {
    return {[](double xi, double eta) { return cplx(1.0 / (1.0 + xi * xi + eta * eta), eta); }, std::nullopt,
            std::nullopt, "smooth"};
}

pseudo::CubicSymbol cubic_symbol() {
    return {[](double xi, double eta, double sigma) { return cplx(1.0 / (1.0 + xi * xi + eta * sigma * sigma)); },
            std::nullopt, "cubic"};
}

struct Inputs {
    Spectrum f, g, h;
};

Inputs inputs(std::size_t n) {
    const Grid grid(n, 64.0);
    std::mt19937_64 rng(7);
    return {analyze(random_complex_field(grid, rng)), analyze(random_complex_field(grid, rng)),
            analyze(random_complex_field(grid, rng))};
}

kernels::KernelSpec kernel_spec() {
    kernels::KernelSpec s;
    s.variant = kernels::Variant::low_left;
    s.a = 1;
    s.t = 64.0;
    return s;
}

void BM_bilinear_serial(benchmark::State& st) {
    const auto in = inputs(st.range(0));
    const auto b = smooth_symbol();
    for (auto _ : st) benchmark::DoNotOptimize(reference::bilinear_apply(b, in.f, in.g));
}

void BM_bilinear_parallel(benchmark::State& st) {
    const auto in = inputs(st.range(0));
    const auto b = smooth_symbol();
    for (auto _ : st) benchmark::DoNotOptimize(pseudo::bilinear_apply(b, in.f, in.g));
    st.counters["threads"] = omp_get_max_threads();
}

void BM_cubic_serial(benchmark::State& st) {
    const auto in = inputs(st.range(0));
    const auto c = cubic_symbol();
    for (auto _ : st) benchmark::DoNotOptimize(reference::cubic_apply(c, in.f, in.g, in.h));
}

void BM_cubic_parallel(benchmark::State& st) {
    const auto in = inputs(st.range(0));
    const auto c = cubic_symbol();
    for (auto _ : st) benchmark::DoNotOptimize(pseudo::cubic_apply(c, in.f, in.g, in.h));
    st.counters["threads"] = omp_get_max_threads();
}

void BM_kernel_sup_serial(benchmark::State& st) {
    const auto s = kernel_spec();
    const kernels::Sampling sampling{static_cast<int>(st.range(0)), 0};
    for (auto _ : st) benchmark::DoNotOptimize(reference::kernel_sup(s, sampling));
}

void BM_kernel_sup_parallel(benchmark::State& st) {
    const auto s = kernel_spec();
    const kernels::Sampling sampling{static_cast<int>(st.range(0)), 0};
    for (auto _ : st) benchmark::DoNotOptimize(kernels::kernel_sup(s, sampling));
    st.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_bilinear_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bilinear_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cubic_serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cubic_parallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_sup_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_sup_parallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
