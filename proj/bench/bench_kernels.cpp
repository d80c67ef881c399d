// Serial reference vs OpenMP path for the three data-parallel kernels.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "rotinv/invariants.hpp"
#include "rotinv/rn.hpp"
#include "rotinv/state.hpp"

using namespace rotinv;

namespace {

CpMap bench_map() {
  const auto ctx = AlgebraContext::golden();
  WeylElement R;
  // Fixed dense Kraus operator on [-1, 1]^2.
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) R.add_raw({i, j}, cplx(1.0 + 0.1 * i, 0.2 * j) / 3.0);
  R.prune();
  return CpMap({R}, ctx);
}

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& st) {
  st.SetLabel(st.range(0) == 0 ? "serial" : "openmp x" + std::to_string(omp_get_max_threads()));
}

void BM_RnOracle(benchmark::State& st) {
  const auto T = bench_map();
  const int k = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(rn_oracle(T, k, -1, exec_of(st)));
  label(st);
}

void BM_DMatrix(benchmark::State& st) {
  const auto T = bench_map();
  const int cutoff = static_cast<int>(st.range(1));
  const auto D = rn_oracle(T, 2 * cutoff);
  const auto basis = truncated_basis(cutoff).basis;
  for (auto _ : st) benchmark::DoNotOptimize(d_matrix_kernel(D, basis, exec_of(st)));
  label(st);
}

void BM_Gram(benchmark::State& st) {
  const auto T = bench_map();
  const int cutoff = static_cast<int>(st.range(1));
  const auto basis = truncated_basis(cutoff).basis;
  for (auto _ : st) {
    // Fresh memo table each time so the state evaluations are measured too.
    const StateFunctional psi(T);
    benchmark::DoNotOptimize(gram_kernel(psi, basis, exec_of(st)));
  }
  label(st);
}

}  // namespace

BENCHMARK(BM_RnOracle)->ArgsProduct({{0, 1}, {6, 10}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DMatrix)->ArgsProduct({{0, 1}, {3, 5}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gram)->ArgsProduct({{0, 1}, {3, 5}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
