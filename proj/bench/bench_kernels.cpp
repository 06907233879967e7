// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <map>
#include <numeric>
#include <vector>

#include "isored/kernels.hpp"
#include "isored/randgen.hpp"
#include "isored/reduction.hpp"

namespace {

using namespace isored;

const StochasticMatrix& sparse_chain(std::size_t n) {
  static std::map<std::size_t, StochasticMatrix> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, gen_sparse_stochastic({n, 4, BurrConfig{0.2}, 7}).with_auto_storage()).first;
  return it->second;
}

DenseMatrix dense_chain(std::size_t n) { return gen_dense_stochastic(n, 11).to_dense(); }

template <bool Parallel>
void BM_DenseMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = dense_chain(n);
  const Vector x = Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  Vector y(x.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::matvec(a, x, y);
    else
      kernels::serial::matvec(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_SparseMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SparseMatrix& a = sparse_chain(n).sparse();
  const Vector x = Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  Vector y(x.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::matvec(a, x, y);
    else
      kernels::serial::matvec(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_Tau(benchmark::State& state) {
  const DenseMatrix a = dense_chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const double t = Parallel ? kernels::parallel::max_half_column_distance(a)
                              : kernels::serial::max_half_column_distance(a);
    benchmark::DoNotOptimize(t);
  }
}

template <bool Parallel>
void BM_Eliminate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = dense_chain(n);
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  for (auto _ : state) {
    state.PauseTiming();
    DenseMatrix m = a;
    state.ResumeTiming();
    if constexpr (Parallel)
      kernels::parallel::eliminate(m, alive, n / 2, 1.0);
    else
      kernels::serial::eliminate(m, alive, n / 2, 1.0);
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_ReduceBlock(benchmark::State& state) {
  const StochasticMatrix& a = sparse_chain(1000);
  const IndexSet kept = IndexSet::leading(static_cast<std::size_t>(state.range(0)), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_block(a, kept).condition_estimate);
}

}  // namespace

BENCHMARK(BM_DenseMatvec<false>)->Arg(500)->Arg(2000);
BENCHMARK(BM_DenseMatvec<true>)->Arg(500)->Arg(2000);
BENCHMARK(BM_SparseMatvec<false>)->Arg(1000)->Arg(100000);
BENCHMARK(BM_SparseMatvec<true>)->Arg(1000)->Arg(100000);
BENCHMARK(BM_Tau<false>)->Arg(200)->Arg(600);
BENCHMARK(BM_Tau<true>)->Arg(200)->Arg(600);
BENCHMARK(BM_Eliminate<false>)->Arg(500)->Arg(1500);
BENCHMARK(BM_Eliminate<true>)->Arg(500)->Arg(1500);
BENCHMARK(BM_ReduceBlock)->Arg(90)->Arg(500);

BENCHMARK_MAIN();
