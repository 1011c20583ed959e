// Serial reference vs OpenMP kernels on truncated composition operators.

#include <benchmark/benchmark.h>

#include <vector>

#include "zdlab/kernels.hpp"
#include "zdlab/lp_operators.hpp"

using namespace zdlab;

namespace {

TruncatedOperator block_operator(std::size_t n) {
  return assemble(OperatorSpec{WeightSeq::with_tail(InverseWeight{1}), SelfMap::with_tail(BlockTail{2, 0})}, n);
}

RationalMatrix dense_rational(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational(static_cast<long>((r * 7 + c * 3) % 11) - 5, c + 1);
  return m;
}

template <kernels::Policy P>
void BM_spmv(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = kernels::CsrMatrix::from_dense(block_operator(n).matrix());
  std::vector<double> x(n, 1.0), y(n);
  for (auto _ : state) {
    kernels::spmv(P, a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

template <kernels::Policy P>
void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = dense_rational(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul(P, a, a));
}

template <kernels::Policy P>
void BM_power_iteration(benchmark::State& state) {
  const auto t = block_operator(static_cast<std::size_t>(state.range(0)));
  NormOptions opts;
  opts.policy = P;
  opts.auto_policy = false;
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(t, opts).value());
}

}  // namespace

BENCHMARK(BM_spmv<kernels::Policy::Serial>)->Arg(256)->Arg(1024);
BENCHMARK(BM_spmv<kernels::Policy::Parallel>)->Arg(256)->Arg(1024);
BENCHMARK(BM_matmul<kernels::Policy::Serial>)->Arg(32)->Arg(64);
BENCHMARK(BM_matmul<kernels::Policy::Parallel>)->Arg(32)->Arg(64);
BENCHMARK(BM_power_iteration<kernels::Policy::Serial>)->Arg(256);
BENCHMARK(BM_power_iteration<kernels::Policy::Parallel>)->Arg(256);

BENCHMARK_MAIN();
