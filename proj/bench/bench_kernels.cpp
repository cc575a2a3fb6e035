// Serial reference kernels against their OpenMP counterparts on n = 2 grids.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kahlerlab/kernels.hpp"

namespace k = kl::kernels;
using kl::kernels::cplx;

namespace {

std::vector<cplx> sample_data(std::size_t count, unsigned seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(count);
  for (cplx& z : v) z = {g(eng), g(eng)};
  return v;
}

struct Inputs {
  std::size_t pts;
  int r;
  std::vector<cplx> a, b, out;
  Inputs(const benchmark::State& s)
      : pts(static_cast<std::size_t>(s.range(0))),
        r(static_cast<int>(s.range(1))),
        a(sample_data(pts * r * r, 1)),
        b(sample_data(pts * r * r, 2)),
        out(pts * r * r) {}
};

template <auto Fn>
void matmul(benchmark::State& s) {
  Inputs in(s);
  for (auto _ : s) {
    Fn(in.a.data(), in.b.data(), in.out.data(), in.pts, in.r);
    benchmark::DoNotOptimize(in.out.data());
  }
  s.SetItemsProcessed(s.iterations() * static_cast<long>(in.pts));
}

template <auto Fn>
void h_adjoint(benchmark::State& s) {
  Inputs in(s);
  const std::vector<cplx> k = sample_data(in.pts * in.r * in.r, 3);
  for (auto _ : s) {
    Fn(in.a.data(), in.b.data(), k.data(), in.out.data(), in.pts, in.r);
    benchmark::DoNotOptimize(in.out.data());
  }
  s.SetItemsProcessed(s.iterations() * static_cast<long>(in.pts));
}

template <auto Fn>
void trace_product(benchmark::State& s) {
  Inputs in(s);
  std::vector<cplx> tr(in.pts);
  for (auto _ : s) {
    Fn(in.a.data(), in.b.data(), tr.data(), in.pts, in.r);
    benchmark::DoNotOptimize(tr.data());
  }
  s.SetItemsProcessed(s.iterations() * static_cast<long>(in.pts));
}

template <auto Fn>
void sum(benchmark::State& s) {
  const auto v = sample_data(static_cast<std::size_t>(s.range(0)), 4);
  for (auto _ : s) benchmark::DoNotOptimize(Fn(v.data(), v.size()));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}

// 16^4 and 32^4 grid points, ranks 2 and 3.
void grid_args(benchmark::internal::Benchmark* b) {
  for (long pts : {1L << 16, 1L << 20})
    for (long r : {2L, 3L}) b->Args({pts, r});
}

}  // namespace

BENCHMARK(matmul<k::serial::matmul>)->Name("matmul/serial")->Apply(grid_args);
BENCHMARK(matmul<k::parallel::matmul>)->Name("matmul/parallel")->Apply(grid_args);
BENCHMARK(h_adjoint<k::serial::h_adjoint>)->Name("h_adjoint/serial")->Apply(grid_args);
BENCHMARK(h_adjoint<k::parallel::h_adjoint>)->Name("h_adjoint/parallel")->Apply(grid_args);
BENCHMARK(trace_product<k::serial::trace_product>)->Name("trace_product/serial")->Apply(grid_args);
BENCHMARK(trace_product<k::parallel::trace_product>)->Name("trace_product/parallel")->Apply(grid_args);
BENCHMARK(sum<k::serial::deterministic_sum>)->Name("sum/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(sum<k::parallel::deterministic_sum>)->Name("sum/parallel")->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
