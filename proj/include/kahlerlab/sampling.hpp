#pragma once

#include <cstdint>

#include "kahlerlab/higgs.hpp"

namespace kl {

// Independent sub-seed for stream `k` of a master seed (splitmix64 finalizer).
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k);

// Band-limited pointwise hermitian matrix field S = (X + X^dagger)/2.
MatrixField random_hermitian_field(ChartPtr chart, int rank, std::uint64_t seed, int band, double amplitude);
// h = exp(S) for a random hermitian S; always hermitian positive definite.
MetricField random_metric(ChartPtr chart, int rank, std::uint64_t seed, int band, double amplitude);
// Constant Higgs field Phi_a = P D_a P^{-1} with diagonal D_a, so the components commute.
EndForm random_commuting_higgs(ChartPtr chart, int rank, std::uint64_t seed, double scale = 1.0);
// Constant diagonal Higgs field with a unitary change of frame; normal components.
EndForm random_normal_higgs(ChartPtr chart, int rank, std::uint64_t seed, double scale = 1.0);
ScalarForm random_scalar_form(ChartPtr chart, int p, int q, std::uint64_t seed, int band, double amplitude = 1.0);
EndForm random_end_form(ChartPtr chart, int rank, int p, int q, std::uint64_t seed, int band, double amplitude = 1.0);

struct InstanceSampling {
  int band = 1;
  double metric_amplitude = 0.3;
  double higgs_scale = 0.5;
};
HiggsInstance random_instance(ChartPtr chart, int rank, std::uint64_t seed, InstanceSampling s = {});

// Constant random matrices with entries in [-1, 1) + i[-1, 1).
Mat random_matrix(int rows, int cols, std::uint64_t seed);
// Haar-like unitary from the QR factor of a random matrix.
Mat random_unitary(int rank, std::uint64_t seed);

}  // namespace kl
