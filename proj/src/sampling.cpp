#include "kahlerlab/sampling.hpp"

#include <random>

#include "kahlerlab/error.hpp"

namespace kl {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Mat random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = unit_uniform(eng());
      const double im = unit_uniform(eng());
      m(i, j) = cplx(re, im);
    }
  return m;
}

Mat random_unitary(int rank, std::uint64_t seed) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(rank, rank, seed));
  return qr.householderQ() * Mat::Identity(rank, rank);
}

MatrixField random_hermitian_field(ChartPtr chart, int rank, std::uint64_t seed, int band, double amplitude) {
  MatrixField x(chart, rank);
  std::uint64_t k = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) x.set_entry(i, j, random_field(chart, sub_seed(seed, k++), band, amplitude));
  MatrixField s = x + x.adjoint();
  s *= 0.5;
  return s;
}

MetricField random_metric(ChartPtr chart, int rank, std::uint64_t seed, int band, double amplitude) {
  MatrixField h = hermitian_exp(random_hermitian_field(std::move(chart), rank, seed, band, amplitude));
  // Symmetrize to remove rounding drift in the eigen-reconstruction.
  MatrixField sym = h + h.adjoint();
  sym *= 0.5;
  return MetricField(std::move(sym));
}

namespace {

EndForm constant_higgs(ChartPtr chart, int rank, const Mat& p, const Mat& pinv, std::uint64_t seed, double scale) {
  const int n = chart->n();
  EndForm phi(chart, rank, 1, 0);
  for (int a = 1; a <= n; ++a) {
    const Mat d = random_matrix(rank, 1, sub_seed(seed, 100 + a));
    const Mat m = scale * p * d.col(0).asDiagonal() * pinv;
    phi.add(make_key(n, {a}, {}), MatrixField::constant(chart, m));
  }
  return phi;
}

}  // namespace

EndForm random_commuting_higgs(ChartPtr chart, int rank, std::uint64_t seed, double scale) {
  const Mat p = Mat::Identity(rank, rank) + 0.4 * random_matrix(rank, rank, sub_seed(seed, 1));
  return constant_higgs(std::move(chart), rank, p, p.inverse(), seed, scale);
}

EndForm random_normal_higgs(ChartPtr chart, int rank, std::uint64_t seed, double scale) {
  const Mat u = random_unitary(rank, sub_seed(seed, 2));
  return constant_higgs(std::move(chart), rank, u, u.adjoint(), seed, scale);
}

ScalarForm random_scalar_form(ChartPtr chart, int p, int q, std::uint64_t seed, int band, double amplitude) {
  ScalarForm f(chart, p, q);
  std::uint64_t k = 0;
  for (const MonomialKey& key : basis_keys(chart->n(), p, q))
    f.add(key, random_field(chart, sub_seed(seed, k++), band, amplitude));
  return f;
}

EndForm random_end_form(ChartPtr chart, int rank, int p, int q, std::uint64_t seed, int band, double amplitude) {
  EndForm f(chart, rank, p, q);
  std::uint64_t k = 0;
  for (const MonomialKey& key : basis_keys(chart->n(), p, q)) {
    MatrixField m(chart, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) m.set_entry(i, j, random_field(chart, sub_seed(seed, k++), band, amplitude));
    f.add(key, m);
  }
  return f;
}

HiggsInstance random_instance(ChartPtr chart, int rank, std::uint64_t seed, InstanceSampling s) {
  if (s.band < 0 || s.metric_amplitude < 0.0) throw InvalidArgument("random_instance: invalid sampling parameters");
  MetricField h = random_metric(chart, rank, sub_seed(seed, 11), s.band, s.metric_amplitude);
  EndForm phi = random_commuting_higgs(chart, rank, sub_seed(seed, 12), s.higgs_scale);
  return HiggsInstance(std::move(h), std::move(phi));
}

}  // namespace kl
