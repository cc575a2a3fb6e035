#include "kahlerlab/lattice.hpp"

#include <cmath>
#include <random>

#include "kahlerlab/error.hpp"
#include "kahlerlab/kernels.hpp"
#include "kahlerlab/spectral.hpp"

namespace kl {

Chart::Chart(int n, std::vector<int> resolution, std::vector<double> periods)
    : n_(n), resolution_(std::move(resolution)), periods_(std::move(periods)) {
  if (n < 1) throw InvalidArgument("Chart: complex dimension must be >= 1");
  if (static_cast<int>(resolution_.size()) != n)
    throw InvalidArgument("Chart: need one resolution per complex axis");
  if (static_cast<int>(periods_.size()) != 2 * n)
    throw InvalidArgument("Chart: need one period per real direction");
  for (int N : resolution_)
    if (N < 4 || N % 2 != 0)
      throw InvalidArgument("Chart: resolution " + std::to_string(N) + " must be even and >= 4");
  for (double L : periods_)
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("Chart: periods must be positive");
  for (int d = 0; d < 2 * n; ++d) {
    points_ *= static_cast<std::size_t>(extent(d));
    cell_volume_ *= periods_[d] / extent(d);
    volume_ *= periods_[d];
  }
}

std::vector<double> Chart::coordinates(std::size_t point) const {
  std::vector<double> x(2 * n_);
  for (int d = 2 * n_ - 1; d >= 0; --d) {
    const std::size_t N = extent(d);
    x[d] = static_cast<double>(point % N) * periods_[d] / static_cast<double>(N);
    point /= N;
  }
  return x;
}

bool Chart::operator==(const Chart& o) const {
  return n_ == o.n_ && resolution_ == o.resolution_ && periods_ == o.periods_;
}

ChartPtr make_chart(int n, std::vector<int> resolution, std::vector<double> periods) {
  return std::make_shared<const Chart>(n, std::move(resolution), std::move(periods));
}

ChartPtr make_chart(int n, int resolution, double period) {
  return make_chart(n, std::vector<int>(std::max(n, 0), resolution),
                    std::vector<double>(2 * std::max(n, 0), period));
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where) {
  if (!a || !b) throw InvalidArgument(std::string(where) + ": missing chart");
  if (a != b && !(*a == *b)) throw InvalidArgument(std::string(where) + ": chart mismatch");
}

ScalarField::ScalarField(ChartPtr chart, cplx value)
    : chart_(std::move(chart)), data_(chart_->points(), value) {}

ScalarField::ScalarField(ChartPtr chart, std::vector<cplx> values)
    : chart_(std::move(chart)), data_(std::move(values)) {
  if (data_.size() != chart_->points()) throw InvalidArgument("ScalarField: grid shape mismatch");
}

ScalarField ScalarField::from_function(ChartPtr chart,
                                       const std::function<cplx(const std::vector<double>&)>& f) {
  ScalarField out(chart);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(chart->coordinates(i));
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_chart(chart_, o.chart_, "ScalarField +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_chart(chart_, o.chart_, "ScalarField -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  require_same_chart(chart_, o.chart_, "ScalarField *=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] *= o.data_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ScalarField ScalarField::conj() const {
  ScalarField out(chart_);
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = std::conj(data_[i]);
  return out;
}

ScalarField ScalarField::real() const {
  ScalarField out(chart_);
  for (std::size_t i = 0; i < data_.size(); ++i) out[i] = data_[i].real();
  return out;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(cplx s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, cplx s) { return a *= s; }

namespace {

ScalarField derive(const ScalarField& f, spectral::Kind kind, int index) {
  const Chart& c = *f.chart();
  if (kind == spectral::Kind::Real) {
    if (index < 0 || index >= c.real_dims()) throw InvalidArgument("d_real: direction out of range");
  } else if (index < 1 || index > c.n()) {
    throw InvalidArgument("complex derivative: axis out of range");
  }
  ScalarField out(f.chart());
  spectral::apply(c, f.data(), 1, {{kind, index}}, {out.data()});
  return out;
}

}  // namespace

ScalarField d_real(const ScalarField& f, int dir) { return derive(f, spectral::Kind::Real, dir); }
ScalarField d_holo(const ScalarField& f, int axis) { return derive(f, spectral::Kind::Holo, axis); }
ScalarField d_anti(const ScalarField& f, int axis) { return derive(f, spectral::Kind::Anti, axis); }

cplx integrate(const ScalarField& f) {
  return kernels::deterministic_sum(f.data(), f.size()) * f.chart()->cell_volume();
}

double unit_uniform(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-52 - 1.0;
}

cplx FourierModes::zero_mode() const { return coefficients[coefficients.size() / 2]; }

cplx FourierModes::at(const std::vector<int>& m) const {
  const int side = 2 * band + 1;
  std::size_t idx = 0;
  for (int d = 0; d < 2 * n; ++d) {
    if (std::abs(m[d]) > band) return 0.0;
    idx = idx * side + static_cast<std::size_t>(m[d] + band);
  }
  return coefficients[idx];
}

FourierModes random_modes(int n, std::uint64_t seed, int band, double amplitude) {
  if (band < 0) throw InvalidArgument("random_modes: negative band");
  FourierModes modes;
  modes.n = n;
  modes.band = band;
  const int side = 2 * band + 1;
  std::size_t count = 1;
  for (int d = 0; d < 2 * n; ++d) count *= side;
  modes.coefficients.resize(count);
  std::mt19937_64 rng(seed);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    double k2 = 0.0;
    for (int d = 0; d < 2 * n; ++d) {
      const int m = static_cast<int>(rest % side) - band;
      rest /= side;
      k2 += double(m) * m;
    }
    const double re = unit_uniform(rng());
    const double im = unit_uniform(rng());
    modes.coefficients[idx] = amplitude * cplx(re, im) / (1.0 + k2);
  }
  return modes;
}

ScalarField synthesize(ChartPtr chart, const FourierModes& modes) {
  const Chart& c = *chart;
  if (modes.n != c.n()) throw InvalidArgument("synthesize: dimension mismatch");
  for (int N : c.resolution())
    if (modes.band >= N / 2)
      throw InvalidArgument("synthesize: band " + std::to_string(modes.band) +
                            " must be below half the resolution");
  ScalarField out(chart);
  const int side = 2 * modes.band + 1;
  const int dims = c.real_dims();
  for (std::size_t idx = 0; idx < modes.coefficients.size(); ++idx) {
    std::size_t rest = idx;
    std::vector<int> m(dims);
    for (int d = dims - 1; d >= 0; --d) {
      m[d] = static_cast<int>(rest % side) - modes.band;
      rest /= side;
    }
    std::size_t point = 0;
    for (int d = 0; d < dims; ++d) {
      const int N = c.extent(d);
      point = point * N + static_cast<std::size_t>((m[d] + N) % N);
    }
    out[point] = modes.coefficients[idx];
  }
  spectral::inverse_unnormalized(c, out.data(), 1);
  return out;
}

ScalarField random_field(ChartPtr chart, std::uint64_t seed, int band, double amplitude) {
  for (int N : chart->resolution())
    if (band >= N / 2) throw InvalidArgument("random_field: band too large for resolution");
  return synthesize(chart, random_modes(chart->n(), seed, band, amplitude));
}

ScalarField random_real_field(ChartPtr chart, std::uint64_t seed, int band, double amplitude) {
  return random_field(chart, seed, band, amplitude).real();
}

}  // namespace kl
