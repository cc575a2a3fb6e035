#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace kl {

using cplx = std::complex<double>;

// Flat Kaehler torus C^n / lattice, discretized on a uniform grid.
// Real directions are ordered x^1, y^1, x^2, y^2, ...; both directions of complex
// axis alpha share the resolution N_alpha. Points are stored row-major with the last
// direction fastest.
class Chart {
 public:
  Chart(int n, std::vector<int> resolution, std::vector<double> periods);

  int n() const { return n_; }
  int real_dims() const { return 2 * n_; }
  const std::vector<int>& resolution() const { return resolution_; }
  const std::vector<double>& periods() const { return periods_; }
  int extent(int dir) const { return resolution_[dir / 2]; }
  double period(int dir) const { return periods_[dir]; }
  std::size_t points() const { return points_; }
  double cell_volume() const { return cell_volume_; }
  double volume() const { return volume_; }

  // Real coordinates of a grid point, one per direction.
  std::vector<double> coordinates(std::size_t point) const;
  bool operator==(const Chart& other) const;

 private:
  int n_;
  std::vector<int> resolution_;
  std::vector<double> periods_;
  std::size_t points_ = 1;
  double cell_volume_ = 1.0;
  double volume_ = 1.0;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(int n, std::vector<int> resolution, std::vector<double> periods);
// Uniform resolution and a single period shared by every real direction.
ChartPtr make_chart(int n, int resolution, double period = 1.0);

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where);

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(ChartPtr chart, cplx value = 0.0);
  ScalarField(ChartPtr chart, std::vector<cplx> values);
  static ScalarField from_function(ChartPtr chart,
                                   const std::function<cplx(const std::vector<double>&)>& f);

  const ChartPtr& chart() const { return chart_; }
  std::size_t size() const { return data_.size(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  const std::vector<cplx>& values() const { return data_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);
  ScalarField& operator*=(cplx s);

  ScalarField conj() const;
  ScalarField real() const;
  double max_abs() const;

 private:
  ChartPtr chart_;
  std::vector<cplx> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(cplx s, ScalarField a);
ScalarField operator*(ScalarField a, cplx s);

// Spectral derivatives. `dir` is a real direction 0..2n-1; `axis` is a complex axis 1..n.
ScalarField d_real(const ScalarField& f, int dir);
ScalarField d_holo(const ScalarField& f, int axis);
ScalarField d_anti(const ScalarField& f, int axis);

// Uniform-weight quadrature, summed in a fixed order.
cplx integrate(const ScalarField& f);

// Fourier coefficients on [-band, band]^{2n}, independent of the grid resolution.
struct FourierModes {
  int n = 0;
  int band = 0;
  std::vector<cplx> coefficients;  // row-major over the 2n mode indices
  cplx zero_mode() const;
  cplx at(const std::vector<int>& m) const;
};

FourierModes random_modes(int n, std::uint64_t seed, int band, double amplitude = 1.0);
ScalarField synthesize(ChartPtr chart, const FourierModes& modes);
ScalarField random_field(ChartPtr chart, std::uint64_t seed, int band, double amplitude = 1.0);
ScalarField random_real_field(ChartPtr chart, std::uint64_t seed, int band, double amplitude = 1.0);

// Deterministic uniform draw in [-1, 1) from a 64-bit engine word.
double unit_uniform(std::uint64_t word);

}  // namespace kl
