#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kahlerlab/higgs.hpp"

namespace kl {

// su(2) gauge and Higgs data on a periodic 2D lattice, modelled as a one-dimensional complex
// chart with z = x^1 + i x^2.
class SU2Config {
 public:
  SU2Config(MatrixField a1, MatrixField a2, MatrixField phi1, MatrixField phi2);
  static SU2Config zero(ChartPtr chart);

  const ChartPtr& chart() const { return a1_.chart(); }
  const MatrixField& a1() const { return a1_; }
  const MatrixField& a2() const { return a2_; }
  const MatrixField& phi1() const { return phi1_; }
  const MatrixField& phi2() const { return phi2_; }
  // phi = phi1 - i phi2
  MatrixField phi() const;
  // A_zbar = A1 + i A2
  MatrixField a_zbar() const;

 private:
  MatrixField a1_, a2_, phi1_, phi2_;
};

// Largest deviation from traceless anti-hermitian over the grid.
double su2_defect(const MatrixField& m);
// Projection onto traceless anti-hermitian matrices.
MatrixField su2_project(const MatrixField& m);

// F_{ij} = d_i A_j - d_j A_i + [A_i, A_j], indices 1..4 stored 0-based; A_3 = phi1, A_4 = phi2
// and d_3 = d_4 = 0.
using FieldStrength4 = std::array<std::array<MatrixField, 4>, 4>;
FieldStrength4 field_strength_4d(const SU2Config& cfg);
MatrixField field_strength(const SU2Config& cfg);  // F_12

// D_i X = d_i X + [A_i, X] for i = 1, 2.
MatrixField covariant(const SU2Config& cfg, int i, const MatrixField& x);

// L2 Frobenius norm over the lattice area.
double l2_norm(const MatrixField& m);

// (||F12 - F34||, ||F13 - F42||, ||F14 - F23||) from the four-dimensional field strength.
std::array<double, 3> sdym_residual(const SU2Config& cfg);
// ([D1,D2] - [phi1,phi2], [D1,phi1] - [phi2,D2], [D1,phi2] - [D2,phi1]) norms.
std::array<double, 3> reduced_sdym_residual(const SU2Config& cfg);

enum class HitchinForm { Real, Complex, Forms, KW };
const char* to_string(HitchinForm f);
// real: (||F12 - (i/2)[phi,phi*]||, ||(D1 + i D2) phi||)
// complex: (||F_zzbar + [phi,phi*]/4||, ||D_zbar phi||) with F_zzbar = (i/2) F12
// forms: (||F + [Phi_c, Phi_c*]||, ||d''_A Phi_c||) with Phi_c = phi dz/2 in the unit coframe of the chart
// kw: (||F - Phi^Phi||, ||D Phi||, ||D* Phi||) with Phi = phi1 dx^1 + phi2 dx^2
std::vector<double> hitchin_residual(const SU2Config& cfg, HitchinForm form);

struct DetHolomorphy {
  double dzbar_phi = 0.0;      // ||D_zbar phi||
  double dzbar_det = 0.0;      // ||d_zbar det phi||, d_zbar = d_1 + i d_2
  double constant = 0.0;       // C with ||d_zbar det phi|| <= C ||D_zbar phi|| + spectral error
};
DetHolomorphy det_holomorphy(const SU2Config& cfg);

// n = 1, rank 2 Higgs instance with h = I, Phi = phi dz/2, connection A^{1,0} = (A1 - i A2)/2,
// A^{0,1} = (A1 + i A2)/2 and curvature F_{1 1bar} = (i/2) F12.
HiggsInstance to_higgs_instance(const SU2Config& cfg, HiggsTolerances tol = {});

SU2Config random_su2_config(ChartPtr chart, std::uint64_t seed, int band, double amplitude = 1.0);
// Constant commuting Higgs data with vanishing gauge field; an exact solution.
SU2Config constant_commuting_config(ChartPtr chart, std::uint64_t seed);
// A -> u A u^dagger, phi_i -> u phi_i u^dagger for a constant unitary u.
SU2Config gauge_transform(const SU2Config& cfg, const Mat& u);
// Complex gauge transform g = exp(X) of (A = 0, phi0 constant traceless): phi = g phi0 g^{-1},
// A_zbar = -(d_zbar g) g^{-1}. Satisfies D_zbar phi = 0 up to spectral error.
SU2Config complex_gauge_solution(ChartPtr chart, std::uint64_t seed, int band, double amplitude);
Mat random_su2_matrix(std::uint64_t seed);

}  // namespace kl
