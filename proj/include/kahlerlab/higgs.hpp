#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kahlerlab/endforms.hpp"

namespace kl {

struct HiggsTolerances {
  double holomorphy = 1e-8;  // global norm of d''Phi (or D''Phi with a supplied connection)
  double wedge = 1e-10;      // global norm of the [Phi_a, Phi_b]
};

struct HiggsCheck {
  double holomorphy_norm = 0.0;
  double wedge_norm = 0.0;
  std::vector<std::pair<std::string, double>> commutator_norms;  // per pair a < b
  HiggsTolerances tolerances;
  bool holomorphic() const { return holomorphy_norm <= tolerances.holomorphy; }
  bool commuting() const { return wedge_norm <= tolerances.wedge; }
  bool pass() const { return holomorphic() && commuting(); }
};

// Global norms of d''Phi and of every [Phi_a, Phi_b]; `a01` (if given) turns d'' into D''.
HiggsCheck check_higgs(const EndForm& phi, HiggsTolerances tol = {}, const EndForm* a01 = nullptr);

struct ChernData {
  EndForm connection;  // A_a = K^{-1} d_a K, a (1,0)-form
  EndForm curvature;   // (1,1) part of d A + A ^ A, i.e. d''A
};
ChernData chern_connection_curvature(const MetricField& h);

// A connection supplied directly as (1,0) and (0,1) parts, e.g. from dimensional reduction.
struct SyntheticConnection {
  EndForm a10;
  EndForm a01;
};

// Higgs bundle data (h, Phi). The curvature is derived from h unless a synthetic
// curvature or connection is supplied.
class HiggsInstance {
 public:
  HiggsInstance(MetricField h, EndForm phi, std::optional<EndForm> synthetic_curvature = std::nullopt,
                std::optional<SyntheticConnection> synthetic_connection = std::nullopt,
                HiggsTolerances tol = {});

  const ChartPtr& chart() const { return h_.chart(); }
  int n() const { return chart()->n(); }
  int rank() const { return h_.rank(); }
  const MetricField& metric() const { return h_; }
  const EndForm& higgs() const { return phi_; }
  const EndForm& connection() const { return a10_; }
  const EndForm& connection01() const { return a01_; }
  const EndForm& curvature() const { return f_; }
  const EndForm& higgs_bar() const { return phibar_; }
  bool synthetic_curvature() const { return synthetic_curvature_; }
  bool synthetic_connection() const { return synthetic_connection_; }
  const HiggsCheck& check() const { return check_; }
  const HiggsTolerances& tolerances() const { return tol_; }

  // Same Higgs field and tolerances, new metric; the metric-independent checks are reused.
  HiggsInstance with_metric(MetricField h) const;

 private:
  void derive_geometry();

  MetricField h_;
  EndForm phi_;
  EndForm a10_, a01_, f_, phibar_;
  bool synthetic_curvature_ = false;
  bool synthetic_connection_ = false;
  HiggsTolerances tol_;
  HiggsCheck check_;
  std::optional<EndForm> given_curvature_;
};

// Graded pieces of the Hitchin-Simpson curvature.
struct HSCurvature {
  EndForm d_prime_phi;  // (2,0): D'Phi = d'Phi + [A, Phi]
  EndForm f11;          // (1,1): F + [Phi, Phibar_h]
  EndForm d2_phibar;    // (0,2): d''Phibar_h (D'' with a supplied connection)
  EndForm commutator;   // (1,1): [Phi, Phibar_h]
};
HSCurvature hs_curvature(const HiggsInstance& inst);

// K = sum_a F11_{a abar}; also computed through i n F11 ^ omega^{n-1} = K omega^n.
struct MeanCurvature {
  MatrixField contraction;
  MatrixField wedge_route;
  double route_defect = 0.0;  // max pointwise difference relative to max |K|
};
MeanCurvature mean_curvature_routes(const HiggsInstance& inst);
MatrixField mean_curvature(const HiggsInstance& inst, double rel_tol = 1e-10);
MatrixField mean_curvature(const HSCurvature& hs, int rank, double rel_tol = 1e-10);
// The hermitian form h(K s, s'), stored like a MetricField matrix (pointwise product h K).
MatrixField mean_curvature_hermitian_form(const HiggsInstance& inst);

struct ChernForms {
  ScalarForm c1;                  // (i / 2 pi) tr F
  std::optional<ScalarForm> c2;   // (1 / 8 pi^2)(tr(F^F) - trF ^ trF), n >= 2
  double degree = 0.0;            // integral of c1 ^ omega^{n-1}
  std::optional<double> topological_term;  // integral of 4 pi^2 (2 c2 - c1^2) ^ omega^{n-2}/(n-2)!
};
ChernForms chern_degree(const HiggsInstance& inst);

struct EinsteinReport {
  double c = 0.0;
  double degree = 0.0;
  double integrated_trace = 0.0;  // n! * integral of tr K
  double expected = 0.0;          // c r n! vol
  double rel_residual = 0.0;
};
EinsteinReport einstein_report(const HiggsInstance& inst);
double einstein_constant(const HiggsInstance& inst);
// || K - c I || in the metric norm.
double hym_residual(const HiggsInstance& inst);

// Block-lower shift Phi = M dz^1 on E = direct sum of blocks; maps[k] sends block k to block k+1.
HiggsInstance build_hodge_system(ChartPtr chart, const std::vector<int>& block_ranks,
                                 const std::vector<Mat>& maps);
// E = direct sum of Omega^{p,0}, Phi(v) xi = (iota_v lambda) ^ xi with lambda = theta^S, |S| odd.
HiggsInstance build_contraction(ChartPtr chart, const MultiIndex& lambda);
// Matrices Phi_a of the contraction example in the exterior basis ordered by all_multi_indices.
std::vector<Mat> contraction_matrices(int n, const MultiIndex& lambda);

}  // namespace kl
