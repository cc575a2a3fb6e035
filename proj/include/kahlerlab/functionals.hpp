#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kahlerlab/higgs.hpp"

namespace kl {

// One row of a flow trace.
struct FlowRow {
  int iteration = 0;
  double value = 0.0;
  double step = 0.0;
  double parallel_residual = 0.0;   // ||D'Phi||
  double curvature_residual = 0.0;  // ||F + [Phi, Phibar]||
};

// Named scalar results in insertion order, so serialized reports are deterministic.
struct FunctionalReport {
  std::string name;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, double>> identity_residuals;
  std::vector<FlowRow> trace;
  std::string status;

  void set(const std::string& key, double v);
  void set_residual(const std::string& key, double v);
  double value(const std::string& key) const;
  double residual(const std::string& key) const;
  bool has(const std::string& key) const;
};

// ||F + [Phi,Phibar]||^2 + ||D'Phi||^2 + ||d''Phibar||^2, with the graded total
// recomputed through the wedge route.
FunctionalReport ymh_full(const HiggsInstance& inst);
// J = (n!/2) ||K||^2 with the lower bound 2 n (pi deg)^2 / (r (n-1)! vol).
FunctionalReport kobayashi(const HiggsInstance& inst);
// H = ||D'Phi||^2 + ||F + [Phi,Phibar]||^2 and the relation ||F_full||^2 = H + ||d''Phibar||^2.
FunctionalReport sw_functional(const HiggsInstance& inst);
double sw_value(const HiggsInstance& inst);
double kobayashi_value(const HiggsInstance& inst);

// Residual norms (||D'Phi||, ||F + kappa [Phi,Phibar]||) plus component-level and
// auxiliary checks: ||D_h Phi||, ||[Phi,Phi]||, ||F^{2,0}||.
FunctionalReport residual_2k(const HiggsInstance& inst, double kappa);

// Residuals of the two identities relating the full functional, the Yang-Mills-Higgs
// curvature norm and the Kobayashi functional. Requires n >= 2.
FunctionalReport identity_residuals(const HiggsInstance& inst);

// Pointwise Lagrangian whose integral against omega^n/n! is H.
ScalarField lagrangian_density(const HiggsInstance& inst);
struct LagrangianReport {
  double integral = 0.0;          // integral of L omega^n/n!
  double sw = 0.0;                // H from the norms
  double rel_mismatch = 0.0;
  double literal_integral = 0.0;  // unsymmetrized sum over all (a, b) of |D_a Phi_b|^2
};
LagrangianReport lagrangian_report(const HiggsInstance& inst);

enum class FlowTarget { H, J };

struct FlowOptions {
  FlowTarget target = FlowTarget::H;
  int steps = 100;
  double step_size = 0.1;
  std::uint64_t seed = 0;
  int band = 1;                 // band limit of the perturbation basis
  double value_tol = 1e-14;     // stop when the functional falls below this
  double gradient_tol = 1e-10;
  double fd_epsilon = 1e-6;
  int max_backtracks = 40;
};

struct FlowResult {
  HiggsInstance final_instance;
  FunctionalReport report;  // trace plus initial/final values and status
  int accepted_steps = 0;
};
FlowResult flow_minimize(const HiggsInstance& inst, const FlowOptions& opt);

}  // namespace kl
