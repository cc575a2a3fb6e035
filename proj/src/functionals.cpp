#include "kahlerlab/functionals.hpp"

#include <cmath>
#include <numbers>

#include "kahlerlab/error.hpp"

namespace kl {

void FunctionalReport::set(const std::string& key, double v) {
  for (auto& [k, x] : values)
    if (k == key) {
      x = v;
      return;
    }
  values.emplace_back(key, v);
}

void FunctionalReport::set_residual(const std::string& key, double v) {
  for (auto& [k, x] : identity_residuals)
    if (k == key) {
      x = v;
      return;
    }
  identity_residuals.emplace_back(key, v);
}

bool FunctionalReport::has(const std::string& key) const {
  for (const auto& [k, x] : values)
    if (k == key) return true;
  for (const auto& [k, x] : identity_residuals)
    if (k == key) return true;
  return false;
}

double FunctionalReport::value(const std::string& key) const {
  for (const auto& [k, x] : values)
    if (k == key) return x;
  throw InvalidArgument("FunctionalReport: no value named " + key);
}

double FunctionalReport::residual(const std::string& key) const {
  for (const auto& [k, x] : identity_residuals)
    if (k == key) return x;
  throw InvalidArgument("FunctionalReport: no residual named " + key);
}

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

double nrm2(const EndForm& f, const MetricField& h) { return std::max(0.0, norm_squared(f, h)); }

double matrix_nrm2(const MatrixField& m, const MetricField& h) {
  return nrm2(EndForm::monomial(make_key(m.chart()->n(), {}, {}), m), h);
}

double wedge_route_nrm2(const EndForm& f, const MetricField& h) {
  if (f.terms().empty()) return 0.0;
  return trace_inner_routes(f, f, h).wedge_route.real();
}

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a)); }

MonomialKey hk(int n, int a) { return make_key(n, {a}, {}); }
MonomialKey ak(int n, int a) { return make_key(n, {}, {a}); }

// Covariant derivatives nabla_a Phi_b = d_a Phi_b + [A_a, Phi_b], indexed [a-1][b-1].
std::vector<std::vector<MatrixField>> covariant_components(const HiggsInstance& inst) {
  const int n = inst.n();
  const EndForm& phi = inst.higgs();
  const EndForm& a10 = inst.connection();
  std::vector<std::vector<MatrixField>> out(n);
  for (int b = 1; b <= n; ++b) {
    const MatrixField pb = phi.coefficient(hk(n, b));
    const std::vector<MatrixField> d = d_holo_all(pb);
    for (int a = 1; a <= n; ++a) {
      MatrixField m = d[a - 1];
      if (const MatrixField* aa = a10.find(hk(n, a))) m += commutator(*aa, pb);
      out[a - 1].push_back(std::move(m));
    }
  }
  return out;
}

// D''_a Phibar_b = dbar_a Phibar_b + [A01_a, Phibar_b], indexed [a-1][b-1].
std::vector<std::vector<MatrixField>> anti_covariant_components(const HiggsInstance& inst) {
  const int n = inst.n();
  const EndForm& pb = inst.higgs_bar();
  const EndForm& a01 = inst.connection01();
  std::vector<std::vector<MatrixField>> out(n);
  for (int b = 1; b <= n; ++b) {
    const MatrixField m = pb.coefficient(ak(n, b));
    const std::vector<MatrixField> d = d_anti_all(m);
    for (int a = 1; a <= n; ++a) {
      MatrixField x = d[a - 1];
      if (const MatrixField* aa = a01.find(ak(n, a))) x += commutator(*aa, m);
      out[a - 1].push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace

FunctionalReport ymh_full(const HiggsInstance& inst) {
  const HSCurvature hs = hs_curvature(inst);
  const MetricField& h = inst.metric();
  FunctionalReport rep;
  rep.name = "ymh_full";
  const double n11 = nrm2(hs.f11, h);
  const double n20 = nrm2(hs.d_prime_phi, h);
  const double n02 = nrm2(hs.d2_phibar, h);
  const double total = n11 + n20 + n02;
  const double graded = wedge_route_nrm2(hs.f11, h) + wedge_route_nrm2(hs.d_prime_phi, h) +
                        wedge_route_nrm2(hs.d2_phibar, h);
  rep.set("F11_plus_commutator_norm2", n11);
  rep.set("DprimePhi_norm2", n20);
  rep.set("dbar_Phibar_norm2", n02);
  rep.set("full_curvature_norm2", total);
  rep.set("graded_wedge_route_norm2", graded);
  rep.set_residual("graded_decomposition", rel(total, graded));
  return rep;
}

double kobayashi_value(const HiggsInstance& inst) {
  const MatrixField k = mean_curvature(inst);
  return 0.5 * factorial(inst.n()) * matrix_nrm2(k, inst.metric());
}

FunctionalReport kobayashi(const HiggsInstance& inst) {
  const int n = inst.n();
  const int r = inst.rank();
  const double vol = inst.chart()->volume();
  const double pi = std::numbers::pi;
  FunctionalReport rep;
  rep.name = "kobayashi";
  const MatrixField k = mean_curvature(inst);
  const double k2 = matrix_nrm2(k, inst.metric());
  const double j = 0.5 * factorial(n) * k2;
  const EinsteinReport er = einstein_report(inst);
  const double bound = 2.0 * n * (pi * er.degree) * (pi * er.degree) / (r * factorial(n - 1) * vol);
  rep.set("J", j);
  rep.set("K_norm2", k2);
  rep.set("degree", er.degree);
  rep.set("einstein_constant", er.c);
  rep.set("bound", bound);
  rep.set("gap", j - bound);
  rep.set("hym_residual", hym_residual(inst));
  rep.set_residual("integrated_trace", er.rel_residual);
  return rep;
}

double sw_value(const HiggsInstance& inst) {
  const HSCurvature hs = hs_curvature(inst);
  return nrm2(hs.d_prime_phi, inst.metric()) + nrm2(hs.f11, inst.metric());
}

FunctionalReport sw_functional(const HiggsInstance& inst) {
  const HSCurvature hs = hs_curvature(inst);
  const MetricField& h = inst.metric();
  FunctionalReport rep;
  rep.name = "sw_functional";
  const double n11 = nrm2(hs.f11, h);
  const double n20 = nrm2(hs.d_prime_phi, h);
  const double n02 = nrm2(hs.d2_phibar, h);
  const double hval = n20 + n11;
  // Full curvature norm from the independent wedge route.
  const double full = wedge_route_nrm2(hs.f11, h) + wedge_route_nrm2(hs.d_prime_phi, h) +
                      wedge_route_nrm2(hs.d2_phibar, h);
  rep.set("H", hval);
  rep.set("DprimePhi_norm2", n20);
  rep.set("F11_plus_commutator_norm2", n11);
  rep.set("dbar_Phibar_norm2", n02);
  rep.set("full_curvature_norm2", full);
  rep.set_residual("full_equals_H_plus_dbar", std::abs(full - hval - n02) / (1.0 + full));
  return rep;
}

FunctionalReport residual_2k(const HiggsInstance& inst, double kappa) {
  const int n = inst.n();
  const MetricField& h = inst.metric();
  const EndForm& phi = inst.higgs();
  const EndForm& phibar = inst.higgs_bar();
  const HSCurvature hs = hs_curvature(inst);
  FunctionalReport rep;
  rep.name = "residual_2k";
  rep.set("kappa", kappa);

  const double dprime = std::sqrt(nrm2(hs.d_prime_phi, h));
  EndForm curv = inst.curvature() + kappa * hs.commutator;
  const double curv_norm = std::sqrt(nrm2(curv, h));
  rep.set("parallel_residual", dprime);
  rep.set("curvature_residual", curv_norm);

  EndForm dbar_phi = d_double_prime(phi);
  if (inst.synthetic_connection()) dbar_phi += commutator(inst.connection01(), phi);
  const double dbar = std::sqrt(nrm2(dbar_phi, h));
  rep.set("dbar_phi_norm", dbar);
  rep.set("D_h_phi_norm", std::sqrt(dprime * dprime + dbar * dbar));

  // Component route.
  const auto nab = covariant_components(inst);
  double all_pairs = 0.0, antisym = 0.0;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      all_pairs += matrix_nrm2(nab[a - 1][b - 1], h);
      if (a < b) antisym += matrix_nrm2(nab[a - 1][b - 1] - nab[b - 1][a - 1], h);
    }
  double curv_comp = 0.0;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      MatrixField m = inst.curvature().coefficient(make_key(n, {a}, {b}));
      const MatrixField pa = phi.coefficient(hk(n, a));
      const MatrixField pb = phibar.coefficient(ak(n, b));
      m += kappa * commutator(pa, pb);
      curv_comp += matrix_nrm2(m, h);
    }
  rep.set("component_parallel_all_pairs", std::sqrt(all_pairs));
  rep.set("component_parallel_residual", std::sqrt(antisym));
  rep.set("component_curvature_residual", std::sqrt(curv_comp));
  rep.set_residual("component_parallel", std::abs(std::sqrt(antisym) - dprime) / (1.0 + dprime));
  rep.set_residual("component_curvature", std::abs(std::sqrt(curv_comp) - curv_norm) / (1.0 + curv_norm));

  // The remaining two equations of the unreduced system.
  rep.set("phi_phi_commutator_norm", std::sqrt(nrm2(commutator(phi, phi), h)));
  EndForm f20 = d_prime(inst.connection()) + wedge_end(inst.connection(), inst.connection());
  rep.set("F20_norm", std::sqrt(nrm2(f20, h)));
  return rep;
}

FunctionalReport identity_residuals(const HiggsInstance& inst) {
  const int n = inst.n();
  if (n < 2) throw InvalidArgument("identity_residuals: requires complex dimension n >= 2");
  const MetricField& h = inst.metric();
  const HSCurvature hs = hs_curvature(inst);
  FunctionalReport rep;
  rep.name = "identity_residuals";
  const double n11 = nrm2(hs.f11, h);
  const double n20 = nrm2(hs.d_prime_phi, h);
  const double n02 = nrm2(hs.d2_phibar, h);
  const double full = n11 + n20 + n02;
  const double k2 = matrix_nrm2(mean_curvature(hs, inst.rank()), h);
  const ChernForms cf = chern_degree(inst);
  const double topo = *cf.topological_term;
  const ScalarForm cross_form = trace(wedge_end(inst.curvature(), hs.commutator));
  const double cross = 2.0 * integrate_top(wedge(cross_form, kahler_power(inst.chart(), n - 2))).real();

  const double lhs1 = n11 - k2;
  const double rhs1 = topo + cross;
  const double lhs2 = full - k2;
  const double rhs2 = n20 + n02 + cross + topo;
  rep.set("F11_plus_commutator_norm2", n11);
  rep.set("K_norm2", k2);
  rep.set("full_curvature_norm2", full);
  rep.set("topological_term", topo);
  rep.set("cross_term", cross);
  rep.set("koba_vs_I_lhs", lhs1);
  rep.set("koba_vs_I_rhs", rhs1);
  rep.set("koba_vs_fullYM_lhs", lhs2);
  rep.set("koba_vs_fullYM_rhs", rhs2);
  rep.set_residual("koba_vs_I", rel(lhs1, rhs1));
  rep.set_residual("koba_vs_fullYM", rel(lhs2, rhs2));
  return rep;
}

namespace {

struct LagrangianParts {
  ScalarField density;
  ScalarField literal;
};

LagrangianParts lagrangian_parts(const HiggsInstance& inst) {
  const int n = inst.n();
  const ChartPtr& chart = inst.chart();
  const EndForm& phi = inst.higgs();
  const EndForm& phibar = inst.higgs_bar();
  const EndForm& f = inst.curvature();
  const EndForm fbar = hermitian_conjugate(f, inst.metric());
  const auto nab = covariant_components(inst);
  const auto nabbar = anti_covariant_components(inst);

  ScalarField cov(chart), cov_literal(chart), rest(chart);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      cov_literal += trace_product(nab[a - 1][b - 1], nabbar[a - 1][b - 1]);
      if (a < b) {
        const MatrixField g = nab[a - 1][b - 1] - nab[b - 1][a - 1];
        const MatrixField gbar = nabbar[a - 1][b - 1] - nabbar[b - 1][a - 1];
        cov += trace_product(g, gbar);
      }
    }
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const MatrixField fab = f.coefficient(make_key(n, {a}, {b}));
      const MatrixField fbar_ba = fbar.coefficient(make_key(n, {b}, {a}));
      const MatrixField c = commutator(phi.coefficient(hk(n, a)), phibar.coefficient(ak(n, b)));
      const MatrixField cc = commutator(phibar.coefficient(ak(n, a)), phi.coefficient(hk(n, b)));
      rest -= trace_product(fab, fbar_ba);
      rest -= trace_product(c, cc);
      ScalarField cross = trace_product(c, fbar_ba);
      rest -= 2.0 * cross.real();
    }
  return {cov + rest, cov_literal + rest};
}

}  // namespace

ScalarField lagrangian_density(const HiggsInstance& inst) { return lagrangian_parts(inst).density; }

LagrangianReport lagrangian_report(const HiggsInstance& inst) {
  const LagrangianParts parts = lagrangian_parts(inst);
  LagrangianReport rep;
  rep.integral = integrate(parts.density).real();
  rep.literal_integral = integrate(parts.literal).real();
  rep.sw = sw_value(inst);
  rep.rel_mismatch = std::abs(rep.integral - rep.sw) / std::max(std::abs(rep.sw), 1e-300);
  if (rep.sw == 0.0) rep.rel_mismatch = std::abs(rep.integral);
  return rep;
}

}  // namespace kl
