#pragma once

#include <map>

#include "kahlerlab/forms.hpp"
#include "kahlerlab/matrix_field.hpp"

namespace kl {

// Bundle metric in a fixed holomorphic frame. The stored matrix K satisfies
// h(v, w) = w^dagger K v, so h_{i jbar} = h(e_i, e_j) = K(j, i) and h^{m kbar} = K^{-1}(m, k).
class MetricField {
 public:
  MetricField(MatrixField k);
  static MetricField identity(ChartPtr chart, int rank);

  const ChartPtr& chart() const { return k_.chart(); }
  int rank() const { return k_.rank(); }
  const MatrixField& matrix() const { return k_; }
  const MatrixField& inverse() const { return kinv_; }
  bool is_identity() const { return identity_; }

  // Index-convention accessors at a point.
  cplx lower(std::size_t p, int i, int j) const { return k_.at(p)[j * rank() + i]; }
  cplx upper(std::size_t p, int m, int k) const { return kinv_.at(p)[m * rank() + k]; }

  double hermiticity_defect() const { return k_.hermiticity_defect(); }
  double min_eigenvalue() const;
  // max over points of |sum_k h_{i kbar} h^{j kbar} - delta|.
  double inverse_defect() const;

 private:
  MatrixField k_;
  MatrixField kinv_;
  bool identity_ = false;
};

// A (p,q)-form with r x r matrix coefficients.
class EndForm {
 public:
  EndForm() = default;
  EndForm(ChartPtr chart, int rank, int p, int q);
  static EndForm monomial(const MonomialKey& key, const MatrixField& coefficient);
  // Promotes a scalar form to f * identity.
  static EndForm from_scalar(const ScalarForm& f, int rank);

  const ChartPtr& chart() const { return chart_; }
  int n() const { return chart_->n(); }
  int rank() const { return rank_; }
  int p() const { return p_; }
  int q() const { return q_; }
  const std::map<MonomialKey, MatrixField>& terms() const { return terms_; }

  void add(const MonomialKey& key, const MatrixField& m);
  void add(const MonomialKey& key, const MatrixField& m, cplx scale);
  const MatrixField* find(const MonomialKey& key) const;
  MatrixField coefficient(const MonomialKey& key) const;

  EndForm& operator+=(const EndForm& o);
  EndForm& operator-=(const EndForm& o);
  EndForm& operator*=(cplx s);
  double max_abs() const;

 private:
  void check_key(const MonomialKey& key) const;
  ChartPtr chart_;
  int rank_ = 0;
  int p_ = 0;
  int q_ = 0;
  std::map<MonomialKey, MatrixField> terms_;
};

EndForm operator+(EndForm a, const EndForm& b);
EndForm operator-(EndForm a, const EndForm& b);
EndForm operator*(cplx s, EndForm a);

EndForm wedge_end(const EndForm& a, const EndForm& b);
EndForm wedge(const ScalarForm& a, const EndForm& b);
EndForm wedge(const EndForm& a, const ScalarForm& b);
// [a, b] = a ^ b - (-1)^{(p+q)(s+u)} b ^ a
EndForm commutator(const EndForm& a, const EndForm& b);

// Adjoint with respect to h, evaluated with the index formula
// (-1)^{pq} h_{j lbar} conj(Psi^l_k) h^{m kbar}, stored at key (B, A).
EndForm hermitian_conjugate(const EndForm& psi, const MetricField& h);
// Entry-wise conjugate transpose, keys unchanged.
EndForm matricial_adjoint(const EndForm& psi);
// Hodge star acting linearly on the form part.
EndForm hodge_star_end(const EndForm& psi);
// *(hermitian_conjugate(psi, h))
EndForm bar_star_h(const EndForm& psi, const MetricField& h);
// sum Psi^dagger_{AB} bar_star(theta^A thetabar^B); valid for h = I only.
EndForm bar_star_unitary(const EndForm& psi);

ScalarForm trace(const EndForm& psi);
EndForm d_prime(const EndForm& psi);
EndForm d_double_prime(const EndForm& psi);

// sum tr(Phi_{AB} K^{-1} Psi_{AB}^dagger K)
ScalarField trace_inner_local(const EndForm& a, const EndForm& b, const MetricField& h);
// (-1)^{pq} sum tr(Phi_{AB} Psibar_h^{AB}) via the hermitian conjugate.
ScalarField trace_inner_local_physics(const EndForm& a, const EndForm& b, const MetricField& h);

struct TraceInnerRoutes {
  cplx wedge_route;  // integral of tr(a ^ bar_star_h(b))
  cplx local_route;
  double scale;      // sqrt(|a|^2 |b|^2) integrated bound for the relative comparison
};
TraceInnerRoutes trace_inner_routes(const EndForm& a, const EndForm& b, const MetricField& h);
// Global trace inner product; 0 across bidegrees; ConsistencyError when routes disagree.
cplx trace_inner_global(const EndForm& a, const EndForm& b, const MetricField& h, double rel_tol = 1e-10);
// Local-route norm, no route comparison; the fast path used by the functionals.
double norm_squared(const EndForm& a, const MetricField& h);

// Pointwise unitary-frame Frobenius L2 norm, independent of any metric.
double frobenius_norm(const EndForm& a);
double frobenius_norm(const MatrixField& m);

}  // namespace kl
