#pragma once

#include <map>
#include <string>

#include "kahlerlab/lattice.hpp"
#include "kahlerlab/multiindex.hpp"

namespace kl {

// Basis monomial theta^A ^ thetabar^B.
struct MonomialKey {
  MultiIndex holo;
  MultiIndex anti;
  int p() const { return holo.size(); }
  int q() const { return anti.size(); }
  std::string str() const { return holo.str() + "|" + anti.str(); }
  auto operator<=>(const MonomialKey&) const = default;
  bool operator==(const MonomialKey&) const = default;
};

MonomialKey make_key(int n, std::vector<int> holo, std::vector<int> anti);
MonomialKey top_key(int n);
std::vector<MonomialKey> basis_keys(int n, int p, int q);

// Sign of a ^ b relative to the sorted monomial written to `out`; 0 when an index repeats.
int monomial_wedge(const MonomialKey& a, const MonomialKey& b, MonomialKey& out);

// omega^n/n! = volume_coefficient(n) * theta^{1..n} ^ thetabar^{1..n}, omega = i sum theta^a ^ thetabar^a.
cplx volume_coefficient(int n);

// s_{AB}: the unique factor with (theta^A thetabar^B) ^ s_{AB} theta^{A'} thetabar^{B'} = omega^n/n!.
cplx bar_star_factor(const MonomialKey& k);
// The printed closed form (-1)^{pq} i^n epsilon^{BA}; kept as a diagnostic only.
cplx bar_star_closed_form(const MonomialKey& k);

struct StarAgreement {
  int n = 0;
  int total = 0;
  int agree = 0;
  std::vector<std::string> disagreeing;  // keys where the closed form differs
};
StarAgreement closed_form_star_agreement(int n);

// A (p,q)-form with one coefficient grid per basis monomial; absent keys are zero.
class ScalarForm {
 public:
  ScalarForm() = default;
  ScalarForm(ChartPtr chart, int p, int q);
  static ScalarForm monomial(ChartPtr chart, const MonomialKey& key, cplx value = 1.0);
  static ScalarForm monomial(const MonomialKey& key, const ScalarField& coefficient);

  const ChartPtr& chart() const { return chart_; }
  int n() const { return chart_->n(); }
  int p() const { return p_; }
  int q() const { return q_; }
  const std::map<MonomialKey, ScalarField>& terms() const { return terms_; }

  // Adds `f` to the coefficient of `key`.
  void add(const MonomialKey& key, const ScalarField& f);
  void add(const MonomialKey& key, const ScalarField& f, cplx scale);
  const ScalarField* find(const MonomialKey& key) const;
  ScalarField coefficient(const MonomialKey& key) const;

  ScalarForm& operator+=(const ScalarForm& o);
  ScalarForm& operator-=(const ScalarForm& o);
  ScalarForm& operator*=(cplx s);
  double max_abs() const;

 private:
  void check_key(const MonomialKey& key) const;
  ChartPtr chart_;
  int p_ = 0;
  int q_ = 0;
  std::map<MonomialKey, ScalarField> terms_;
};

ScalarForm operator+(ScalarForm a, const ScalarForm& b);
ScalarForm operator-(ScalarForm a, const ScalarForm& b);
ScalarForm operator*(cplx s, ScalarForm a);

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b);
ScalarForm conjugate(const ScalarForm& f);
ScalarForm bar_star(const ScalarForm& f);
ScalarForm hodge_star(const ScalarForm& f);
ScalarForm d_prime(const ScalarForm& f);
ScalarForm d_double_prime(const ScalarForm& f);

// Pointwise sum phi_{AB} conj(psi_{AB}).
ScalarField inner_local(const ScalarForm& a, const ScalarForm& b);
// Same quantity through the raised-index conjugate, summing over ordered index tuples.
ScalarField inner_local_physics(const ScalarForm& a, const ScalarForm& b);

struct InnerRoutes {
  cplx wedge_route;  // integral of a ^ bar_star(b)
  cplx local_route;  // integral of inner_local(a, b) omega^n/n!
  double scale;      // integral of sum |a_{AB}| |b_{AB}|, used for the relative comparison
};
InnerRoutes inner_global_routes(const ScalarForm& a, const ScalarForm& b);
// Global inner product; 0 across bidegrees. Throws ConsistencyError if the routes disagree.
cplx inner_global(const ScalarForm& a, const ScalarForm& b, double rel_tol = 1e-10);
double norm_squared(const ScalarForm& a);

// Integral of a top-degree form against the Lebesgue measure of the chart.
cplx integrate_top(const ScalarForm& top);
ScalarForm kahler_form(ChartPtr chart);
// omega^k / k!
ScalarForm kahler_power(ChartPtr chart, int k);

}  // namespace kl
