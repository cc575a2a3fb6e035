#include "kahlerlab/forms.hpp"

#include <algorithm>
#include <cmath>

#include "kahlerlab/error.hpp"

namespace kl {

namespace {

int parity(long e) { return (e % 2 == 0) ? 1 : -1; }

cplx i_power(int k) {
  static const cplx table[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  return table[((k % 4) + 4) % 4];
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

MonomialKey make_key(int n, std::vector<int> holo, std::vector<int> anti) {
  return {MultiIndex(n, std::move(holo)), MultiIndex(n, std::move(anti))};
}

MonomialKey top_key(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  return make_key(n, all, all);
}

std::vector<MonomialKey> basis_keys(int n, int p, int q) {
  std::vector<MonomialKey> out;
  for (const auto& a : multi_indices(n, p))
    for (const auto& b : multi_indices(n, q)) out.push_back({a, b});
  return out;
}

int monomial_wedge(const MonomialKey& a, const MonomialKey& b, MonomialKey& out) {
  const int n = a.holo.n();
  // theta^A thetabar^B theta^C thetabar^D = (-1)^{|B||C|} theta^A theta^C thetabar^B thetabar^D
  const auto hc = concat(a.holo.entries(), b.holo.entries());
  const auto ac = concat(a.anti.entries(), b.anti.entries());
  const int s1 = sort_sign(hc);
  const int s2 = sort_sign(ac);
  if (s1 == 0 || s2 == 0) return 0;
  out = {MultiIndex(n, sorted(hc)), MultiIndex(n, sorted(ac))};
  return parity(long(a.q()) * b.p()) * s1 * s2;
}

cplx volume_coefficient(int n) { return i_power(n) * double(parity(long(n) * (n - 1) / 2)); }

cplx bar_star_factor(const MonomialKey& k) {
  const int n = k.holo.n();
  const MonomialKey dual{k.holo.complement(), k.anti.complement()};
  MonomialKey top;
  const int t = monomial_wedge(k, dual, top);
  return volume_coefficient(n) * double(t);
}

cplx bar_star_closed_form(const MonomialKey& k) {
  const int n = k.holo.n();
  return double(parity(long(k.p()) * k.q())) * i_power(n) * double(epsilon(k.anti, k.holo));
}

StarAgreement closed_form_star_agreement(int n) {
  StarAgreement rep;
  rep.n = n;
  for (const auto& a : all_multi_indices(n))
    for (const auto& b : all_multi_indices(n)) {
      const MonomialKey k{a, b};
      ++rep.total;
      if (std::abs(bar_star_factor(k) - bar_star_closed_form(k)) < 0.5)
        ++rep.agree;
      else
        rep.disagreeing.push_back(k.str());
    }
  return rep;
}

ScalarForm::ScalarForm(ChartPtr chart, int p, int q) : chart_(std::move(chart)), p_(p), q_(q) {
  if (!chart_) throw InvalidArgument("ScalarForm: missing chart");
  if (p < 0 || q < 0 || p > chart_->n() || q > chart_->n())
    throw InvalidArgument("ScalarForm: bidegree out of range");
}

ScalarForm ScalarForm::monomial(ChartPtr chart, const MonomialKey& key, cplx value) {
  ScalarForm f(chart, key.p(), key.q());
  f.add(key, ScalarField(chart, value));
  return f;
}

ScalarForm ScalarForm::monomial(const MonomialKey& key, const ScalarField& coefficient) {
  ScalarForm f(coefficient.chart(), key.p(), key.q());
  f.add(key, coefficient);
  return f;
}

void ScalarForm::check_key(const MonomialKey& key) const {
  if (key.p() != p_ || key.q() != q_) throw InvalidArgument("ScalarForm: key " + key.str() + " has wrong bidegree");
  if (key.holo.n() != n() || key.anti.n() != n()) throw InvalidArgument("ScalarForm: key dimension mismatch");
}

void ScalarForm::add(const MonomialKey& key, const ScalarField& f) {
  check_key(key);
  require_same_chart(chart_, f.chart(), "ScalarForm::add");
  auto it = terms_.find(key);
  if (it == terms_.end())
    terms_.emplace(key, f);
  else
    it->second += f;
}

void ScalarForm::add(const MonomialKey& key, const ScalarField& f, cplx scale) {
  add(key, scale * f);
}

const ScalarField* ScalarForm::find(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? nullptr : &it->second;
}

ScalarField ScalarForm::coefficient(const MonomialKey& key) const {
  const ScalarField* f = find(key);
  return f ? *f : ScalarField(chart_);
}

ScalarForm& ScalarForm::operator+=(const ScalarForm& o) {
  if (o.p_ != p_ || o.q_ != q_) throw InvalidArgument("ScalarForm +=: bidegree mismatch");
  for (const auto& [k, f] : o.terms_) add(k, f);
  return *this;
}

ScalarForm& ScalarForm::operator-=(const ScalarForm& o) {
  if (o.p_ != p_ || o.q_ != q_) throw InvalidArgument("ScalarForm -=: bidegree mismatch");
  for (const auto& [k, f] : o.terms_) add(k, f, -1.0);
  return *this;
}

ScalarForm& ScalarForm::operator*=(cplx s) {
  for (auto& [k, f] : terms_) f *= s;
  return *this;
}

double ScalarForm::max_abs() const {
  double m = 0.0;
  for (const auto& [k, f] : terms_) m = std::max(m, f.max_abs());
  return m;
}

ScalarForm operator+(ScalarForm a, const ScalarForm& b) { return a += b; }
ScalarForm operator-(ScalarForm a, const ScalarForm& b) { return a -= b; }
ScalarForm operator*(cplx s, ScalarForm a) { return a *= s; }

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  const int n = a.n();
  const int p = a.p() + b.p();
  const int q = a.q() + b.q();
  if (p > n || q > n) return ScalarForm(a.chart(), std::min(p, n), std::min(q, n));
  ScalarForm out(a.chart(), p, q);
  for (const auto& [ka, fa] : a.terms())
    for (const auto& [kb, fb] : b.terms()) {
      MonomialKey k;
      const int s = monomial_wedge(ka, kb, k);
      if (s != 0) out.add(k, fa * fb, double(s));
    }
  return out;
}

ScalarForm conjugate(const ScalarForm& f) {
  ScalarForm out(f.chart(), f.q(), f.p());
  const double s = parity(long(f.p()) * f.q());
  for (const auto& [k, c] : f.terms()) out.add({k.anti, k.holo}, c.conj(), s);
  return out;
}

ScalarForm bar_star(const ScalarForm& f) {
  const int n = f.n();
  ScalarForm out(f.chart(), n - f.p(), n - f.q());
  for (const auto& [k, c] : f.terms())
    out.add({k.holo.complement(), k.anti.complement()}, c.conj(), bar_star_factor(k));
  return out;
}

ScalarForm hodge_star(const ScalarForm& f) { return bar_star(conjugate(f)); }

ScalarForm d_prime(const ScalarForm& f) {
  const int n = f.n();
  if (f.p() == n) return ScalarForm(f.chart(), n, f.q());
  ScalarForm out(f.chart(), f.p() + 1, f.q());
  for (const auto& [k, c] : f.terms())
    for (int a = 1; a <= n; ++a) {
      MonomialKey dk;
      const int s = monomial_wedge(make_key(n, {a}, {}), k, dk);
      if (s != 0) out.add(dk, d_holo(c, a), double(s));
    }
  return out;
}

ScalarForm d_double_prime(const ScalarForm& f) {
  const int n = f.n();
  if (f.q() == n) return ScalarForm(f.chart(), f.p(), n);
  ScalarForm out(f.chart(), f.p(), f.q() + 1);
  for (const auto& [k, c] : f.terms())
    for (int a = 1; a <= n; ++a) {
      MonomialKey dk;
      const int s = monomial_wedge(make_key(n, {}, {a}), k, dk);
      if (s != 0) out.add(dk, d_anti(c, a), double(s));
    }
  return out;
}

namespace {

void require_same_type(const ScalarForm& a, const ScalarForm& b, const char* where) {
  require_same_chart(a.chart(), b.chart(), where);
  if (a.p() != b.p() || a.q() != b.q()) throw InvalidArgument(std::string(where) + ": bidegree mismatch");
}

// All ordered tuples of distinct labels in 1..n of length k.
void ordered_tuples(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int a = 1; a <= n; ++a) {
    if (std::find(cur.begin(), cur.end(), a) != cur.end()) continue;
    cur.push_back(a);
    ordered_tuples(n, k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> ordered_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  ordered_tuples(n, k, cur, out);
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

ScalarField inner_local(const ScalarForm& a, const ScalarForm& b) {
  require_same_type(a, b, "inner_local");
  ScalarField out(a.chart());
  for (const auto& [k, fa] : a.terms()) {
    const ScalarField* fb = b.find(k);
    if (!fb) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += fa[i] * std::conj((*fb)[i]);
  }
  return out;
}

ScalarField inner_local_physics(const ScalarForm& a, const ScalarForm& b) {
  require_same_type(a, b, "inner_local_physics");
  const int n = a.n(), p = a.p(), q = a.q();
  const ScalarForm bbar = conjugate(b);  // components bbar_{B Abar}, bidegree (q, p)
  ScalarField out(a.chart());
  const auto holo = ordered_tuples(n, p);
  const auto anti = ordered_tuples(n, q);
  for (const auto& al : holo)
    for (const auto& be : anti) {
      // phi_{al be} with antisymmetric extension; raised conjugate bbar^{al be} = bbar_{be al}.
      const MonomialKey ka = make_key(n, sorted(al), sorted(be));
      const MonomialKey kb = make_key(n, sorted(be), sorted(al));
      const ScalarField* fa = a.find(ka);
      const ScalarField* fb = bbar.find(kb);
      if (!fa || !fb) continue;
      const double sa = sort_sign(al) * sort_sign(be);
      const double sb = sort_sign(be) * sort_sign(al);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += sa * sb * (*fa)[i] * (*fb)[i];
    }
  out *= double(parity(long(p) * q)) / (factorial(p) * factorial(q));
  return out;
}

cplx integrate_top(const ScalarForm& top) {
  const int n = top.n();
  if (top.p() != n || top.q() != n) throw InvalidArgument("integrate_top: form is not of top degree");
  const ScalarField* f = top.find(top_key(n));
  if (!f) return 0.0;
  return integrate(*f) / volume_coefficient(n);
}

InnerRoutes inner_global_routes(const ScalarForm& a, const ScalarForm& b) {
  require_same_type(a, b, "inner_global");
  InnerRoutes r{};
  r.wedge_route = integrate_top(wedge(a, bar_star(b)));
  r.local_route = integrate(inner_local(a, b));
  ScalarField absprod(a.chart());
  for (const auto& [k, fa] : a.terms()) {
    const ScalarField* fb = b.find(k);
    if (!fb) continue;
    for (std::size_t i = 0; i < absprod.size(); ++i) absprod[i] += std::abs(fa[i]) * std::abs((*fb)[i]);
  }
  r.scale = integrate(absprod).real();
  return r;
}

cplx inner_global(const ScalarForm& a, const ScalarForm& b, double rel_tol) {
  require_same_chart(a.chart(), b.chart(), "inner_global");
  if (a.p() != b.p() || a.q() != b.q()) return 0.0;
  const InnerRoutes r = inner_global_routes(a, b);
  const double diff = std::abs(r.wedge_route - r.local_route);
  if (diff > rel_tol * std::max({std::abs(r.local_route), r.scale, 1e-300}))
    throw ConsistencyError("inner_global: wedge and local routes disagree by " + std::to_string(diff));
  return r.local_route;
}

double norm_squared(const ScalarForm& a) { return inner_global(a, a).real(); }

ScalarForm kahler_form(ChartPtr chart) {
  const int n = chart->n();
  ScalarForm w(chart, 1, 1);
  for (int a = 1; a <= n; ++a) w.add(make_key(n, {a}, {a}), ScalarField(chart, cplx(0, 1)));
  return w;
}

ScalarForm kahler_power(ChartPtr chart, int k) {
  const int n = chart->n();
  if (k < 0 || k > n) throw InvalidArgument("kahler_power: exponent out of range");
  ScalarForm out = ScalarForm::monomial(chart, make_key(n, {}, {}), 1.0);
  const ScalarForm w = kahler_form(chart);
  for (int j = 1; j <= k; ++j) out = (1.0 / j) * wedge(out, w);
  return out;
}

}  // namespace kl
