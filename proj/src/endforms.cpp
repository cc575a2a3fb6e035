#include "kahlerlab/endforms.hpp"

#include <algorithm>
#include <cmath>

#include "kahlerlab/error.hpp"
#include "kahlerlab/kernels.hpp"

namespace kl {

namespace {

int parity(long e) { return (e % 2 == 0) ? 1 : -1; }

constexpr double kHermTol = 1e-13;
constexpr double kInverseTol = 1e-12;

}  // namespace

MetricField::MetricField(MatrixField k) : k_(std::move(k)) {
  const double scale = std::max(1.0, k_.max_abs());
  const double herm = k_.hermiticity_defect();
  if (herm > kHermTol * scale)
    throw ValidationError("MetricField: not hermitian (defect " + std::to_string(herm) + ")");
  const int r = rank();
  kinv_ = MatrixField(k_.chart(), r);
  bool positive = true;
  identity_ = true;
  const Mat id = Mat::Identity(r, r);
  for (std::size_t p = 0; p < k_.points(); ++p) {
    const Mat m = k_.mat(p);
    Eigen::LLT<Mat> llt(0.5 * (m + m.adjoint()));
    if (llt.info() != Eigen::Success) {
      positive = false;
      break;
    }
    kinv_.mat(p) = llt.solve(id);
    if (identity_ && m != id) identity_ = false;
  }
  if (!positive) throw ValidationError("MetricField: not positive definite");
  const double inv = inverse_defect();
  if (inv > kInverseTol)
    throw ValidationError("MetricField: inverse identity violated (" + std::to_string(inv) + ")");
}

MetricField MetricField::identity(ChartPtr chart, int rank) {
  return MetricField(MatrixField::identity(std::move(chart), rank));
}

double MetricField::min_eigenvalue() const {
  double m = INFINITY;
  for (std::size_t p = 0; p < k_.points(); ++p) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(k_.mat(p)), Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return m;
}

double MetricField::inverse_defect() const {
  const int r = rank();
  double worst = 0.0;
  for (std::size_t p = 0; p < k_.points(); ++p)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < r; ++k) s += lower(p, i, k) * upper(p, j, k);
        worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
  return worst;
}

EndForm::EndForm(ChartPtr chart, int rank, int p, int q)
    : chart_(std::move(chart)), rank_(rank), p_(p), q_(q) {
  if (!chart_) throw InvalidArgument("EndForm: missing chart");
  if (rank < 1) throw InvalidArgument("EndForm: rank must be positive");
  if (p < 0 || q < 0 || p > chart_->n() || q > chart_->n())
    throw InvalidArgument("EndForm: bidegree out of range");
}

EndForm EndForm::monomial(const MonomialKey& key, const MatrixField& coefficient) {
  EndForm f(coefficient.chart(), coefficient.rank(), key.p(), key.q());
  f.add(key, coefficient);
  return f;
}

EndForm EndForm::from_scalar(const ScalarForm& f, int rank) {
  EndForm out(f.chart(), rank, f.p(), f.q());
  const Mat id = Mat::Identity(rank, rank);
  for (const auto& [k, c] : f.terms()) out.add(k, MatrixField::from_scalar(c, id));
  return out;
}

void EndForm::check_key(const MonomialKey& key) const {
  if (key.p() != p_ || key.q() != q_) throw InvalidArgument("EndForm: key " + key.str() + " has wrong bidegree");
  if (key.holo.n() != n() || key.anti.n() != n()) throw InvalidArgument("EndForm: key dimension mismatch");
}

void EndForm::add(const MonomialKey& key, const MatrixField& m) {
  check_key(key);
  require_same_chart(chart_, m.chart(), "EndForm::add");
  if (m.rank() != rank_) throw InvalidArgument("EndForm::add: rank mismatch");
  auto it = terms_.find(key);
  if (it == terms_.end())
    terms_.emplace(key, m);
  else
    it->second += m;
}

void EndForm::add(const MonomialKey& key, const MatrixField& m, cplx scale) { add(key, scale * m); }

const MatrixField* EndForm::find(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? nullptr : &it->second;
}

MatrixField EndForm::coefficient(const MonomialKey& key) const {
  const MatrixField* m = find(key);
  return m ? *m : MatrixField(chart_, rank_);
}

EndForm& EndForm::operator+=(const EndForm& o) {
  if (o.p_ != p_ || o.q_ != q_ || o.rank_ != rank_) throw InvalidArgument("EndForm +=: type mismatch");
  for (const auto& [k, m] : o.terms_) add(k, m);
  return *this;
}

EndForm& EndForm::operator-=(const EndForm& o) {
  if (o.p_ != p_ || o.q_ != q_ || o.rank_ != rank_) throw InvalidArgument("EndForm -=: type mismatch");
  for (const auto& [k, m] : o.terms_) add(k, m, -1.0);
  return *this;
}

EndForm& EndForm::operator*=(cplx s) {
  for (auto& [k, m] : terms_) m *= s;
  return *this;
}

double EndForm::max_abs() const {
  double v = 0.0;
  for (const auto& [k, m] : terms_) v = std::max(v, m.max_abs());
  return v;
}

EndForm operator+(EndForm a, const EndForm& b) { return a += b; }
EndForm operator-(EndForm a, const EndForm& b) { return a -= b; }
EndForm operator*(cplx s, EndForm a) { return a *= s; }

namespace {

void require_same_bundle(const EndForm& a, const EndForm& b, const char* where) {
  require_same_chart(a.chart(), b.chart(), where);
  if (a.rank() != b.rank()) throw InvalidArgument(std::string(where) + ": rank mismatch");
}

void require_metric(const EndForm& a, const MetricField& h, const char* where) {
  require_same_chart(a.chart(), h.chart(), where);
  if (a.rank() != h.rank()) throw InvalidArgument(std::string(where) + ": metric rank mismatch");
}

}  // namespace

EndForm wedge_end(const EndForm& a, const EndForm& b) {
  require_same_bundle(a, b, "wedge_end");
  const int n = a.n();
  const int p = a.p() + b.p();
  const int q = a.q() + b.q();
  if (p > n || q > n) return EndForm(a.chart(), a.rank(), std::min(p, n), std::min(q, n));
  EndForm out(a.chart(), a.rank(), p, q);
  for (const auto& [ka, ma] : a.terms())
    for (const auto& [kb, mb] : b.terms()) {
      MonomialKey k;
      const int s = monomial_wedge(ka, kb, k);
      if (s != 0) out.add(k, ma * mb, double(s));
    }
  return out;
}

EndForm wedge(const ScalarForm& a, const EndForm& b) {
  return wedge_end(EndForm::from_scalar(a, b.rank()), b);
}

EndForm wedge(const EndForm& a, const ScalarForm& b) {
  return wedge_end(a, EndForm::from_scalar(b, a.rank()));
}

EndForm commutator(const EndForm& a, const EndForm& b) {
  const double s = parity(long(a.p() + a.q()) * (b.p() + b.q()));
  EndForm out = wedge_end(a, b);
  out -= s * wedge_end(b, a);
  return out;
}

EndForm hermitian_conjugate(const EndForm& psi, const MetricField& h) {
  require_metric(psi, h, "hermitian_conjugate");
  const int r = psi.rank();
  const double sign = parity(long(psi.p()) * psi.q());
  EndForm out(psi.chart(), r, psi.q(), psi.p());
  for (const auto& [key, m] : psi.terms()) {
    MatrixField bar(psi.chart(), r);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ip = 0; ip < static_cast<std::ptrdiff_t>(m.points()); ++ip) {
      const std::size_t p = static_cast<std::size_t>(ip);
      const cplx* src = m.at(p);
      cplx* dst = bar.at(p);
      for (int mi = 0; mi < r; ++mi)
        for (int j = 0; j < r; ++j) {
          cplx s = 0.0;
          for (int l = 0; l < r; ++l)
            for (int k = 0; k < r; ++k) s += h.lower(p, j, l) * std::conj(src[l * r + k]) * h.upper(p, mi, k);
          dst[mi * r + j] = sign * s;
        }
    }
    out.add({key.anti, key.holo}, bar);
  }
  return out;
}

EndForm matricial_adjoint(const EndForm& psi) {
  EndForm out(psi.chart(), psi.rank(), psi.p(), psi.q());
  for (const auto& [key, m] : psi.terms()) out.add(key, m.adjoint());
  return out;
}

EndForm hodge_star_end(const EndForm& psi) {
  const int n = psi.n();
  EndForm out(psi.chart(), psi.rank(), n - psi.q(), n - psi.p());
  const double sign = parity(long(psi.p()) * psi.q());
  for (const auto& [key, m] : psi.terms()) {
    const MonomialKey swapped{key.anti, key.holo};
    out.add({key.anti.complement(), key.holo.complement()}, m, sign * bar_star_factor(swapped));
  }
  return out;
}

EndForm bar_star_h(const EndForm& psi, const MetricField& h) {
  return hodge_star_end(hermitian_conjugate(psi, h));
}

EndForm bar_star_unitary(const EndForm& psi) {
  const int n = psi.n();
  EndForm out(psi.chart(), psi.rank(), n - psi.p(), n - psi.q());
  for (const auto& [key, m] : psi.terms())
    out.add({key.holo.complement(), key.anti.complement()}, m.adjoint(), bar_star_factor(key));
  return out;
}

ScalarForm trace(const EndForm& psi) {
  ScalarForm out(psi.chart(), psi.p(), psi.q());
  for (const auto& [key, m] : psi.terms()) out.add(key, m.trace());
  return out;
}

namespace {

EndForm exterior(const EndForm& psi, bool holomorphic) {
  const int n = psi.n();
  const int p = psi.p() + (holomorphic ? 1 : 0);
  const int q = psi.q() + (holomorphic ? 0 : 1);
  if (p > n || q > n) return EndForm(psi.chart(), psi.rank(), std::min(p, n), std::min(q, n));
  EndForm out(psi.chart(), psi.rank(), p, q);
  for (const auto& [key, m] : psi.terms()) {
    auto ds = holomorphic ? d_holo_all(m) : d_anti_all(m);
    for (int a = 1; a <= n; ++a) {
      const MonomialKey da = holomorphic ? make_key(n, {a}, {}) : make_key(n, {}, {a});
      MonomialKey k;
      const int s = monomial_wedge(da, key, k);
      if (s != 0) out.add(k, ds[a - 1], double(s));
    }
  }
  return out;
}

}  // namespace

EndForm d_prime(const EndForm& psi) { return exterior(psi, true); }
EndForm d_double_prime(const EndForm& psi) { return exterior(psi, false); }

ScalarField trace_inner_local(const EndForm& a, const EndForm& b, const MetricField& h) {
  require_same_bundle(a, b, "trace_inner_local");
  require_metric(a, h, "trace_inner_local");
  if (a.p() != b.p() || a.q() != b.q()) throw InvalidArgument("trace_inner_local: bidegree mismatch");
  ScalarField out(a.chart());
  MatrixField adj(a.chart(), a.rank());
  ScalarField tr(a.chart());
  for (const auto& [key, ma] : a.terms()) {
    const MatrixField* mb = b.find(key);
    if (!mb) continue;
    kernels::h_adjoint(h.inverse().data(), mb->data(), h.matrix().data(), adj.data(), adj.points(), a.rank());
    kernels::trace_product(ma.data(), adj.data(), tr.data(), tr.size(), a.rank());
    out += tr;
  }
  return out;
}

ScalarField trace_inner_local_physics(const EndForm& a, const EndForm& b, const MetricField& h) {
  require_same_bundle(a, b, "trace_inner_local_physics");
  if (a.p() != b.p() || a.q() != b.q()) throw InvalidArgument("trace_inner_local_physics: bidegree mismatch");
  const EndForm bbar = hermitian_conjugate(b, h);
  const double sign = parity(long(a.p()) * a.q());
  ScalarField out(a.chart());
  for (const auto& [key, ma] : a.terms()) {
    const MatrixField* mb = bbar.find({key.anti, key.holo});
    if (!mb) continue;
    out += trace_product(ma, *mb);
  }
  out *= sign;
  return out;
}

TraceInnerRoutes trace_inner_routes(const EndForm& a, const EndForm& b, const MetricField& h) {
  require_same_bundle(a, b, "trace_inner_global");
  if (a.p() != b.p() || a.q() != b.q()) throw InvalidArgument("trace_inner_routes: bidegree mismatch");
  TraceInnerRoutes r{};
  r.wedge_route = integrate_top(trace(wedge_end(a, bar_star_h(b, h))));
  r.local_route = integrate(trace_inner_local(a, b, h));
  r.scale = std::sqrt(std::max(0.0, norm_squared(a, h)) * std::max(0.0, norm_squared(b, h)));
  return r;
}

cplx trace_inner_global(const EndForm& a, const EndForm& b, const MetricField& h, double rel_tol) {
  require_same_bundle(a, b, "trace_inner_global");
  if (a.p() != b.p() || a.q() != b.q()) return 0.0;
  const TraceInnerRoutes r = trace_inner_routes(a, b, h);
  const double diff = std::abs(r.wedge_route - r.local_route);
  if (diff > rel_tol * std::max({std::abs(r.local_route), r.scale, 1e-300}))
    throw ConsistencyError("trace_inner_global: wedge and local routes disagree by " + std::to_string(diff));
  return r.local_route;
}

double norm_squared(const EndForm& a, const MetricField& h) {
  return integrate(trace_inner_local(a, a, h)).real();
}

double frobenius_norm(const MatrixField& m) {
  ScalarField s(m.chart());
  const std::size_t st = m.stride();
  for (std::size_t p = 0; p < m.points(); ++p) {
    double acc = 0.0;
    for (std::size_t q = 0; q < st; ++q) acc += std::norm(m.data()[p * st + q]);
    s[p] = acc;
  }
  return std::sqrt(std::max(0.0, integrate(s).real()));
}

double frobenius_norm(const EndForm& a) {
  double acc = 0.0;
  for (const auto& [k, m] : a.terms()) {
    const double v = frobenius_norm(m);
    acc += v * v;
  }
  return std::sqrt(acc);
}

}  // namespace kl
