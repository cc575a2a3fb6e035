#include <cmath>
#include <numbers>
#include <random>

#include "kahlerlab/error.hpp"
#include "kahlerlab/functionals.hpp"
#include "kahlerlab/sampling.hpp"

namespace kl {

namespace {

// Real L2-normalized Fourier modes on the torus: the constant and cos/sin pairs over a half-space
// of nonzero wave vectors in [-band, band]^{2n}.
std::vector<ScalarField> mode_basis(const ChartPtr& chart, int band) {
  const int d = chart->real_dims();
  const double vol = chart->volume();
  std::vector<ScalarField> out;
  out.emplace_back(chart, 1.0 / std::sqrt(vol));
  const int width = 2 * band + 1;
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= width;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<int> m(d);
    std::size_t rem = idx;
    for (int k = d - 1; k >= 0; --k) {
      m[k] = static_cast<int>(rem % width) - band;
      rem /= width;
    }
    // Keep m if its first nonzero entry is positive.
    int first = 0;
    for (int v : m)
      if (v != 0) {
        first = v;
        break;
      }
    if (first <= 0) continue;
    auto phase = [&, m](const std::vector<double>& x) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += 2.0 * std::numbers::pi * m[k] * x[k] / chart->period(k);
      return s;
    };
    const double norm = std::sqrt(2.0 / vol);
    out.push_back(ScalarField::from_function(chart, [&](const std::vector<double>& x) { return norm * std::cos(phase(x)); }));
    out.push_back(ScalarField::from_function(chart, [&](const std::vector<double>& x) { return norm * std::sin(phase(x)); }));
  }
  return out;
}

// Orthonormal basis of r x r hermitian matrices.
std::vector<Mat> hermitian_generators(int r) {
  std::vector<Mat> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < r; ++i) {
    Mat e = Mat::Zero(r, r);
    e(i, i) = 1.0;
    out.push_back(e);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Mat a = Mat::Zero(r, r);
      a(i, j) = s;
      a(j, i) = s;
      out.push_back(a);
      Mat b = Mat::Zero(r, r);
      b(i, j) = cplx(0.0, -s);
      b(j, i) = cplx(0.0, s);
      out.push_back(b);
    }
  return out;
}

struct Evaluation {
  double value = 0.0;
  double parallel = 0.0;
  double curvature = 0.0;
};

class FlowProblem {
 public:
  FlowProblem(const HiggsInstance& inst, const FlowOptions& opt) : inst_(inst), opt_(opt) {
    const ChartPtr& chart = inst.chart();
    const int r = inst.rank();
    lower_ = MatrixField(chart, r);
    for (std::size_t p = 0; p < chart->points(); ++p) {
      Eigen::LLT<Mat> llt(Mat(inst.metric().matrix().mat(p)));
      lower_.mat(p) = llt.matrixL().toDenseMatrix();
    }
    for (const ScalarField& m : mode_basis(chart, opt.band))
      for (const Mat& g : hermitian_generators(r)) basis_.push_back(MatrixField::from_scalar(m, g));
  }

  std::size_t dimension() const { return basis_.size(); }

  MetricField metric(const std::vector<double>& c) const {
    MatrixField s(inst_.chart(), inst_.rank());
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0.0) s += cplx(c[k]) * basis_[k];
    MatrixField h = lower_ * hermitian_exp(s) * lower_.adjoint();
    MatrixField sym = h + h.adjoint();
    sym *= 0.5;
    return MetricField(std::move(sym));
  }

  Evaluation evaluate(const std::vector<double>& c) const {
    const HiggsInstance x = inst_.with_metric(metric(c));
    const HSCurvature hs = hs_curvature(x);
    Evaluation e;
    const double n20 = std::max(0.0, norm_squared(hs.d_prime_phi, x.metric()));
    const double n11 = std::max(0.0, norm_squared(hs.f11, x.metric()));
    e.parallel = std::sqrt(n20);
    e.curvature = std::sqrt(n11);
    e.value = opt_.target == FlowTarget::H ? n20 + n11 : kobayashi_value(x);
    return e;
  }

  std::vector<double> gradient(const std::vector<double>& c) const {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(c.size());
    std::vector<double> g(c.size(), 0.0);
    const double eps = opt_.fd_epsilon;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < m; ++k) {
      std::vector<double> plus = c, minus = c;
      plus[k] += eps;
      minus[k] -= eps;
      g[k] = (evaluate(plus).value - evaluate(minus).value) / (2.0 * eps);
    }
    return g;
  }

 private:
  const HiggsInstance& inst_;
  FlowOptions opt_;
  MatrixField lower_;
  std::vector<MatrixField> basis_;
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

FlowResult flow_minimize(const HiggsInstance& inst, const FlowOptions& opt) {
  if (opt.steps < 0) throw InvalidArgument("flow_minimize: steps must be non-negative");
  if (!(opt.step_size > 0.0)) throw InvalidArgument("flow_minimize: step_size must be positive");
  if (opt.band < 0) throw InvalidArgument("flow_minimize: band must be non-negative");

  const FlowProblem prob(inst, opt);
  std::vector<double> c(prob.dimension(), 0.0);
  Evaluation cur = prob.evaluate(c);
  FunctionalReport rep;
  rep.name = opt.target == FlowTarget::H ? "flow_H" : "flow_J";
  rep.trace.push_back({0, cur.value, 0.0, cur.parallel, cur.curvature});
  const double initial = cur.value;

  double step = opt.step_size;
  int accepted = 0;
  std::string status = "max_steps";
  for (int it = 0; it < opt.steps; ++it) {
    if (cur.value <= opt.value_tol) {
      status = "converged";
      break;
    }
    const std::vector<double> g = prob.gradient(c);
    const double gg = norm2(g);
    if (std::sqrt(gg) <= opt.gradient_tol) {
      status = "stationary";
      break;
    }
    bool ok = false;
    for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
      std::vector<double> trial = c;
      for (std::size_t k = 0; k < c.size(); ++k) trial[k] -= step * g[k];
      const Evaluation e = prob.evaluate(trial);
      if (e.value <= cur.value - 1e-4 * step * gg) {
        c = std::move(trial);
        cur = e;
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) {
      status = "line_search_failed";
      break;
    }
    ++accepted;
    rep.trace.push_back({accepted, cur.value, step, cur.parallel, cur.curvature});
    step *= 2.0;
  }
  if (status == "max_steps" && cur.value <= opt.value_tol) status = "converged";

  rep.status = status;
  rep.set("initial_value", initial);
  rep.set("final_value", cur.value);
  rep.set("final_parallel_residual", cur.parallel);
  rep.set("final_curvature_residual", cur.curvature);
  rep.set("accepted_steps", accepted);
  rep.set("parameters", static_cast<double>(prob.dimension()));

  // Random probes around the final point: none should fall below the final value by more than
  // the finite-difference noise when the flow has reached a minimum.
  std::mt19937_64 eng(sub_seed(opt.seed, 77));
  double probe_min = INFINITY;
  const int probes = 8;
  for (int k = 0; k < probes; ++k) {
    std::vector<double> d(c.size());
    for (double& x : d) x = unit_uniform(eng());
    const double scale = 1e-3 / std::sqrt(std::max(norm2(d), 1e-300));
    std::vector<double> t = c;
    for (std::size_t j = 0; j < c.size(); ++j) t[j] += scale * d[j];
    probe_min = std::min(probe_min, prob.evaluate(t).value);
  }
  rep.set("min_probe_value", probe_min);

  if (accepted == 0) return FlowResult{inst, std::move(rep), 0};
  return FlowResult{inst.with_metric(prob.metric(c)), std::move(rep), accepted};
}

}  // namespace kl
