#include "kahlerlab/higgs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kahlerlab/error.hpp"

namespace kl {

namespace {

MonomialKey holo_key(int n, int a) { return make_key(n, {a}, {}); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Coefficient of the top form divided by the coefficient of omega^n/n!.
MatrixField top_density(const EndForm& top) {
  const int n = top.n();
  MatrixField out(top.chart(), top.rank());
  if (const MatrixField* m = top.find(top_key(n))) {
    out = *m;
    out *= 1.0 / volume_coefficient(n);
  }
  return out;
}

}  // namespace

HiggsCheck check_higgs(const EndForm& phi, HiggsTolerances tol, const EndForm* a01) {
  if (phi.p() != 1 || phi.q() != 0) throw InvalidArgument("check_higgs: Higgs field must be a (1,0)-form");
  HiggsCheck rep;
  rep.tolerances = tol;
  EndForm dphi = d_double_prime(phi);
  if (a01) dphi += commutator(*a01, phi);
  rep.holomorphy_norm = frobenius_norm(dphi);
  const int n = phi.n();
  double acc = 0.0;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const MatrixField c = commutator(phi.coefficient(holo_key(n, a)), phi.coefficient(holo_key(n, b)));
      const double v = frobenius_norm(c);
      rep.commutator_norms.emplace_back("[" + std::to_string(a) + "," + std::to_string(b) + "]", v);
      acc += v * v;
    }
  rep.wedge_norm = std::sqrt(acc);
  return rep;
}

ChernData chern_connection_curvature(const MetricField& h) {
  const int n = h.chart()->n();
  const int r = h.rank();
  ChernData out{EndForm(h.chart(), r, 1, 0), EndForm(h.chart(), r, 1, 1)};
  if (h.is_identity()) return out;
  const std::vector<MatrixField> dk = d_holo_all(h.matrix());
  for (int a = 1; a <= n; ++a) out.connection.add(holo_key(n, a), h.inverse() * dk[a - 1]);
  // On the trivialized bundle d'A + A^A has no (1,1) part, so F^{1,1} = d''A.
  out.curvature = d_double_prime(out.connection);
  return out;
}

HiggsInstance::HiggsInstance(MetricField h, EndForm phi, std::optional<EndForm> synthetic_curvature,
                             std::optional<SyntheticConnection> synthetic_connection, HiggsTolerances tol)
    : h_(std::move(h)), phi_(std::move(phi)), tol_(tol), given_curvature_(std::move(synthetic_curvature)) {
  require_same_chart(h_.chart(), phi_.chart(), "HiggsInstance");
  if (phi_.rank() != h_.rank()) throw InvalidArgument("HiggsInstance: Higgs field rank differs from metric rank");
  if (phi_.p() != 1 || phi_.q() != 0) throw InvalidArgument("HiggsInstance: Higgs field must be a (1,0)-form");
  if (given_curvature_) {
    const EndForm& f = *given_curvature_;
    require_same_chart(h_.chart(), f.chart(), "HiggsInstance curvature");
    if (f.rank() != rank() || f.p() != 1 || f.q() != 1)
      throw InvalidArgument("HiggsInstance: synthetic curvature must be a (1,1)-form of the bundle rank");
    synthetic_curvature_ = true;
  }
  if (synthetic_connection) {
    const auto& c = *synthetic_connection;
    require_same_chart(h_.chart(), c.a10.chart(), "HiggsInstance connection");
    require_same_chart(h_.chart(), c.a01.chart(), "HiggsInstance connection");
    if (c.a10.rank() != rank() || c.a01.rank() != rank() || c.a10.p() != 1 || c.a10.q() != 0 ||
        c.a01.p() != 0 || c.a01.q() != 1)
      throw InvalidArgument("HiggsInstance: synthetic connection must be (1,0) and (0,1) parts of the bundle rank");
    a10_ = c.a10;
    a01_ = c.a01;
    synthetic_connection_ = true;
  }
  check_ = check_higgs(phi_, tol_, synthetic_connection_ ? &a01_ : nullptr);
  if (!check_.pass())
    throw ValidationError("HiggsInstance: invalid Higgs field (holomorphy " + fmt(check_.holomorphy_norm) +
                          ", wedge " + fmt(check_.wedge_norm) + ")");
  derive_geometry();
}

void HiggsInstance::derive_geometry() {
  if (synthetic_connection_) {
    if (given_curvature_) {
      f_ = *given_curvature_;
    } else {
      f_ = d_prime(a01_) + d_double_prime(a10_);
      f_ += wedge_end(a10_, a01_);
      f_ += wedge_end(a01_, a10_);
    }
  } else {
    ChernData cd = chern_connection_curvature(h_);
    a10_ = std::move(cd.connection);
    a01_ = EndForm(chart(), rank(), 0, 1);
    f_ = given_curvature_ ? *given_curvature_ : std::move(cd.curvature);
  }
  phibar_ = hermitian_conjugate(phi_, h_);
}

HiggsInstance HiggsInstance::with_metric(MetricField h) const {
  require_same_chart(chart(), h.chart(), "HiggsInstance::with_metric");
  if (h.rank() != rank()) throw InvalidArgument("HiggsInstance::with_metric: rank mismatch");
  HiggsInstance out = *this;
  out.h_ = std::move(h);
  out.derive_geometry();
  return out;
}

HSCurvature hs_curvature(const HiggsInstance& inst) {
  const EndForm& phi = inst.higgs();
  const EndForm& phibar = inst.higgs_bar();
  HSCurvature hs;
  hs.d_prime_phi = d_prime(phi) + commutator(inst.connection(), phi);
  hs.commutator = commutator(phi, phibar);
  hs.f11 = inst.curvature() + hs.commutator;
  hs.d2_phibar = d_double_prime(phibar);
  if (inst.synthetic_connection()) hs.d2_phibar += commutator(inst.connection01(), phibar);
  return hs;
}

namespace {

MeanCurvature mean_routes(const EndForm& f11) {
  const int n = f11.n();
  const ChartPtr& chart = f11.chart();
  MeanCurvature mc{MatrixField(chart, f11.rank()), MatrixField(chart, f11.rank()), 0.0};
  double scale = 0.0;
  for (int a = 1; a <= n; ++a)
    if (const MatrixField* m = f11.find(make_key(n, {a}, {a}))) {
      mc.contraction += *m;
      scale = std::max(scale, m->max_abs());
    }
  // i n F ^ omega^{n-1} = K omega^n with omega^n = n! (omega^n/n!), omega^{n-1} = (n-1)! kahler_power(n-1).
  const EndForm top = wedge(f11, kahler_power(chart, n - 1));
  mc.wedge_route = top_density(top);
  mc.wedge_route *= cplx(0.0, 1.0);
  const double diff = (mc.contraction - mc.wedge_route).max_abs();
  mc.route_defect = scale > 0.0 ? diff / scale : diff;
  return mc;
}

MatrixField checked_mean(const EndForm& f11, double rel_tol) {
  MeanCurvature mc = mean_routes(f11);
  if (mc.route_defect > rel_tol)
    throw ConsistencyError("mean_curvature: contraction and wedge routes disagree (" + fmt(mc.route_defect) + ")");
  return std::move(mc.contraction);
}

}  // namespace

MeanCurvature mean_curvature_routes(const HiggsInstance& inst) { return mean_routes(hs_curvature(inst).f11); }

MatrixField mean_curvature(const HiggsInstance& inst, double rel_tol) {
  return checked_mean(hs_curvature(inst).f11, rel_tol);
}

MatrixField mean_curvature(const HSCurvature& hs, int rank, double rel_tol) {
  if (hs.f11.rank() != rank) throw InvalidArgument("mean_curvature: rank mismatch");
  return checked_mean(hs.f11, rel_tol);
}

MatrixField mean_curvature_hermitian_form(const HiggsInstance& inst) {
  return inst.metric().matrix() * mean_curvature(inst);
}

ChernForms chern_degree(const HiggsInstance& inst) {
  const int n = inst.n();
  const ChartPtr& chart = inst.chart();
  const double pi = std::numbers::pi;
  const EndForm& f = inst.curvature();
  ChernForms out;
  const ScalarForm trf = trace(f);
  out.c1 = cplx(0.0, 1.0 / (2.0 * pi)) * trf;
  double fact = 1.0;
  for (int k = 2; k < n; ++k) fact *= k;
  const ScalarForm omega_pow = fact * kahler_power(chart, n - 1);
  out.degree = integrate_top(wedge(out.c1, omega_pow)).real();
  if (n >= 2) {
    ScalarForm c2 = trace(wedge_end(f, f)) - wedge(trf, trf);
    c2 *= 1.0 / (8.0 * pi * pi);
    ScalarForm comb = 2.0 * c2 - wedge(out.c1, out.c1);
    comb *= 4.0 * pi * pi;
    out.topological_term = integrate_top(wedge(comb, kahler_power(chart, n - 2))).real();
    out.c2 = std::move(c2);
  }
  return out;
}

EinsteinReport einstein_report(const HiggsInstance& inst) {
  const int n = inst.n();
  const int r = inst.rank();
  const double vol = inst.chart()->volume();
  double fact_n1 = 1.0;
  for (int k = 2; k < n; ++k) fact_n1 *= k;
  const double fact_n = fact_n1 * n;
  EinsteinReport rep;
  rep.degree = chern_degree(inst).degree;
  rep.c = 2.0 * std::numbers::pi * rep.degree / (r * fact_n1 * vol);
  rep.integrated_trace = fact_n * integrate(mean_curvature(inst).trace()).real();
  rep.expected = rep.c * r * fact_n * vol;
  rep.rel_residual = std::abs(rep.integrated_trace - rep.expected) / (1.0 + std::abs(rep.expected));
  return rep;
}

double einstein_constant(const HiggsInstance& inst) { return einstein_report(inst).c; }

double hym_residual(const HiggsInstance& inst) {
  const int n = inst.n();
  const int r = inst.rank();
  MatrixField k = mean_curvature(inst);
  k -= MatrixField::constant(inst.chart(), einstein_constant(inst) * Mat::Identity(r, r));
  const EndForm e = EndForm::monomial(make_key(n, {}, {}), k);
  return std::sqrt(std::max(0.0, norm_squared(e, inst.metric())));
}

HiggsInstance build_hodge_system(ChartPtr chart, const std::vector<int>& block_ranks, const std::vector<Mat>& maps) {
  if (block_ranks.empty()) throw InvalidArgument("build_hodge_system: no blocks");
  if (maps.size() + 1 != block_ranks.size())
    throw InvalidArgument("build_hodge_system: need one map between each pair of consecutive blocks");
  std::vector<int> offset(block_ranks.size() + 1, 0);
  for (std::size_t k = 0; k < block_ranks.size(); ++k) {
    if (block_ranks[k] < 1) throw InvalidArgument("build_hodge_system: block ranks must be positive");
    offset[k + 1] = offset[k] + block_ranks[k];
  }
  const int r = offset.back();
  Mat big = Mat::Zero(r, r);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].rows() != block_ranks[k + 1] || maps[k].cols() != block_ranks[k])
      throw InvalidArgument("build_hodge_system: map " + std::to_string(k) + " has the wrong shape");
    big.block(offset[k + 1], offset[k], block_ranks[k + 1], block_ranks[k]) = maps[k];
  }
  for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
    const double comp = (maps[k + 1] * maps[k]).norm();
    if (comp > 1e-12 * (1.0 + maps[k + 1].norm() * maps[k].norm()))
      throw InvalidArgument("build_hodge_system: consecutive maps do not compose to zero (map " + std::to_string(k) +
                            ")");
  }
  const int n = chart->n();
  EndForm phi(chart, r, 1, 0);
  phi.add(holo_key(n, 1), MatrixField::constant(chart, big));
  return HiggsInstance(MetricField::identity(chart, r), std::move(phi));
}

std::vector<Mat> contraction_matrices(int n, const MultiIndex& lambda) {
  if (lambda.n() != n) throw InvalidArgument("contraction: lambda has the wrong dimension");
  if (lambda.size() % 2 == 0) throw InvalidArgument("contraction: lambda must have odd degree");
  if (n > 4) throw InvalidArgument("contraction: exterior algebra rank exceeds the supported bundle rank");
  const std::vector<MultiIndex> basis = all_multi_indices(n);
  const int r = static_cast<int>(basis.size());
  auto index_of = [&](const MultiIndex& m) {
    for (int i = 0; i < r; ++i)
      if (basis[i] == m) return i;
    throw InvalidArgument("contraction: basis lookup failed");
  };
  std::vector<Mat> out;
  for (int a = 1; a <= n; ++a) {
    Mat m = Mat::Zero(r, r);
    const auto& s = lambda.entries();
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
      if (s[pos] != a) continue;
      // iota_{e_a} theta^S = (-1)^pos theta^{S minus a}
      std::vector<int> rest;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != pos) rest.push_back(s[j]);
      const int contract_sign = (pos % 2 == 0) ? 1 : -1;
      for (int col = 0; col < r; ++col) {
        std::vector<int> seq = rest;
        seq.insert(seq.end(), basis[col].entries().begin(), basis[col].entries().end());
        const int sg = sort_sign(seq);
        if (sg == 0) continue;
        std::sort(seq.begin(), seq.end());
        m(index_of(MultiIndex(n, seq)), col) += double(contract_sign * sg);
      }
    }
    out.push_back(m);
  }
  return out;
}

HiggsInstance build_contraction(ChartPtr chart, const MultiIndex& lambda) {
  const int n = chart->n();
  const std::vector<Mat> mats = contraction_matrices(n, lambda);
  const int r = static_cast<int>(mats.front().rows());
  EndForm phi(chart, r, 1, 0);
  for (int a = 1; a <= n; ++a)
    if (mats[a - 1].norm() > 0.0) phi.add(holo_key(n, a), MatrixField::constant(chart, mats[a - 1]));
  return HiggsInstance(MetricField::identity(chart, r), std::move(phi));
}

}  // namespace kl
