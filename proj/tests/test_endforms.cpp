#include <gtest/gtest.h>

#include "kahlerlab/endforms.hpp"
#include "kahlerlab/error.hpp"
#include "kahlerlab/sampling.hpp"
#include "test_util.hpp"

using namespace kl;
using kl::test::max_diff;

namespace {

// Pointwise (-1)^{pq} K^{-1} Psi^dagger K, written out with Eigen.
EndForm conjugate_oracle(const EndForm& psi, const MetricField& h) {
  EndForm out(psi.chart(), psi.rank(), psi.q(), psi.p());
  const double sign = (psi.p() * psi.q()) % 2 == 0 ? 1.0 : -1.0;
  for (const auto& [key, m] : psi.terms()) {
    MatrixField c(psi.chart(), psi.rank());
    for (std::size_t pt = 0; pt < c.points(); ++pt) {
      const Mat k = h.matrix().mat(pt);
      c.mat(pt) = sign * (k.inverse() * Mat(m.mat(pt)).adjoint() * k);
    }
    out.add(MonomialKey{key.anti, key.holo}, c);
  }
  return out;
}

EndForm conjugate_frame(const EndForm& f, const Mat& u) {
  EndForm out(f.chart(), f.rank(), f.p(), f.q());
  const MatrixField uf = MatrixField::constant(f.chart(), u);
  const MatrixField ud = MatrixField::constant(f.chart(), u.adjoint());
  for (const auto& [key, m] : f.terms()) out.add(key, uf * m * ud);
  return out;
}

double sign_pq(int p, int q) { return (p * q) % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

TEST(MetricFieldTest, Validation) {
  const ChartPtr c = make_chart(1, 4);
  Mat nh(2, 2);
  nh << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(MetricField(MatrixField::constant(c, nh)), ValidationError);
  Mat neg(2, 2);
  neg << 1.0, 0.0, 0.0, -1.0;
  EXPECT_THROW(MetricField(MatrixField::constant(c, neg)), ValidationError);
  const MetricField h = random_metric(c, 3, 4, 1, 0.4);
  EXPECT_LT(h.hermiticity_defect(), 1e-13);
  EXPECT_GT(h.min_eigenvalue(), 0.0);
  EXPECT_LT(h.inverse_defect(), 1e-12);
  // h_{i kbar} h^{j kbar} contracted by hand at one point.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 3; ++k) s += h.lower(5, i, k) * h.upper(5, j, k);
      EXPECT_NEAR(std::abs(s - cplx(i == j ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(Commutator, DegreeOneIsAnticommutator) {
  const ChartPtr c = make_chart(2, 4);
  const EndForm a = random_end_form(c, 2, 1, 0, 1, 1);
  const EndForm b = random_end_form(c, 2, 0, 1, 2, 1);
  EXPECT_LT(max_diff(commutator(a, b), wedge_end(a, b) + wedge_end(b, a)), 1e-14);
  EXPECT_LT(max_diff(commutator(a, a), 2.0 * wedge_end(a, a)), 1e-14);
}

TEST(Commutator, EvenDegreeIsOrdinary) {
  const ChartPtr c = make_chart(2, 4);
  const EndForm a = random_end_form(c, 2, 1, 1, 3, 1);
  const EndForm b = random_end_form(c, 2, 1, 0, 4, 1);
  EXPECT_LT(max_diff(commutator(a, b), wedge_end(a, b) - wedge_end(b, a)), 1e-14);
}

TEST(Commutator, AbelianOneFormsCommute) {
  const ChartPtr c = make_chart(2, 4);
  const EndForm a = random_end_form(c, 1, 1, 0, 5, 1);
  const EndForm b = random_end_form(c, 1, 1, 0, 6, 1);
  EXPECT_LT(commutator(a, b).max_abs(), 1e-14);
}

TEST(Commutator, RankMismatch) {
  const ChartPtr c = make_chart(1, 4);
  EXPECT_THROW(wedge_end(random_end_form(c, 1, 1, 0, 1, 1), random_end_form(c, 2, 0, 1, 1, 1)), InvalidArgument);
}

TEST(HermitianConjugate, IdentityMetricIsAdjoint) {
  const ChartPtr c = make_chart(2, 4);
  const MetricField id = MetricField::identity(c, 2);
  const EndForm phi = random_end_form(c, 2, 1, 0, 7, 1);
  const EndForm bar = hermitian_conjugate(phi, id);
  EXPECT_EQ(bar.p(), 0);
  EXPECT_EQ(bar.q(), 1);
  for (int b = 1; b <= 2; ++b)
    EXPECT_LT(max_diff(bar.coefficient(make_key(2, {}, {b})), phi.coefficient(make_key(2, {b}, {})).adjoint()), 1e-15);
}

TEST(HermitianConjugate, MatchesIndexFormulaOracle) {
  const ChartPtr c = make_chart(2, 4);
  const MetricField h = random_metric(c, 3, 8, 1, 0.4);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      const EndForm psi = random_end_form(c, 3, p, q, 30 + 3 * p + q, 1);
      const double scale = psi.max_abs();
      EXPECT_LT(max_diff(hermitian_conjugate(psi, h), conjugate_oracle(psi, h)), 1e-13 * scale);
      // Two conjugations amplify round-off by cond(K)^2.
      EXPECT_LT(max_diff(hermitian_conjugate(hermitian_conjugate(psi, h), h), psi), 1e-12 * scale);
    }
}

TEST(HermitianConjugate, ScalarMetricCancels) {
  const ChartPtr c = make_chart(2, 4);
  const ScalarField f = random_real_field(c, 9, 1);
  MatrixField k(c, 1);
  for (std::size_t i = 0; i < c->points(); ++i) k.at(i)[0] = std::exp(-f[i]);
  const MetricField h(k);
  const EndForm psi = random_end_form(c, 1, 1, 1, 10, 1);
  const EndForm bar = hermitian_conjugate(psi, h);
  for (const auto& [key, m] : psi.terms()) {
    const MatrixField got = bar.coefficient(MonomialKey{key.anti, key.holo});
    EXPECT_LT(max_diff(got, -1.0 * m.adjoint()), 1e-14);
  }
}

TEST(MatricialAdjoint, InvolutionAndKeyRelation) {
  const ChartPtr c = make_chart(2, 4);
  const EndForm psi = random_end_form(c, 2, 1, 2, 11, 1);
  EXPECT_EQ(max_diff(matricial_adjoint(matricial_adjoint(psi)), psi), 0.0);
  const EndForm herm = EndForm::monomial(make_key(2, {1}, {}), random_hermitian_field(c, 2, 3, 1, 1.0));
  EXPECT_EQ(max_diff(matricial_adjoint(herm), herm), 0.0);
  const EndForm bar = hermitian_conjugate(psi, MetricField::identity(c, 2));
  const EndForm dag = matricial_adjoint(psi);
  for (const auto& [key, m] : dag.terms())
    EXPECT_LT(max_diff(sign_pq(1, 2) * bar.coefficient(MonomialKey{key.anti, key.holo}), m), 1e-15);
}

TEST(BarStarH, RankOneIsScalarBarStar) {
  const ChartPtr c = make_chart(1, 4);
  const ScalarForm psi = random_scalar_form(c, 1, 0, 12, 1);
  const EndForm got = bar_star_h(EndForm::from_scalar(psi, 1), MetricField::identity(c, 1));
  const ScalarForm want = bar_star(psi);
  for (const auto& [key, f] : want.terms()) EXPECT_LT(max_diff(got.coefficient(key).entry(0, 0), f), 1e-15);
}

TEST(BarStarH, UnitaryRouteAgrees) {
  const ChartPtr c = make_chart(2, 4);
  const MetricField id = MetricField::identity(c, 2);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      const EndForm psi = random_end_form(c, 2, p, q, 50 + 3 * p + q, 1);
      EXPECT_LT(max_diff(bar_star_h(psi, id), bar_star_unitary(psi)), 1e-14);
    }
}

TEST(BarStarH, SelfPairingIsNonnegative) {
  const ChartPtr c = make_chart(2, 8);
  const MetricField h = random_metric(c, 2, 13, 1, 0.3);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      const EndForm psi = random_end_form(c, 2, p, q, 60 + 3 * p + q, 1);
      const cplx v = integrate_top(trace(wedge_end(psi, bar_star_h(psi, h))));
      EXPECT_GT(v.real(), 0.0);
      EXPECT_LT(std::abs(v.imag()), 1e-12 * v.real());
    }
}

TEST(TraceInner, RoutesAgreeAndHermitian) {
  for (int n = 1; n <= 2; ++n) {
    const ChartPtr c = make_chart(n, 8);
    for (int r = 1; r <= 3; ++r) {
      const MetricField h = random_metric(c, r, 70 + r, 1, 0.3);
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
          const EndForm a = random_end_form(c, r, p, q, 100 * r + 10 * p + q, 1);
          const EndForm b = random_end_form(c, r, p, q, 200 * r + 10 * p + q, 1);
          const TraceInnerRoutes routes = trace_inner_routes(a, b, h);
          EXPECT_LE(std::abs(routes.wedge_route - routes.local_route), 1e-10 * routes.scale);
          const cplx ab = trace_inner_global(a, b, h), ba = trace_inner_global(b, a, h);
          EXPECT_LT(std::abs(ab - std::conj(ba)), 1e-12 * (1.0 + std::abs(ab)));
          EXPECT_GT(norm_squared(a, h), 0.0);
          EXPECT_LT(max_diff(trace_inner_local_physics(a, b, h), trace_inner_local(a, b, h)), 1e-12);
        }
    }
  }
}

TEST(TraceInner, ZeroFormHasZeroNorm) {
  const ChartPtr c = make_chart(1, 4);
  EXPECT_EQ(norm_squared(EndForm(c, 2, 1, 0), MetricField::identity(c, 2)), 0.0);
}

TEST(TraceInner, RankOneIsScalarInner) {
  const ChartPtr c = make_chart(2, 8);
  const ScalarForm a = random_scalar_form(c, 1, 1, 3, 1);
  const ScalarForm b = random_scalar_form(c, 1, 1, 4, 1);
  const cplx s = inner_global(a, b);
  const cplx t = trace_inner_global(EndForm::from_scalar(a, 1), EndForm::from_scalar(b, 1), MetricField::identity(c, 1));
  EXPECT_LT(std::abs(s - t), 1e-13);
}

TEST(TraceInner, FrameCovariance) {
  const ChartPtr c = make_chart(2, 8);
  const int r = 3;
  const MetricField h = random_metric(c, r, 5, 1, 0.3);
  const EndForm a = random_end_form(c, r, 1, 1, 6, 1);
  const EndForm b = random_end_form(c, r, 1, 1, 7, 1);
  const Mat u = random_unitary(r, 8);
  const MatrixField uf = MatrixField::constant(c, u);
  const MatrixField ud = MatrixField::constant(c, u.adjoint());
  const MetricField hu(uf * h.matrix() * ud);
  const cplx v0 = trace_inner_global(a, b, h);
  const cplx v1 = trace_inner_global(conjugate_frame(a, u), conjugate_frame(b, u), hu);
  EXPECT_LT(std::abs(v0 - v1), 1e-12 * std::abs(v0));
}

TEST(TraceInner, CrossBidegreeIsZero) {
  const ChartPtr c = make_chart(1, 4);
  const MetricField id = MetricField::identity(c, 2);
  EXPECT_EQ(trace_inner_global(random_end_form(c, 2, 1, 0, 1, 1), random_end_form(c, 2, 0, 1, 2, 1), id), cplx(0.0));
}
