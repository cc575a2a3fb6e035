#include "kahlerlab/hitchin2d.hpp"

#include <cmath>
#include <sstream>

#include "kahlerlab/error.hpp"
#include "kahlerlab/sampling.hpp"

namespace kl {

namespace {

constexpr double kSu2Tol = 1e-13;
const cplx I(0.0, 1.0);

std::array<Mat, 3> pauli_su2() {
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, -I, I, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  return {I * s1, I * s2, I * s3};
}

void require_su2(const MatrixField& m, const char* name) {
  if (m.rank() != 2) throw InvalidArgument(std::string("SU2Config: ") + name + " must be 2x2");
  const double d = su2_defect(m);
  if (d > kSu2Tol * std::max(1.0, m.max_abs())) {
    std::ostringstream os;
    os << "SU2Config: " << name << " is not in su(2) (defect " << d << ")";
    throw ValidationError(os.str());
  }
}

MatrixField d1(const MatrixField& m) { return d_real(m, 0); }
MatrixField d2(const MatrixField& m) { return d_real(m, 1); }

}  // namespace

double su2_defect(const MatrixField& m) {
  double worst = 0.0;
  for (std::size_t p = 0; p < m.points(); ++p) {
    const auto x = m.mat(p);
    worst = std::max(worst, (x + x.adjoint()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(x.trace()));
  }
  return worst;
}

MatrixField su2_project(const MatrixField& m) {
  MatrixField out(m.chart(), m.rank());
  const int r = m.rank();
  for (std::size_t p = 0; p < m.points(); ++p) {
    const auto x = m.mat(p);
    RowMat a = 0.5 * (x - x.adjoint());
    a -= (a.trace() / double(r)) * RowMat::Identity(r, r);
    out.mat(p) = a;
  }
  return out;
}

SU2Config::SU2Config(MatrixField a1, MatrixField a2, MatrixField phi1, MatrixField phi2)
    : a1_(std::move(a1)), a2_(std::move(a2)), phi1_(std::move(phi1)), phi2_(std::move(phi2)) {
  if (a1_.chart()->n() != 1) throw InvalidArgument("SU2Config: the lattice must be two-dimensional");
  require_compatible(a1_, a2_, "SU2Config");
  require_compatible(a1_, phi1_, "SU2Config");
  require_compatible(a1_, phi2_, "SU2Config");
  require_su2(a1_, "A1");
  require_su2(a2_, "A2");
  require_su2(phi1_, "phi1");
  require_su2(phi2_, "phi2");
}

SU2Config SU2Config::zero(ChartPtr chart) {
  MatrixField z(std::move(chart), 2);
  return SU2Config(z, z, z, z);
}

MatrixField SU2Config::phi() const { return phi1_ - I * phi2_; }
MatrixField SU2Config::a_zbar() const { return a1_ + I * a2_; }

FieldStrength4 field_strength_4d(const SU2Config& cfg) {
  const std::array<const MatrixField*, 4> a{&cfg.a1(), &cfg.a2(), &cfg.phi1(), &cfg.phi2()};
  // Only x^1 and x^2 derivatives survive the reduction.
  std::array<std::array<MatrixField, 2>, 4> da;
  for (int j = 0; j < 4; ++j) {
    da[j][0] = d1(*a[j]);
    da[j][1] = d2(*a[j]);
  }
  FieldStrength4 f;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      MatrixField m = commutator(*a[i], *a[j]);
      if (i < 2) m += da[j][i];
      if (j < 2) m -= da[i][j];
      f[i][j] = std::move(m);
    }
  return f;
}

MatrixField field_strength(const SU2Config& cfg) {
  return d1(cfg.a2()) - d2(cfg.a1()) + commutator(cfg.a1(), cfg.a2());
}

MatrixField covariant(const SU2Config& cfg, int i, const MatrixField& x) {
  if (i == 1) return d1(x) + commutator(cfg.a1(), x);
  if (i == 2) return d2(x) + commutator(cfg.a2(), x);
  throw InvalidArgument("covariant: direction must be 1 or 2");
}

double l2_norm(const MatrixField& m) { return frobenius_norm(m); }

std::array<double, 3> sdym_residual(const SU2Config& cfg) {
  const FieldStrength4 f = field_strength_4d(cfg);
  return {l2_norm(f[0][1] - f[2][3]), l2_norm(f[0][2] - f[3][1]), l2_norm(f[0][3] - f[1][2])};
}

std::array<double, 3> reduced_sdym_residual(const SU2Config& cfg) {
  const MatrixField& p1 = cfg.phi1();
  const MatrixField& p2 = cfg.phi2();
  const MatrixField r1 = field_strength(cfg) - commutator(p1, p2);
  // [D1, phi1] = [phi2, D2] means D1 phi1 = -D2 phi2.
  const MatrixField r2 = covariant(cfg, 1, p1) + covariant(cfg, 2, p2);
  const MatrixField r3 = covariant(cfg, 1, p2) - covariant(cfg, 2, p1);
  return {l2_norm(r1), l2_norm(r2), l2_norm(r3)};
}

const char* to_string(HitchinForm f) {
  switch (f) {
    case HitchinForm::Real: return "real";
    case HitchinForm::Complex: return "complex";
    case HitchinForm::Forms: return "forms";
    case HitchinForm::KW: return "kw";
  }
  return "?";
}

namespace {

std::vector<double> real_residual(const SU2Config& cfg) {
  const MatrixField phi = cfg.phi();
  const MatrixField eq1 = field_strength(cfg) - (0.5 * I) * commutator(phi, phi.adjoint());
  const MatrixField eq2 = covariant(cfg, 1, phi) + I * covariant(cfg, 2, phi);
  return {l2_norm(eq1), l2_norm(eq2)};
}

// D_zbar X = (d_1 + i d_2) X + [A_zbar, X]
MatrixField d_zbar_cov(const SU2Config& cfg, const MatrixField& x) {
  return d1(x) + I * d2(x) + commutator(cfg.a_zbar(), x);
}

std::vector<double> complex_residual(const SU2Config& cfg) {
  const MatrixField phi = cfg.phi();
  const MatrixField fzz = (0.5 * I) * field_strength(cfg);
  const MatrixField eq1 = fzz + 0.25 * commutator(phi, phi.adjoint());
  return {l2_norm(eq1), l2_norm(d_zbar_cov(cfg, phi))};
}

std::vector<double> forms_residual(const SU2Config& cfg) {
  const MatrixField phi = cfg.phi();
  const EndForm phic = EndForm::monomial(make_key(1, {1}, {}), 0.5 * phi);
  const EndForm phic_star = EndForm::monomial(make_key(1, {}, {1}), 0.5 * phi.adjoint());
  const EndForm f = EndForm::monomial(make_key(1, {1}, {1}), (0.5 * I) * field_strength(cfg));
  const EndForm a01 = EndForm::monomial(make_key(1, {}, {1}), 0.5 * cfg.a_zbar());
  const EndForm eq1 = f + commutator(phic, phic_star);
  const EndForm eq2 = d_double_prime(phic) + commutator(a01, phic);
  return {frobenius_norm(eq1), frobenius_norm(eq2)};
}

std::vector<double> kw_residual(const SU2Config& cfg) {
  const MatrixField& p1 = cfg.phi1();
  const MatrixField& p2 = cfg.phi2();
  // Phi ^ Phi = (phi1 phi2 - phi2 phi1) dx^1 ^ dx^2
  const MatrixField eq1 = field_strength(cfg) - (p1 * p2 - p2 * p1);
  // D Phi = (D1 phi2 - D2 phi1) dx^1 ^ dx^2
  const MatrixField eq2 = covariant(cfg, 1, p2) - covariant(cfg, 2, p1);
  // *Phi = phi1 dx^2 - phi2 dx^1, D*Phi = (D1 phi1 + D2 phi2) dx^1 ^ dx^2, and * of that.
  const MatrixField eq3 = covariant(cfg, 1, p1) + covariant(cfg, 2, p2);
  return {l2_norm(eq1), l2_norm(eq2), l2_norm(eq3)};
}

}  // namespace

std::vector<double> hitchin_residual(const SU2Config& cfg, HitchinForm form) {
  switch (form) {
    case HitchinForm::Real: return real_residual(cfg);
    case HitchinForm::Complex: return complex_residual(cfg);
    case HitchinForm::Forms: return forms_residual(cfg);
    case HitchinForm::KW: return kw_residual(cfg);
  }
  throw InvalidArgument("hitchin_residual: unknown formulation");
}

DetHolomorphy det_holomorphy(const SU2Config& cfg) {
  const MatrixField phi = cfg.phi();
  ScalarField det(cfg.chart());
  double cmax = 0.0;
  for (std::size_t p = 0; p < phi.points(); ++p) {
    const auto m = phi.mat(p);
    det[p] = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    // d det phi = tr(adj(phi) D_zbar phi); adj(phi) has the Frobenius norm of phi for 2x2.
    cmax = std::max(cmax, m.norm());
  }
  const ScalarField ddet = d_real(det, 0) + I * d_real(det, 1);
  DetHolomorphy out;
  out.dzbar_phi = l2_norm(d_zbar_cov(cfg, phi));
  ScalarField sq(cfg.chart());
  for (std::size_t p = 0; p < sq.size(); ++p) sq[p] = std::norm(ddet[p]);
  out.dzbar_det = std::sqrt(std::max(0.0, integrate(sq).real()));
  out.constant = cmax;
  return out;
}

HiggsInstance to_higgs_instance(const SU2Config& cfg, HiggsTolerances tol) {
  const ChartPtr& chart = cfg.chart();
  const MatrixField phi = cfg.phi();
  EndForm higgs = EndForm::monomial(make_key(1, {1}, {}), 0.5 * phi);
  SyntheticConnection conn{EndForm::monomial(make_key(1, {1}, {}), 0.5 * (cfg.a1() - I * cfg.a2())),
                           EndForm::monomial(make_key(1, {}, {1}), 0.5 * cfg.a_zbar())};
  EndForm f = EndForm::monomial(make_key(1, {1}, {1}), (0.5 * I) * field_strength(cfg));
  const HiggsCheck chk = check_higgs(higgs, tol, &conn.a01);
  if (!chk.holomorphic()) {
    const DetHolomorphy dh = det_holomorphy(cfg);
    std::ostringstream os;
    os << "to_higgs_instance: Higgs field is not holomorphic (||D''Phi_c|| = " << chk.holomorphy_norm
       << ", ||D_zbar phi|| = " << dh.dzbar_phi << ", ||d_zbar det phi|| = " << dh.dzbar_det << ")";
    throw ValidationError(os.str());
  }
  return HiggsInstance(MetricField::identity(chart, 2), std::move(higgs), std::move(f), std::move(conn), tol);
}

namespace {

MatrixField random_su2_field(const ChartPtr& chart, std::uint64_t seed, int band, double amplitude) {
  const auto gens = pauli_su2();
  MatrixField m(chart, 2);
  for (int k = 0; k < 3; ++k)
    m += MatrixField::from_scalar(random_real_field(chart, sub_seed(seed, k), band, amplitude), gens[k]);
  return su2_project(m);
}

}  // namespace

Mat random_su2_matrix(std::uint64_t seed) {
  const auto gens = pauli_su2();
  const Mat c = random_matrix(3, 1, seed);
  Mat m = Mat::Zero(2, 2);
  for (int k = 0; k < 3; ++k) m += c(k, 0).real() * gens[k];
  return m;
}

SU2Config random_su2_config(ChartPtr chart, std::uint64_t seed, int band, double amplitude) {
  return SU2Config(random_su2_field(chart, sub_seed(seed, 1), band, amplitude),
                   random_su2_field(chart, sub_seed(seed, 2), band, amplitude),
                   random_su2_field(chart, sub_seed(seed, 3), band, amplitude),
                   random_su2_field(chart, sub_seed(seed, 4), band, amplitude));
}

SU2Config constant_commuting_config(ChartPtr chart, std::uint64_t seed) {
  // Both Higgs components are multiples of one generator, so they commute.
  const Mat g = random_su2_matrix(seed);
  const Mat c = random_matrix(2, 1, sub_seed(seed, 1));
  MatrixField zero(chart, 2);
  return SU2Config(zero, zero, MatrixField::constant(chart, c(0, 0).real() * g),
                   MatrixField::constant(chart, c(1, 0).real() * g));
}

SU2Config gauge_transform(const SU2Config& cfg, const Mat& u) {
  const MatrixField uf = MatrixField::constant(cfg.chart(), u);
  const MatrixField ud = MatrixField::constant(cfg.chart(), u.adjoint());
  auto conj = [&](const MatrixField& m) { return su2_project(uf * m * ud); };
  return SU2Config(conj(cfg.a1()), conj(cfg.a2()), conj(cfg.phi1()), conj(cfg.phi2()));
}

SU2Config complex_gauge_solution(ChartPtr chart, std::uint64_t seed, int band, double amplitude) {
  // X traceless complex: X = sum_k (a_k + i b_k) sigma_k with real band-limited a_k, b_k.
  const auto gens = pauli_su2();
  MatrixField x(chart, 2);
  for (int k = 0; k < 3; ++k) {
    const ScalarField a = random_real_field(chart, sub_seed(seed, 10 + k), band, amplitude);
    const ScalarField b = random_real_field(chart, sub_seed(seed, 20 + k), band, amplitude);
    x += MatrixField::from_scalar(a + I * b, -I * gens[k]);
  }
  // exp(X) = cosh(mu) I + sinh(mu)/mu X with mu^2 = -det X for traceless 2x2 X.
  MatrixField g(chart, 2), ginv(chart, 2);
  for (std::size_t p = 0; p < x.points(); ++p) {
    const auto m = x.mat(p);
    const cplx mu2 = -(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    const cplx mu = std::sqrt(mu2);
    const cplx sh = std::abs(mu) < 1e-8 ? 1.0 + mu2 / 6.0 : std::sinh(mu) / mu;
    const RowMat e = std::cosh(mu) * RowMat::Identity(2, 2) + sh * RowMat(m);
    g.mat(p) = e;
    // det exp(X) = 1, so the inverse is the adjugate.
    RowMat inv(2, 2);
    inv << e(1, 1), -e(0, 1), -e(1, 0), e(0, 0);
    ginv.mat(p) = inv;
  }
  const Mat phi0 = random_su2_matrix(sub_seed(seed, 30)) + I * random_su2_matrix(sub_seed(seed, 31));
  const MatrixField phi = g * MatrixField::constant(chart, phi0) * ginv;
  MatrixField dg = d_real(g, 0) + I * d_real(g, 1);
  const MatrixField azbar = -1.0 * (dg * ginv);
  const MatrixField azbar_dag = azbar.adjoint();
  MatrixField a1 = 0.5 * (azbar - azbar_dag);
  MatrixField a2 = (-0.5 * I) * (azbar + azbar_dag);
  MatrixField phi1 = 0.5 * (phi - phi.adjoint());
  MatrixField phi2 = (0.5 * I) * (phi + phi.adjoint());
  return SU2Config(su2_project(a1), su2_project(a2), su2_project(phi1), su2_project(phi2));
}

}  // namespace kl
