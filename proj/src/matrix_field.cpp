#include "kahlerlab/matrix_field.hpp"

#include "kahlerlab/error.hpp"
#include "kahlerlab/kernels.hpp"
#include "kahlerlab/spectral.hpp"

namespace kl {

MatrixField::MatrixField(ChartPtr chart, int rank) : chart_(std::move(chart)), rank_(rank) {
  if (!chart_) throw InvalidArgument("MatrixField: missing chart");
  if (rank < 1 || rank > kernels::kMaxRank)
    throw InvalidArgument("MatrixField: rank must be in 1.." + std::to_string(kernels::kMaxRank));
  data_.assign(chart_->points() * stride(), cplx(0.0));
}

MatrixField MatrixField::constant(ChartPtr chart, const Mat& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("MatrixField::constant: matrix not square");
  MatrixField out(std::move(chart), static_cast<int>(m.rows()));
  for (std::size_t p = 0; p < out.points(); ++p) out.mat(p) = m;
  return out;
}

MatrixField MatrixField::identity(ChartPtr chart, int rank) {
  return constant(std::move(chart), Mat::Identity(rank, rank));
}

MatrixField MatrixField::from_scalar(const ScalarField& f, const Mat& m) {
  MatrixField out = constant(f.chart(), m);
  return out.scale_by(f);
}

ScalarField MatrixField::entry(int i, int j) const {
  ScalarField out(chart_);
  for (std::size_t p = 0; p < points(); ++p) out[p] = at(p)[i * rank_ + j];
  return out;
}

void MatrixField::set_entry(int i, int j, const ScalarField& f) {
  require_same_chart(chart_, f.chart(), "MatrixField::set_entry");
  for (std::size_t p = 0; p < points(); ++p) at(p)[i * rank_ + j] = f[p];
}

MatrixField& MatrixField::operator+=(const MatrixField& o) {
  require_compatible(*this, o, "MatrixField +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

MatrixField& MatrixField::operator-=(const MatrixField& o) {
  require_compatible(*this, o, "MatrixField -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

MatrixField& MatrixField::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

MatrixField& MatrixField::scale_by(const ScalarField& f) {
  require_same_chart(chart_, f.chart(), "MatrixField::scale_by");
  const std::size_t s = stride();
  for (std::size_t p = 0; p < points(); ++p)
    for (std::size_t q = 0; q < s; ++q) data_[p * s + q] *= f[p];
  return *this;
}

MatrixField MatrixField::adjoint() const {
  MatrixField out(chart_, rank_);
  kernels::adjoint(data(), out.data(), points(), rank_);
  return out;
}

ScalarField MatrixField::trace() const {
  ScalarField out(chart_);
  kernels::trace(data(), out.data(), points(), rank_);
  return out;
}

MatrixField MatrixField::inverse() const {
  MatrixField out(chart_, rank_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(points()); ++p) {
    Eigen::PartialPivLU<Mat> lu(Mat(mat(p)));
    out.mat(p) = lu.inverse();
  }
  return out;
}

double MatrixField::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double MatrixField::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t p = 0; p < points(); ++p)
    m = std::max(m, (mat(p) - mat(p).adjoint()).cwiseAbs().maxCoeff());
  return m;
}

void require_compatible(const MatrixField& a, const MatrixField& b, const char* where) {
  require_same_chart(a.chart(), b.chart(), where);
  if (a.rank() != b.rank()) throw InvalidArgument(std::string(where) + ": rank mismatch");
}

MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }
MatrixField operator*(cplx s, MatrixField a) { return a *= s; }

MatrixField operator*(const MatrixField& a, const MatrixField& b) {
  require_compatible(a, b, "MatrixField product");
  MatrixField out(a.chart(), a.rank());
  kernels::matmul(a.data(), b.data(), out.data(), a.points(), a.rank());
  return out;
}

MatrixField commutator(const MatrixField& a, const MatrixField& b) {
  require_compatible(a, b, "commutator");
  MatrixField out(a.chart(), a.rank());
  kernels::matmul(a.data(), b.data(), out.data(), a.points(), a.rank());
  kernels::matmul_acc(b.data(), a.data(), out.data(), a.points(), a.rank(), -1.0);
  return out;
}

MatrixField h_adjoint(const MatrixField& kinv, const MatrixField& a, const MatrixField& k) {
  require_compatible(kinv, a, "h_adjoint");
  require_compatible(k, a, "h_adjoint");
  MatrixField out(a.chart(), a.rank());
  kernels::h_adjoint(kinv.data(), a.data(), k.data(), out.data(), a.points(), a.rank());
  return out;
}

ScalarField trace_product(const MatrixField& a, const MatrixField& b) {
  require_compatible(a, b, "trace_product");
  ScalarField out(a.chart());
  kernels::trace_product(a.data(), b.data(), out.data(), a.points(), a.rank());
  return out;
}

namespace {

std::vector<MatrixField> derive(const MatrixField& f, const std::vector<spectral::Derivative>& ds) {
  std::vector<MatrixField> outs;
  std::vector<cplx*> ptrs;
  outs.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) outs.emplace_back(f.chart(), f.rank());
  for (auto& o : outs) ptrs.push_back(o.data());
  spectral::apply(*f.chart(), f.data(), f.stride(), ds, ptrs);
  return outs;
}

std::vector<MatrixField> derive_all(const MatrixField& f, spectral::Kind kind) {
  std::vector<spectral::Derivative> ds;
  for (int a = 1; a <= f.chart()->n(); ++a) ds.push_back({kind, a});
  return derive(f, ds);
}

}  // namespace

MatrixField d_real(const MatrixField& f, int dir) {
  return std::move(derive(f, {{spectral::Kind::Real, dir}})[0]);
}
MatrixField d_holo(const MatrixField& f, int axis) {
  return std::move(derive(f, {{spectral::Kind::Holo, axis}})[0]);
}
MatrixField d_anti(const MatrixField& f, int axis) {
  return std::move(derive(f, {{spectral::Kind::Anti, axis}})[0]);
}
std::vector<MatrixField> d_holo_all(const MatrixField& f) { return derive_all(f, spectral::Kind::Holo); }
std::vector<MatrixField> d_anti_all(const MatrixField& f) { return derive_all(f, spectral::Kind::Anti); }

MatrixField hermitian_exp(const MatrixField& s) {
  MatrixField out(s.chart(), s.rank());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(s.points()); ++p) {
    Mat m = s.mat(p);
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    const Eigen::VectorXd ev = es.eigenvalues().array().exp();
    out.mat(p) = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  }
  return out;
}

}  // namespace kl
