#pragma once

#include <Eigen/Dense>

#include "kahlerlab/lattice.hpp"

namespace kl {

using Mat = Eigen::MatrixXcd;
using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// An r x r complex matrix at every lattice point (point-major, row-major matrices).
class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(ChartPtr chart, int rank);
  static MatrixField constant(ChartPtr chart, const Mat& m);
  static MatrixField identity(ChartPtr chart, int rank);
  // f(x) * m at every point.
  static MatrixField from_scalar(const ScalarField& f, const Mat& m);

  const ChartPtr& chart() const { return chart_; }
  int rank() const { return rank_; }
  std::size_t points() const { return chart_->points(); }
  std::size_t stride() const { return static_cast<std::size_t>(rank_) * rank_; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  cplx* at(std::size_t p) { return data_.data() + p * stride(); }
  const cplx* at(std::size_t p) const { return data_.data() + p * stride(); }
  Eigen::Map<RowMat> mat(std::size_t p) { return {at(p), rank_, rank_}; }
  Eigen::Map<const RowMat> mat(std::size_t p) const { return {at(p), rank_, rank_}; }

  ScalarField entry(int i, int j) const;
  void set_entry(int i, int j, const ScalarField& f);

  MatrixField& operator+=(const MatrixField& o);
  MatrixField& operator-=(const MatrixField& o);
  MatrixField& operator*=(cplx s);
  MatrixField& scale_by(const ScalarField& f);

  MatrixField adjoint() const;
  ScalarField trace() const;
  MatrixField inverse() const;
  double max_abs() const;
  // Largest entry of M - M^dagger over the grid.
  double hermiticity_defect() const;

 private:
  ChartPtr chart_;
  int rank_ = 0;
  std::vector<cplx> data_;
};

void require_compatible(const MatrixField& a, const MatrixField& b, const char* where);

MatrixField operator+(MatrixField a, const MatrixField& b);
MatrixField operator-(MatrixField a, const MatrixField& b);
MatrixField operator*(cplx s, MatrixField a);
// Pointwise matrix product.
MatrixField operator*(const MatrixField& a, const MatrixField& b);
MatrixField commutator(const MatrixField& a, const MatrixField& b);
// kinv * a^dagger * k at every point.
MatrixField h_adjoint(const MatrixField& kinv, const MatrixField& a, const MatrixField& k);
// tr(a b) at every point.
ScalarField trace_product(const MatrixField& a, const MatrixField& b);

MatrixField d_real(const MatrixField& f, int dir);
MatrixField d_holo(const MatrixField& f, int axis);
MatrixField d_anti(const MatrixField& f, int axis);
// All n holomorphic (resp. antiholomorphic) derivatives from a single forward transform.
std::vector<MatrixField> d_holo_all(const MatrixField& f);
std::vector<MatrixField> d_anti_all(const MatrixField& f);

// exp of a pointwise hermitian field via eigen-decomposition.
MatrixField hermitian_exp(const MatrixField& s);

}  // namespace kl
