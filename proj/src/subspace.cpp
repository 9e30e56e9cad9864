#include "homiso/subspace.hpp"

#include <algorithm>

#include "homiso/errors.hpp"

namespace homiso {

std::string_view to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field field_from_string(std::string_view name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw ParseError("unknown field '" + std::string(name) + "'");
}

namespace linalg {

namespace {

template <class Mat>
Mat null_space_impl(const Mat& rows, double rank_tol, double abs_floor) {
  const Index n = rows.cols();
  if (rows.rows() == 0 || n == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  const double threshold = std::max(rank_tol * sigma_max, abs_floor);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

template <class Mat>
Mat orthonormal_impl(const Mat& m) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::HouseholderQR<Mat> qr(m);
  return qr.householderQ() * Mat::Identity(m.rows(), m.cols());
}

template <class Mat>
Mat complement_impl(const Mat& frame, const Mat& sub) {
  if (frame.cols() == 0) return Mat(frame.rows(), 0);
  Mat sub_q = orthonormal_impl(sub);
  // Coordinates of sub inside the frame, then the orthogonal complement there.
  Mat coords = frame.adjoint() * sub_q;
  Mat projected = Mat::Identity(frame.cols(), frame.cols()) - coords * coords.adjoint();
  Eigen::JacobiSVD<Mat> svd(projected, Eigen::ComputeFullU);
  Index keep = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 0.5) ++keep;
  }
  return frame * svd.matrixU().leftCols(keep);
}

}  // namespace

Index numerical_rank(const Matrix& m, double rank_tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rank_tol * sv(0)) ++rank;
  }
  return rank;
}

Matrix null_space(const Matrix& rows, double rank_tol, double abs_floor) {
  return null_space_impl(rows, rank_tol, abs_floor);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows, double rank_tol, double abs_floor) {
  return null_space_impl(rows, rank_tol, abs_floor);
}

Matrix complement_in(const Matrix& frame, const Matrix& sub) { return complement_impl(frame, sub); }

Eigen::MatrixXd complement_in(const Eigen::MatrixXd& frame, const Eigen::MatrixXd& sub) {
  return complement_impl(frame, sub);
}

Matrix orthonormal_columns(const Matrix& m) { return orthonormal_impl(m); }

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& m) { return orthonormal_impl(m); }

double subspace_distance(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const Matrix qa = orthonormal_columns(a);
  const Matrix qb = orthonormal_columns(b);
  // sin of the largest principal angle = norm of the part of qb outside span(qa).
  const Matrix residual = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return svd.singularValues()(0);
}

}  // namespace linalg

Subspace::Subspace(Matrix basis, Field field, double rank_tol) : basis_(std::move(basis)), field_(field) {
  if (field_ == Field::real && basis_.size() > 0) {
    const double scale = std::max(1.0, basis_.cwiseAbs().maxCoeff());
    if (basis_.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ArgumentError("real subspace has complex basis entries");
    }
    basis_ = basis_.real().cast<Scalar>();
  }
  if (basis_.cols() > basis_.rows()) throw RankError("more basis columns than ambient dimension");
  if (linalg::numerical_rank(basis_, rank_tol) != basis_.cols()) {
    throw RankError("subspace basis columns are linearly dependent");
  }
}

Subspace Subspace::empty(Index ambient_dim, Field field) { return Subspace(Matrix(ambient_dim, 0), field); }

Subspace Subspace::from_real(const Eigen::MatrixXd& basis, double rank_tol) {
  return Subspace(basis.cast<Scalar>(), Field::real, rank_tol);
}

Subspace Subspace::adjoin(const Vector& extra, double rank_tol) const {
  if (extra.size() != ambient_dim()) throw ArgumentError("adjoined vector has wrong length");
  Matrix grown(ambient_dim(), dim() + 1);
  grown << basis_, extra;
  return Subspace(std::move(grown), field_, rank_tol);
}

Subspace orthonormalize(const Subspace& subspace, double rank_tol) {
  if (linalg::numerical_rank(subspace.basis(), rank_tol) != subspace.dim()) {
    throw RankError("cannot orthonormalize a rank-deficient basis");
  }
  if (subspace.field() == Field::real) {
    return Subspace(linalg::orthonormal_columns(subspace.real_basis()).cast<Scalar>(), Field::real, rank_tol);
  }
  return Subspace(linalg::orthonormal_columns(subspace.basis()), Field::complex, rank_tol);
}

}  // namespace homiso
