#pragma once

#include "homiso/types.hpp"

namespace homiso {

/// A d x k basis matrix with independent columns. The empty subspace (k = 0)
/// is allowed. Real-field subspaces carry real columns.
class Subspace {
 public:
  /// Throws RankError if the columns are dependent at `rank_tol`.
  Subspace(Matrix basis, Field field, double rank_tol = kDefaultRankTol);

  static Subspace empty(Index ambient_dim, Field field);
  static Subspace from_real(const Eigen::MatrixXd& basis, double rank_tol = kDefaultRankTol);

  Index ambient_dim() const noexcept { return basis_.rows(); }
  Index dim() const noexcept { return basis_.cols(); }
  Field field() const noexcept { return field_; }
  const Matrix& basis() const noexcept { return basis_; }
  Vector column(Index i) const { return basis_.col(i); }
  Eigen::MatrixXd real_basis() const { return basis_.real(); }

  /// Span of this basis followed by `extra`; rank-checked.
  Subspace adjoin(const Vector& extra, double rank_tol = kDefaultRankTol) const;

 private:
  Matrix basis_;
  Field field_;
};

/// Same span, orthonormal columns. Throws RankError on rank-deficient input.
Subspace orthonormalize(const Subspace& subspace, double rank_tol = kDefaultRankTol);

namespace linalg {

/// Count of singular values above rank_tol * sigma_max.
Index numerical_rank(const Matrix& m, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of {x : rows * x = 0}. Singular values at or below
/// max(rank_tol * sigma_max, abs_floor) count as zero.
Matrix null_space(const Matrix& rows, double rank_tol, double abs_floor = 0.0);
Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows, double rank_tol, double abs_floor = 0.0);

/// Orthonormal basis of the part of span(frame) orthogonal to span(sub).
/// `frame` must be orthonormal; `sub` must lie in span(frame).
Matrix complement_in(const Matrix& frame, const Matrix& sub);
Eigen::MatrixXd complement_in(const Eigen::MatrixXd& frame, const Eigen::MatrixXd& sub);

/// Thin orthonormal Q of a full-column-rank matrix.
Matrix orthonormal_columns(const Matrix& m);
Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& m);

/// Largest principal-angle sine between two subspaces (0 when equal).
double subspace_distance(const Matrix& a, const Matrix& b);

}  // namespace linalg

}  // namespace homiso
