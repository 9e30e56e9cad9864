#pragma once

// Real quadratic forms x^T B x: inertia, maximal null subspaces, a complete
// maximality test, and the two worked families of maximal subspaces
// (quadratic: all maximal subspaces share one dimension; degree >= 3: not so).

#include <optional>
#include <string>
#include <vector>

#include "homiso/certify.hpp"
#include "homiso/forms.hpp"
#include "homiso/subspace.hpp"

namespace homiso::real {

struct Options {
  double tolerance = kDefaultTolerance;
  double rank_tol = kDefaultRankTol;
};

class RealQuadraticForm {
 public:
  /// Symmetrizes b. Throws ArgumentError if b is not square or its
  /// antisymmetric part exceeds sym_tol relative to |b|.
  explicit RealQuadraticForm(Eigen::MatrixXd b, double sym_tol = 1e-9);

  Index dim() const noexcept { return b_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return b_; }
  double value(const Eigen::VectorXd& x) const { return x.dot(b_ * x); }
  double bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(b_ * y); }
  double spectral_radius() const;

  /// The same form as a dense real SymmetricForm.
  const std::shared_ptr<const DenseForm>& form() const noexcept { return dense_; }

 private:
  Eigen::MatrixXd b_;
  std::shared_ptr<const DenseForm> dense_;
};

/// Inertia (p, q, z) with eigenvalues classified at rank_tol * max|lambda|.
struct Signature {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;
  Index max_iso_dim() const noexcept { return std::min(positive, negative) + zero; }
};

Signature signature(const RealQuadraticForm& form, double rank_tol = kDefaultRankTol);

/// Null subspace of dimension min(p,q) + z from hyperbolic pairs
/// u/sqrt(lambda) + v/sqrt(|mu|) plus the kernel. Orthonormal columns.
Subspace maximal_isotropic(const RealQuadraticForm& form, double rank_tol = kDefaultRankTol);

struct MaximalityVerdict {
  bool is_maximal = true;
  /// Unit vector orthogonal to M with M + [w] still null, when not maximal.
  std::optional<Eigen::VectorXd> witness;
  /// Eigenvalues of the form compressed to a complement of M in {x : M^T B x = 0}.
  Eigen::VectorXd compressed_eigenvalues;
  /// dim {x : M^T B x = 0}.
  Index orthogonal_dim = 0;
};

/// Decides whether the null subspace M is maximal: it is iff the form
/// restricted to a complement of M inside M's B-orthogonal space is definite.
/// Throws PreconditionError if M is not null.
MaximalityVerdict is_maximal(const RealQuadraticForm& form, const Subspace& m, const Options& opts = {});

/// Extends `seed` (or the zero subspace) one witness at a time until maximal.
/// Witnesses are drawn at random from the admissible directions. When `trace`
/// is given it receives the dimension after every step.
Subspace greedy_maximal(const RealQuadraticForm& form, const std::optional<Subspace>& seed, std::uint64_t rng_seed,
                        const Options& opts = {}, std::vector<Index>* trace = nullptr);

/// Q^T D Q with random orthogonal Q and |D| log-uniform in [1e-2, 1e2].
Eigen::MatrixXd planted_signature(Index p, Index q, Index z, Rng& rng);

/// One checked statement in a replication report.
struct Claim {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// -x_1^2 - ... - x_k^2 + x_{k+1}^2 + ... + x_d^2 with M_k = span{e_j + e_{j+k}}.
struct PkExample {
  RealQuadraticForm form;
  Subspace mk;
  CertReport cert;
  MaximalityVerdict verdict;
  std::vector<Index> restart_dims;
  std::vector<Claim> claims;
};

/// Builds the truncated form, certifies M_k, decides maximality and runs
/// `restarts` greedy constructions from random seeds.
PkExample example_pk(Index k, Index d, int restarts = 0, std::uint64_t seed = 0, const Options& opts = {});

/// x_1^{n-2} (x_{k+1}^2 + ... + x_d^2): null on the hyperplane {x_1 = 0} and
/// on span{e_1..e_k}, both maximal.
struct HigherDegreeExample {
  std::shared_ptr<const DenseForm> form;
  Subspace hyperplane;
  Subspace coordinate;
  CertReport hyperplane_cert;
  CertReport coordinate_cert;
  int samples = 0;
  int hyperplane_null_extensions = 0;
  int coordinate_null_extensions = 0;
  std::vector<Index> maximal_dims;
  std::vector<Claim> claims;
};

HigherDegreeExample example_higher_degree(unsigned n, Index k, Index d, std::uint64_t seed = 0, int samples = 1000,
                                          const Options& opts = {});

}  // namespace homiso::real
