#include "homiso/real_quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "homiso/errors.hpp"
#include "homiso/random.hpp"

namespace homiso::real {

using Eigen::MatrixXd;
using Eigen::VectorXd;

RealQuadraticForm::RealQuadraticForm(MatrixXd b, double sym_tol) {
  if (b.rows() != b.cols()) throw ArgumentError("quadratic form matrix must be square");
  if (b.rows() == 0) throw ArgumentError("quadratic form matrix must be non-empty");
  const double norm = std::max(1.0, b.cwiseAbs().maxCoeff());
  if ((b - b.transpose()).cwiseAbs().maxCoeff() > sym_tol * norm) {
    throw ArgumentError("quadratic form matrix is not symmetric");
  }
  b_ = (b + b.transpose()) / 2.0;
  dense_ = std::make_shared<const DenseForm>(quadratic_from_matrix(b_.cast<Scalar>(), Field::real));
}

double RealQuadraticForm::spectral_radius() const {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(b_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Signature signature(const RealQuadraticForm& form, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(form.matrix(), Eigen::EigenvaluesOnly);
  const VectorXd& lambda = eig.eigenvalues();
  const double threshold = rank_tol * lambda.cwiseAbs().maxCoeff();
  Signature s;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= threshold) {
      ++s.zero;
    } else if (lambda(i) > 0) {
      ++s.positive;
    } else {
      ++s.negative;
    }
  }
  return s;
}

Subspace maximal_isotropic(const RealQuadraticForm& form, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(form.matrix());
  const VectorXd& lambda = eig.eigenvalues();
  const MatrixXd& vecs = eig.eigenvectors();
  const double threshold = rank_tol * lambda.cwiseAbs().maxCoeff();
  std::vector<Index> pos, neg, zero;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= threshold) {
      zero.push_back(i);
    } else {
      (lambda(i) > 0 ? pos : neg).push_back(i);
    }
  }
  const std::size_t pairs = std::min(pos.size(), neg.size());
  MatrixXd basis(form.dim(), static_cast<Index>(pairs + zero.size()));
  Index col = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    basis.col(col++) = vecs.col(pos[i]) / std::sqrt(lambda(pos[i])) + vecs.col(neg[i]) / std::sqrt(-lambda(neg[i]));
  }
  for (Index z : zero) basis.col(col++) = vecs.col(z);
  return Subspace::from_real(linalg::orthonormal_columns(basis), rank_tol);
}

namespace {

struct Compressed {
  MatrixXd complement;  // orthonormal basis of C, orthogonal to M
  VectorXd eigenvalues;
  MatrixXd eigenvectors;
  Index orthogonal_dim = 0;
  double threshold = 0.0;
};

Compressed compress(const RealQuadraticForm& form, const MatrixXd& mq, const Options& opts) {
  const double radius = form.spectral_radius();
  const MatrixXd w = linalg::null_space(MatrixXd(mq.transpose() * form.matrix()), opts.rank_tol, opts.rank_tol * radius);
  Compressed out;
  out.orthogonal_dim = w.cols();
  out.complement = linalg::complement_in(w, mq);
  out.threshold = opts.rank_tol * radius;
  if (out.complement.cols() > 0) {
    MatrixXd g = out.complement.transpose() * form.matrix() * out.complement;
    g = (g + g.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(g);
    out.eigenvalues = eig.eigenvalues();
    out.eigenvectors = eig.eigenvectors();
  }
  return out;
}

// A null direction in C, chosen deterministically (rng == nullptr) or at random.
std::optional<VectorXd> witness(const Compressed& c, Rng* rng) {
  const Index n = c.eigenvalues.size();
  std::vector<Index> pos, neg, zero;
  for (Index i = 0; i < n; ++i) {
    if (std::abs(c.eigenvalues(i)) <= c.threshold) {
      zero.push_back(i);
    } else {
      (c.eigenvalues(i) > 0 ? pos : neg).push_back(i);
    }
  }
  const bool mixed = !pos.empty() && !neg.empty();
  if (zero.empty() && !mixed) return std::nullopt;

  std::normal_distribution<double> normal;
  auto combine = [&](const std::vector<Index>& idx) {
    VectorXd v = VectorXd::Zero(n);
    if (!rng) {
      v(idx.front()) = 1.0;
      return v;
    }
    for (Index i : idx) v(i) = normal(*rng);
    return VectorXd(v / v.norm());
  };

  bool use_kernel = !zero.empty();
  if (rng && !zero.empty() && mixed) use_kernel = std::bernoulli_distribution(0.5)(*rng);

  VectorXd coords;
  if (use_kernel) {
    coords = c.eigenvectors * combine(zero);
  } else {
    const VectorXd a = combine(pos);
    const VectorXd b = combine(neg);
    double qa = 0.0, qb = 0.0;
    for (Index i = 0; i < n; ++i) {
      qa += c.eigenvalues(i) * a(i) * a(i);
      qb += c.eigenvalues(i) * b(i) * b(i);
    }
    coords = c.eigenvectors * (a + std::sqrt(qa / -qb) * b);
  }
  VectorXd w = c.complement * coords;
  return VectorXd(w / w.norm());
}

MatrixXd orthonormal_real(const Subspace& m, double rank_tol) {
  if (m.dim() == 0) return MatrixXd(m.ambient_dim(), 0);
  if (m.field() != Field::real) throw ArgumentError("real quadratic analysis requires a real subspace");
  return orthonormalize(m, rank_tol).real_basis();
}

}  // namespace

MaximalityVerdict is_maximal(const RealQuadraticForm& form, const Subspace& m, const Options& opts) {
  if (m.ambient_dim() != form.dim()) throw ArgumentError("subspace ambient dimension mismatch");
  if (!certify_null(*form.form(), m, opts.tolerance).pass) throw PreconditionError("is_maximal: subspace is not null");
  const MatrixXd mq = orthonormal_real(m, opts.rank_tol);
  const Compressed c = compress(form, mq, opts);
  MaximalityVerdict v;
  v.compressed_eigenvalues = c.eigenvalues;
  v.orthogonal_dim = c.orthogonal_dim;
  if (c.complement.cols() > 0) v.witness = witness(c, nullptr);
  v.is_maximal = !v.witness.has_value();
  return v;
}

Subspace greedy_maximal(const RealQuadraticForm& form, const std::optional<Subspace>& seed, std::uint64_t rng_seed,
                        const Options& opts, std::vector<Index>* trace) {
  MatrixXd mq(form.dim(), 0);
  if (seed) {
    if (seed->ambient_dim() != form.dim()) throw ArgumentError("seed subspace ambient dimension mismatch");
    if (!certify_null(*form.form(), *seed, opts.tolerance).pass) {
      throw PreconditionError("greedy_maximal: seed subspace is not null");
    }
    mq = orthonormal_real(*seed, opts.rank_tol);
  }
  Rng rng(rng_seed);
  if (trace) trace->push_back(mq.cols());
  for (;;) {
    const Compressed c = compress(form, mq, opts);
    if (c.complement.cols() == 0) break;
    const auto w = witness(c, &rng);
    if (!w) break;
    MatrixXd grown(form.dim(), mq.cols() + 1);
    grown << mq, *w;
    mq = linalg::orthonormal_columns(grown);
    if (trace) trace->push_back(mq.cols());
    const Subspace current = Subspace::from_real(mq, opts.rank_tol);
    if (!certify_null(*form.form(), current, opts.tolerance).pass) {
      throw NumericalError("greedy_maximal: extension failed certification");
    }
  }
  return Subspace::from_real(mq, opts.rank_tol);
}

MatrixXd planted_signature(Index p, Index q, Index z, Rng& rng) {
  if (p < 0 || q < 0 || z < 0 || p + q + z == 0) throw ArgumentError("invalid planted signature");
  const Index d = p + q + z;
  std::uniform_real_distribution<double> exponent(-2.0, 2.0);
  VectorXd diag = VectorXd::Zero(d);
  for (Index i = 0; i < p; ++i) diag(i) = std::pow(10.0, exponent(rng));
  for (Index i = p; i < p + q; ++i) diag(i) = -std::pow(10.0, exponent(rng));
  const MatrixXd orth = random_frame(d, d, Field::real, rng).real();
  MatrixXd b = orth.transpose() * diag.asDiagonal() * orth;
  return (b + b.transpose()) / 2.0;
}

// ---------------------------------------------------------------------------

PkExample example_pk(Index k, Index d, int restarts, std::uint64_t seed, const Options& opts) {
  if (k < 1) throw ArgumentError("example_pk requires k >= 1");
  if (d < 2 * k) throw ArgumentError("example_pk requires d >= 2k");

  VectorXd diag = VectorXd::Ones(d);
  diag.head(k).setConstant(-1.0);
  RealQuadraticForm form(diag.asDiagonal().toDenseMatrix());

  MatrixXd basis = MatrixXd::Zero(d, k);
  for (Index j = 0; j < k; ++j) basis(j, j) = basis(j + k, j) = 1.0;
  Subspace mk = Subspace::from_real(basis, opts.rank_tol);

  const CertReport cert = certify_null(*form.form(), mk, opts.tolerance);
  MaximalityVerdict verdict = is_maximal(form, mk, opts);

  std::vector<Index> dims;
  for (int r = 0; r < restarts; ++r) {
    dims.push_back(greedy_maximal(form, std::nullopt, seed + static_cast<std::uint64_t>(r), opts).dim());
  }

  std::vector<Claim> claims;
  claims.push_back({"M_k is null", cert.pass, "relative residual " + std::to_string(cert.relative_residual)});

  // Rows of M_k^T B are -e_j + e_{j+k}: the orthogonality constraint y(j) = y(j+k).
  const MatrixXd rows = basis.transpose() * form.matrix();
  MatrixXd expected = MatrixXd::Zero(k, d);
  for (Index j = 0; j < k; ++j) {
    expected(j, j) = -1.0;
    expected(j, j + k) = 1.0;
  }
  claims.push_back({"P(x_j, y) = -y(j) + y(j+k)", (rows - expected).cwiseAbs().maxCoeff() <= opts.tolerance, ""});

  // On the orthogonal space the form reduces to the tail sum of squares.
  const auto& eig = verdict.compressed_eigenvalues;
  const bool tail_positive =
      eig.size() == d - 2 * k && (eig.size() == 0 || (eig.array() - 1.0).abs().maxCoeff() <= opts.tolerance);
  claims.push_back({"P(y) = sum_{i>2k} y(i)^2 on the orthogonal space", tail_positive,
                    "orthogonal dim " + std::to_string(verdict.orthogonal_dim)});
  claims.push_back({"M_k is maximal", verdict.is_maximal, ""});
  claims.push_back({"min(p,q)+z equals k", signature(form, opts.rank_tol).max_iso_dim() == k, ""});
  if (restarts > 0) {
    const bool all_k = std::all_of(dims.begin(), dims.end(), [k](Index v) { return v == k; });
    claims.push_back({"every greedy maximal subspace has dimension k", all_k,
                      std::to_string(restarts) + " restarts"});
  }
  return PkExample{std::move(form), std::move(mk), cert, std::move(verdict), std::move(dims), std::move(claims)};
}

namespace {

// True if some candidate extension is null. Point evaluations give a
// rigorous refutation: |Q(t)| <= max|c| (sqrt(k) |t|)^n for orthonormal bases.
bool extension_is_null(const SymmetricForm& form, const MatrixXd& basis, double scale, double tol, Rng& rng) {
  const Index k = basis.cols();
  const double lift = std::pow(std::sqrt(static_cast<double>(k)), form.degree());
  for (int s = 0; s < 4; ++s) {
    const VectorXd t = random_vector(k, Field::real, rng).real();
    const VectorXd x = basis * t;
    if (std::abs(form.evaluate(x.cast<Scalar>())) > tol * scale * lift * std::pow(t.norm(), form.degree())) {
      return false;
    }
  }
  return certify_null(form, Subspace::from_real(basis), tol, scale).pass;
}

int count_null_extensions(const SymmetricForm& form, const MatrixXd& base, int samples, double scale, double tol,
                          Rng& rng) {
  int hits = 0;
  const Index d = base.rows();
  for (int s = 0; s < samples; ++s) {
    MatrixXd grown(d, base.cols() + 1);
    grown << base, random_vector(d, Field::real, rng).real();
    if (linalg::numerical_rank(grown.cast<Scalar>()) != grown.cols()) continue;
    if (extension_is_null(form, linalg::orthonormal_columns(grown), scale, tol, rng)) ++hits;
  }
  return hits;
}

}  // namespace

HigherDegreeExample example_higher_degree(unsigned n, Index k, Index d, std::uint64_t seed, int samples,
                                          const Options& opts) {
  if (n < 3) throw ArgumentError("example_higher_degree requires n >= 3");
  if (k < 1) throw ArgumentError("example_higher_degree requires k >= 1");
  if (d <= k + 1) throw ArgumentError("example_higher_degree requires d > k + 1");

  std::vector<DenseForm::Term> terms;
  for (Index i = k; i < d; ++i) {
    std::vector<unsigned> e(static_cast<std::size_t>(d), 0u);
    e[0] = n - 2;
    e[static_cast<std::size_t>(i)] = 2;
    terms.push_back({MultiIndex(std::move(e)), 1.0});
  }
  auto form = std::make_shared<const DenseForm>(n, d, Field::real, std::move(terms));

  const MatrixXd identity = MatrixXd::Identity(d, d);
  Subspace hyperplane = Subspace::from_real(identity.rightCols(d - 1));
  Subspace coordinate = Subspace::from_real(identity.leftCols(k));

  HigherDegreeExample out{form, hyperplane, coordinate, {}, {}, samples, 0, 0, {}, {}};
  out.hyperplane_cert = certify_null(*form, hyperplane, opts.tolerance);
  out.coordinate_cert = certify_null(*form, coordinate, opts.tolerance);

  // A hyperplane can only grow into the whole space, where P is nonzero.
  const CertReport whole = certify_null(*form, Subspace::from_real(identity), opts.tolerance);

  // Any extension of span{e_1..e_k} is span{e_1..e_k, r} with r != 0 orthogonal
  // to it; the t^{n-2} s^2 coefficient of P(t e_1 + s r) is C(n,2) A(e_1^{n-2}, r, r),
  // which must be the positive definite form |r|^2 on the complement.
  const Index tail = d - k;
  MatrixXd gram(tail, tail);
  const Vector e1 = unit(d, 0);
  const double pairs = static_cast<double>(bounds::binomial(n, 2));
  std::vector<Vector> args(n - 2, e1);
  args.resize(n);
  for (Index a = 0; a < tail; ++a) {
    for (Index b = a; b < tail; ++b) {
      args[n - 2] = unit(d, k + a);
      args[n - 1] = unit(d, k + b);
      gram(a, b) = gram(b, a) = pairs * form->multilinear(args).real();
    }
  }
  const bool gram_identity = (gram - MatrixXd::Identity(tail, tail)).cwiseAbs().maxCoeff() <= opts.tolerance;

  Rng rng(seed);
  const double scale = form_scale(*form, 1);
  out.hyperplane_null_extensions =
      count_null_extensions(*form, hyperplane.real_basis(), samples, scale, opts.tolerance, rng);
  out.coordinate_null_extensions =
      count_null_extensions(*form, coordinate.real_basis(), samples, scale, opts.tolerance, rng);

  out.maximal_dims = {d - 1, k};
  out.claims.push_back({"P vanishes on {x_1 = 0}", out.hyperplane_cert.pass,
                        "relative residual " + std::to_string(out.hyperplane_cert.relative_residual)});
  out.claims.push_back({"P vanishes on span{e_1..e_k}", out.coordinate_cert.pass,
                        "relative residual " + std::to_string(out.coordinate_cert.relative_residual)});
  out.claims.push_back({"{x_1 = 0} is maximal (P is nonzero on the whole space)", !whole.pass, ""});
  out.claims.push_back({"span{e_1..e_k} is maximal (extension coefficient is |r|^2)", gram_identity, ""});
  out.claims.push_back({"no random extension of {x_1 = 0} is null", out.hyperplane_null_extensions == 0,
                        std::to_string(samples) + " samples"});
  out.claims.push_back({"no random extension of span{e_1..e_k} is null", out.coordinate_null_extensions == 0,
                        std::to_string(samples) + " samples"});
  out.claims.push_back({"maximal dimensions differ", d - 1 != k, ""});
  return out;
}

}  // namespace homiso::real
