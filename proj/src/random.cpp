#include "homiso/random.hpp"

#include <cmath>

#include "homiso/errors.hpp"

namespace homiso {

Vector random_vector(Index d, Field field, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  const double s = field == Field::complex ? std::sqrt(0.5) : 1.0;
  for (Index i = 0; i < d; ++i) {
    const double re = normal(rng);
    const double im = field == Field::complex ? normal(rng) : 0.0;
    v(i) = Scalar(s * re, s * im);
  }
  return v;
}

Vector random_unit_vector(Index d, Field field, Rng& rng) {
  Vector v = random_vector(d, field, rng);
  return v / v.norm();
}

Matrix random_frame(Index d, Index k, Field field, Rng& rng) {
  if (k > d) throw ArgumentError("random_frame: more columns than rows");
  Matrix g(d, k);
  for (Index j = 0; j < k; ++j) g.col(j) = random_vector(d, field, rng);
  if (field == Field::real) return linalg::orthonormal_columns(Eigen::MatrixXd(g.real())).cast<Scalar>();
  return linalg::orthonormal_columns(g);
}

DenseForm random_dense_form(unsigned degree, Index dim, Field field, Rng& rng) {
  std::vector<DenseForm::Term> terms;
  for (auto& m : monomials(static_cast<std::size_t>(dim), degree)) {
    terms.push_back({std::move(m), random_vector(1, field, rng)(0)});
  }
  return DenseForm(degree, dim, field, std::move(terms));
}

Matrix planted_complex_quadratic(Index d, Index kernel_dim, Rng& rng) {
  if (kernel_dim < 0 || kernel_dim > d) throw ArgumentError("kernel dimension out of range");
  Matrix g(d, d);
  for (Index j = 0; j < d; ++j) g.col(j) = random_vector(d, Field::complex, rng);
  Vector diag = Vector::Zero(d);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  for (Index i = 0; i < d - kernel_dim; ++i) diag(i) = std::polar(mag(rng), phase(rng));
  return g.transpose() * diag.asDiagonal() * g;
}

}  // namespace homiso
