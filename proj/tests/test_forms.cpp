#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "homiso/certify.hpp"
#include "homiso/errors.hpp"
#include "homiso/forms.hpp"
#include "homiso/random.hpp"

using namespace homiso;

namespace {

std::vector<Vector> random_args(unsigned n, Index d, Field field, Rng& rng) {
  std::vector<Vector> args;
  for (unsigned i = 0; i < n; ++i) args.push_back(random_vector(d, field, rng));
  return args;
}

FormPtr random_power_sum(unsigned n, Index d, Field field, Rng& rng) {
  std::vector<Scalar> lambdas;
  std::vector<Vector> functionals;
  for (int r = 0; r < 3; ++r) {
    lambdas.push_back(random_vector(1, field, rng)(0));
    functionals.push_back(random_vector(d, field, rng));
  }
  return std::make_shared<PowerSumForm>(n, d, field, lambdas, functionals);
}

FormPtr make_form(Representation repr, unsigned n, Index d, Field field, Rng& rng) {
  switch (repr) {
    case Representation::dense:
      return std::make_shared<DenseForm>(random_dense_form(n, d, field, rng));
    case Representation::power_sum:
      return random_power_sum(n, d, field, rng);
    case Representation::partial_application: {
      auto parent = std::make_shared<DenseForm>(random_dense_form(n + 1, d, field, rng));
      return std::make_shared<PartialApplicationForm>(parent, random_args(1, d, field, rng));
    }
    case Representation::pullback: {
      auto parent = std::make_shared<DenseForm>(random_dense_form(n, d + 2, field, rng));
      Matrix b = Matrix::Zero(d + 2, d);
      for (Index j = 0; j < d; ++j) b.col(j) = random_vector(d + 2, field, rng);
      return std::make_shared<PullbackForm>(parent, b);
    }
  }
  return nullptr;
}

double max_abs_diff(const DenseForm& a, const DenseForm& b) {
  double worst = 0.0;
  for (const auto& t : a.terms()) worst = std::max(worst, std::abs(t.coeff - b.coefficient(t.exponents)));
  for (const auto& t : b.terms()) worst = std::max(worst, std::abs(t.coeff - a.coefficient(t.exponents)));
  return worst;
}

}  // namespace

TEST_CASE("monomials are listed in descending lexicographic order") {
  const auto m = monomials(2, 2);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == MultiIndex{2, 0});
  CHECK(m[1] == MultiIndex{1, 1});
  CHECK(m[2] == MultiIndex{0, 2});
  CHECK(monomials(4, 3).size() == 20);
  CHECK(monomials(3, 0).size() == 1);
  CHECK(MultiIndex{2, 0, 1}.slots() == std::vector<std::size_t>{0, 0, 2});
  CHECK(MultiIndex{2, 1, 1}.multinomial() == 12);
}

TEST_CASE("dense multilinear form on basis vectors") {
  // x1^2 x2: A(e1, e1, e2) = 1/3, the other slots vanish.
  DenseForm p(3, 2, Field::complex, {{MultiIndex{2, 1}, 1.0}});
  const Vector e1 = unit(2, 0), e2 = unit(2, 1);
  CHECK(std::abs(p.multilinear({e1, e1, e2}) - Scalar(1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(p.multilinear({e2, e1, e1}) - Scalar(1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(p.multilinear({e1, e1, e1})) < 1e-15);
  CHECK(std::abs(p.multilinear({e2, e2, e1})) < 1e-15);
}

TEST_CASE("duplicate terms are merged") {
  DenseForm p(2, 2, Field::real, {{MultiIndex{1, 1}, 2.0}, {MultiIndex{1, 1}, 3.0}, {MultiIndex{2, 0}, 1.0}});
  CHECK(p.terms().size() == 2);
  CHECK(p.coefficient(MultiIndex{1, 1}) == Scalar(5.0));
  CHECK(p.coefficient(MultiIndex{0, 2}) == Scalar(0.0));
  CHECK(p.max_abs_coefficient() == doctest::Approx(5.0));
}

TEST_CASE("multilinear agrees with the polarization oracle in every representation") {
  Rng rng(11);
  for (auto repr : {Representation::dense, Representation::power_sum, Representation::partial_application,
                    Representation::pullback}) {
    for (auto field : {Field::real, Field::complex}) {
      for (unsigned n = 1; n <= 4; ++n) {
        for (Index d : {1, 3, 5}) {
          CAPTURE(to_string(repr));
          CAPTURE(n);
          CAPTURE(d);
          const FormPtr form = make_form(repr, n, d, field, rng);
          const auto args = random_args(n, d, field, rng);
          const Scalar direct = form->multilinear(args);
          const Scalar oracle = polarize_oracle(*form, args);
          CHECK(std::abs(direct - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
        }
      }
    }
  }
}

TEST_CASE("symmetry, diagonal and homogeneity") {
  Rng rng(5);
  for (auto repr : {Representation::dense, Representation::power_sum, Representation::partial_application,
                    Representation::pullback}) {
    const FormPtr form = make_form(repr, 3, 4, Field::complex, rng);
    auto args = random_args(3, 4, Field::complex, rng);
    const Scalar value = form->multilinear(args);
    std::sort(args.begin(), args.end(), [](const Vector& a, const Vector& b) { return a(0).real() < b(0).real(); });
    do {
      CHECK(std::abs(form->multilinear(args) - value) <= 1e-12 * std::max(1.0, std::abs(value)));
    } while (std::next_permutation(args.begin(), args.end(),
                                   [](const Vector& a, const Vector& b) { return a(0).real() < b(0).real(); }));
    const Vector x = random_vector(4, Field::complex, rng);
    const Scalar px = form->evaluate(x);
    CHECK(std::abs(form->multilinear({x, x, x}) - px) <= 1e-12 * std::max(1.0, std::abs(px)));
    const Scalar t(0.7, -1.3);
    CHECK(std::abs(form->evaluate(t * x) - t * t * t * px) <= 1e-11 * std::max(1.0, std::abs(px)));
  }
}

TEST_CASE("pullback coefficients") {
  Rng rng(17);
  const auto form = random_dense_form(3, 5, Field::complex, rng);
  const Matrix b = random_frame(5, 3, Field::complex, rng);
  const Matrix c = random_frame(3, 2, Field::complex, rng);

  // Fast substitution and the generic multilinear route agree.
  const DenseForm generic = pullback(PullbackForm(std::make_shared<DenseForm>(form), Matrix::Identity(5, 5)), b);
  CHECK(max_abs_diff(form.substitute(b), generic) < 1e-12);

  // (P o B) o C = P o (BC).
  const DenseForm twice = pullback(form.substitute(b), c);
  const DenseForm once = form.substitute(b * c);
  CHECK(max_abs_diff(twice, once) < 1e-12);

  // Q(t) = P(Bt) pointwise.
  const Vector t = random_vector(3, Field::complex, rng);
  const Scalar expected = form.evaluate(b * t);
  CHECK(std::abs(generic.evaluate(t) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("quadratic matrix round trip") {
  Eigen::MatrixXd b(3, 3);
  b << 1, 2, 0, 0, -1, 4, 2, 0, 3;
  const DenseForm q = quadratic_from_matrix(b.cast<Scalar>(), Field::real);
  const Matrix back = quadratic_matrix(q);
  const Eigen::MatrixXd sym = 0.5 * (b + b.transpose());
  CHECK((back.real() - sym).norm() < 1e-14);
  CHECK(back.imag().norm() == 0.0);
  const Eigen::Vector3d x(1.0, -2.0, 0.5);
  CHECK(q.evaluate(x.cast<Scalar>()).real() == doctest::Approx(x.dot(b * x)));
}

TEST_CASE("argument validation") {
  DenseForm p(2, 3, Field::complex, {{MultiIndex{1, 1, 0}, 1.0}});
  CHECK_THROWS_AS(p.evaluate(Vector::Zero(2)), ArgumentError);
  CHECK_THROWS_AS(p.multilinear({unit(3, 0)}), ArgumentError);
  CHECK_THROWS_AS(DenseForm(2, 3, Field::complex, {{MultiIndex{1, 1}, 1.0}}), ArgumentError);
  CHECK_THROWS_AS(DenseForm(2, 2, Field::complex, {{MultiIndex{1, 0}, 1.0}}), ArgumentError);
  CHECK_THROWS_AS(DenseForm(2, 2, Field::real, {{MultiIndex{1, 1}, Scalar(0.0, 1.0)}}), ArgumentError);
  CHECK_THROWS_AS(DenseForm(0, 2, Field::real, {}), ArgumentError);
  Rng rng(1);
  const auto big = random_dense_form(9, 2, Field::real, rng);
  std::vector<Vector> args(9, unit(2, 0));
  CHECK_THROWS_AS(polarize_oracle(big, args), UnsupportedError);
}

TEST_CASE("certification of known subspaces") {
  // -x1^2 - x2^2 + x3^2 + x4^2 + x5^2 vanishes on span{e1 + e3, e2 + e4}.
  std::vector<DenseForm::Term> terms;
  for (unsigned i = 0; i < 5; ++i) {
    std::vector<unsigned> e(5, 0);
    e[i] = 2;
    terms.push_back({MultiIndex(e), i < 2 ? -1.0 : 1.0});
  }
  const DenseForm pk(2, 5, Field::real, terms);
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(5, 2);
  mk(0, 0) = mk(2, 0) = mk(1, 1) = mk(3, 1) = 1.0;
  const auto good = certify_null(pk, Subspace::from_real(mk));
  CHECK(good.pass);
  CHECK(good.relative_residual < 1e-15);

  const DenseForm square(2, 1, Field::real, {{MultiIndex{2}, 1.0}});
  const auto bad = certify_null(square, Subspace::from_real(Eigen::MatrixXd::Ones(1, 1)));
  CHECK_FALSE(bad.pass);
  CHECK(bad.relative_residual == doctest::Approx(1.0));

  CHECK(certify_null(pk, Subspace::empty(5, Field::real)).pass);
}

TEST_CASE("certification does not depend on the chosen basis") {
  // x1 x2 + x3 x4 vanishes on span{e1, e3}.
  const DenseForm q(2, 4, Field::complex, {{MultiIndex{1, 1, 0, 0}, 1.0}, {MultiIndex{0, 0, 1, 1}, 1.0}});
  Matrix m = Matrix::Zero(4, 2);
  m(0, 0) = m(2, 1) = 1.0;
  Matrix mix(2, 2);
  mix << Scalar(2, 1), Scalar(0, 1), Scalar(-1, 0), Scalar(3, -2);
  CHECK(certify_null(q, Subspace(m, Field::complex)).pass);
  CHECK(certify_null(q, Subspace(m * mix, Field::complex)).pass);
  m(1, 1) = 1.0;
  CHECK_FALSE(certify_null(q, Subspace(m, Field::complex)).pass);
  CHECK_FALSE(certify_null(q, Subspace(m * mix, Field::complex)).pass);
}

TEST_CASE("sampled scale tracks the form") {
  const DenseForm q(2, 2, Field::real, {{MultiIndex{2, 0}, 1.0}, {MultiIndex{0, 2}, 1.0}});
  CHECK(sampled_scale(q) == doctest::Approx(1.0));
  const DenseForm q3(2, 2, Field::real, {{MultiIndex{2, 0}, 3.0}, {MultiIndex{0, 2}, 3.0}});
  CHECK(sampled_scale(q3) == doctest::Approx(3.0));
  CHECK(sampled_scale(q) == sampled_scale(q));
}

TEST_CASE("subspaces") {
  Matrix dep(3, 2);
  dep << 1, 2, 0, 0, 1, 2;
  CHECK_THROWS_AS(Subspace(dep, Field::complex), RankError);
  Matrix cplx = Matrix::Zero(2, 1);
  cplx(0, 0) = Scalar(0, 1);
  CHECK_THROWS_AS(Subspace(cplx, Field::real), ArgumentError);

  Rng rng(3);
  const Matrix raw = random_frame(5, 3, Field::complex, rng) * Matrix::Random(3, 3);
  const Subspace s(raw, Field::complex);
  const Subspace o = orthonormalize(s);
  CHECK((o.basis().adjoint() * o.basis() - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK(linalg::subspace_distance(o.basis(), raw) < 1e-10);

  const Matrix frame = random_frame(6, 4, Field::complex, rng);
  const Matrix sub = frame.leftCols(1) + frame.col(2);
  const Matrix comp = linalg::complement_in(frame, sub);
  CHECK(comp.cols() == 3);
  CHECK((comp.adjoint() * sub).norm() < 1e-12);

  Matrix rows(1, 3);
  rows << 1, 1, 0;
  const Matrix kernel = linalg::null_space(rows, 1e-12);
  CHECK(kernel.cols() == 2);
  CHECK((rows * kernel).norm() < 1e-14);
  CHECK(linalg::numerical_rank(rows) == 1);
  CHECK(s.adjoin(random_vector(5, Field::complex, rng)).dim() == 4);
  CHECK_THROWS_AS(s.adjoin(raw.col(0) + raw.col(1)), RankError);
}
