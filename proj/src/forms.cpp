#include "homiso/forms.hpp"

#include <algorithm>
#include <map>

#include "homiso/errors.hpp"

namespace homiso {

std::string_view to_string(Representation repr) {
  switch (repr) {
    case Representation::dense:
      return "dense";
    case Representation::power_sum:
      return "power_sum";
    case Representation::partial_application:
      return "partial_application";
    case Representation::pullback:
      return "pullback";
  }
  return "unknown";
}

Vector unit(Index d, Index i) {
  Vector e = Vector::Zero(d);
  e(i) = 1.0;
  return e;
}

namespace {

bool is_real(const Matrix& m) { return m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0; }

double as_real_checked(Scalar c) {
  if (std::abs(c.imag()) > 1e-12 * std::max(1.0, std::abs(c.real()))) {
    throw ArgumentError("real form has a coefficient with nonzero imaginary part");
  }
  return c.real();
}

}  // namespace

// ---------------------------------------------------------------------------

SymmetricForm::SymmetricForm(unsigned degree, Index dim, Field field) : degree_(degree), dim_(dim), field_(field) {
  if (degree == 0) throw ArgumentError("form degree must be at least 1");
  if (dim < 0) throw ArgumentError("form dimension must be non-negative");
}

Scalar SymmetricForm::evaluate(const Vector& x) const {
  if (x.size() != dim_) throw ArgumentError("evaluate: vector length does not match form dimension");
  return do_evaluate(x);
}

Scalar SymmetricForm::multilinear(std::span<const Vector> args) const {
  if (args.size() != degree_) throw ArgumentError("multilinear: expected exactly degree-many arguments");
  for (const auto& v : args) {
    if (v.size() != dim_) throw ArgumentError("multilinear: argument length does not match form dimension");
  }
  return do_multilinear(args);
}

Scalar SymmetricForm::multilinear(std::initializer_list<Vector> args) const {
  return multilinear(std::span<const Vector>(args.begin(), args.size()));
}

Scalar SymmetricForm::do_evaluate(const Vector& x) const {
  const std::vector<Vector> args(degree_, x);
  return do_multilinear(args);
}

// ---------------------------------------------------------------------------

DenseForm::DenseForm(unsigned degree, Index dim, Field field, std::vector<Term> terms)
    : SymmetricForm(degree, dim, field) {
  std::map<MultiIndex, Scalar> merged;
  for (auto& t : terms) {
    if (static_cast<Index>(t.exponents.size()) != dim) throw ArgumentError("monomial length does not match dimension");
    if (t.exponents.total() != degree) throw ArgumentError("monomial degree does not match form degree");
    if (field == Field::real) t.coeff = as_real_checked(t.coeff);
    merged[t.exponents] += t.coeff;
  }
  terms_.reserve(merged.size());
  compiled_.reserve(merged.size());
  for (auto& [m, c] : merged) {
    compiled_.push_back({m.slots(), c / static_cast<double>(m.multinomial())});
    terms_.push_back({m, c});
  }
}

Scalar DenseForm::coefficient(const MultiIndex& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const MultiIndex& key) { return t.exponents < key; });
  return (it != terms_.end() && it->exponents == m) ? it->coeff : Scalar{};
}

double DenseForm::max_abs_coefficient() const {
  double out = 0.0;
  for (const auto& t : terms_) out = std::max(out, std::abs(t.coeff));
  return out;
}

Scalar DenseForm::do_evaluate(const Vector& x) const {
  Scalar total = 0.0;
  for (const auto& t : terms_) {
    Scalar prod = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      for (unsigned e = 0; e < t.exponents[i]; ++e) prod *= x(static_cast<Index>(i));
    }
    total += prod;
  }
  return total;
}

Scalar DenseForm::do_multilinear(std::span<const Vector> args) const {
  // A(e_{j_1}, ..., e_{j_n}) = c_m / multinomial(n; m), so each monomial
  // contributes its weight times the sum over distinct orderings of its slots.
  Scalar total = 0.0;
  std::vector<std::size_t> order;
  for (const auto& term : compiled_) {
    order.assign(term.slots.begin(), term.slots.end());
    Scalar sum = 0.0;
    do {
      Scalar prod = 1.0;
      for (std::size_t i = 0; i < order.size(); ++i) prod *= args[i](static_cast<Index>(order[i]));
      sum += prod;
    } while (std::next_permutation(order.begin(), order.end()));
    total += term.weight * sum;
  }
  return total;
}

DenseForm DenseForm::substitute(const Matrix& basis) const {
  if (basis.rows() != dim()) throw ArgumentError("substitute: basis rows do not match form dimension");
  const Index k = basis.cols();
  const Field out_field = common_field(field(), is_real(basis) ? Field::real : Field::complex);

  std::map<std::vector<unsigned>, Scalar> result;
  std::map<std::vector<unsigned>, Scalar> poly;
  std::map<std::vector<unsigned>, Scalar> next;
  for (const auto& t : terms_) {
    if (t.coeff == Scalar{}) continue;
    poly.clear();
    poly.emplace(std::vector<unsigned>(static_cast<std::size_t>(k), 0u), t.coeff);
    for (std::size_t slot : t.exponents.slots()) {
      next.clear();
      for (const auto& [key, value] : poly) {
        for (Index a = 0; a < k; ++a) {
          const Scalar b = basis(static_cast<Index>(slot), a);
          if (b == Scalar{}) continue;
          auto grown = key;
          ++grown[static_cast<std::size_t>(a)];
          next[grown] += value * b;
        }
      }
      poly.swap(next);
    }
    for (const auto& [key, value] : poly) result[key] += value;
  }

  std::vector<Term> terms;
  for (auto& m : monomials(static_cast<std::size_t>(k), degree())) {
    auto it = result.find(m.exponents());
    Scalar c = it == result.end() ? Scalar{} : it->second;
    if (out_field == Field::real) c = c.real();
    terms.push_back({std::move(m), c});
  }
  return DenseForm(degree(), k, out_field, std::move(terms));
}

// ---------------------------------------------------------------------------

PowerSumForm::PowerSumForm(unsigned degree, Index dim, Field field, std::vector<Scalar> lambdas,
                           std::vector<Vector> functionals)
    : SymmetricForm(degree, dim, field), lambdas_(std::move(lambdas)), functionals_(std::move(functionals)) {
  if (lambdas_.size() != functionals_.size()) throw ArgumentError("power sum needs one weight per functional");
  for (auto& phi : functionals_) {
    if (phi.size() != dim) throw ArgumentError("functional length does not match dimension");
    if (field == Field::real) {
      for (Index i = 0; i < phi.size(); ++i) phi(i) = as_real_checked(phi(i));
    }
  }
  if (field == Field::real) {
    for (auto& l : lambdas_) l = as_real_checked(l);
  }
}

Scalar PowerSumForm::do_multilinear(std::span<const Vector> args) const {
  Scalar total = 0.0;
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    Scalar prod = lambdas_[i];
    for (const auto& v : args) prod *= (functionals_[i].transpose() * v).value();
    total += prod;
  }
  return total;
}

// ---------------------------------------------------------------------------

PartialApplicationForm::PartialApplicationForm(FormPtr parent, std::vector<Vector> fixed)
    : SymmetricForm(parent ? parent->degree() - std::min<unsigned>(parent->degree(), static_cast<unsigned>(fixed.size()))
                           : 1,
                    parent ? parent->dim() : 0, parent ? parent->field() : Field::complex),
      parent_(std::move(parent)),
      fixed_(std::move(fixed)) {
  if (!parent_) throw ArgumentError("partial application needs a parent form");
  if (fixed_.size() >= parent_->degree()) throw ArgumentError("partial application must leave degree >= 1");
  for (const auto& v : fixed_) {
    if (v.size() != parent_->dim()) throw ArgumentError("fixed argument length does not match parent dimension");
  }
}

Scalar PartialApplicationForm::do_multilinear(std::span<const Vector> args) const {
  std::vector<Vector> all;
  all.reserve(fixed_.size() + args.size());
  all.insert(all.end(), fixed_.begin(), fixed_.end());
  all.insert(all.end(), args.begin(), args.end());
  return parent_->multilinear(all);
}

// ---------------------------------------------------------------------------

PullbackForm::PullbackForm(FormPtr parent, Matrix basis)
    : SymmetricForm(parent ? parent->degree() : 1, basis.cols(),
                    parent ? common_field(parent->field(), is_real(basis) ? Field::real : Field::complex)
                           : Field::complex),
      parent_(std::move(parent)),
      basis_(std::move(basis)) {
  if (!parent_) throw ArgumentError("pullback needs a parent form");
  if (basis_.rows() != parent_->dim()) throw ArgumentError("pullback basis rows do not match parent dimension");
}

Scalar PullbackForm::do_multilinear(std::span<const Vector> args) const {
  std::vector<Vector> mapped;
  mapped.reserve(args.size());
  for (const auto& t : args) mapped.push_back(basis_ * t);
  return parent_->multilinear(mapped);
}

Scalar PullbackForm::do_evaluate(const Vector& t) const { return parent_->evaluate(basis_ * t); }

// ---------------------------------------------------------------------------

Scalar polarize_oracle(const SymmetricForm& form, std::span<const Vector> args) {
  const unsigned n = form.degree();
  if (n > 8) throw UnsupportedError("polarization oracle supports degree <= 8");
  if (args.size() != n) throw ArgumentError("polarize_oracle: expected exactly degree-many arguments");
  for (const auto& v : args) {
    if (v.size() != form.dim()) throw ArgumentError("polarize_oracle: argument length does not match form dimension");
  }
  Scalar total = 0.0;
  Vector x(form.dim());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    x.setZero();
    double sign = 1.0;
    for (unsigned i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        x -= args[i];
        sign = -sign;
      } else {
        x += args[i];
      }
    }
    total += sign * form.evaluate(x);
  }
  double factorial = 1.0;
  for (unsigned i = 2; i <= n; ++i) factorial *= i;
  return total / (static_cast<double>(1u << n) * factorial);
}

DenseForm pullback(const SymmetricForm& form, const Matrix& basis) {
  if (basis.rows() != form.dim()) throw ArgumentError("pullback: basis rows do not match form dimension");
  const Index k = basis.cols();
  const Field out_field = common_field(form.field(), is_real(basis) ? Field::real : Field::complex);
  std::vector<DenseForm::Term> terms;
  std::vector<Vector> args;
  for (auto& m : monomials(static_cast<std::size_t>(k), form.degree())) {
    args.clear();
    for (std::size_t slot : m.slots()) args.push_back(basis.col(static_cast<Index>(slot)));
    Scalar c = static_cast<double>(m.multinomial()) * form.multilinear(args);
    if (out_field == Field::real) c = c.real();
    terms.push_back({std::move(m), c});
  }
  return DenseForm(form.degree(), k, out_field, std::move(terms));
}

DenseForm pullback(const SymmetricForm& form, const Subspace& subspace) { return pullback(form, subspace.basis()); }

DenseForm quadratic_from_matrix(const Matrix& b, Field field) {
  if (b.rows() != b.cols()) throw ArgumentError("quadratic form matrix must be square");
  const Matrix sym = (b + b.transpose()) / 2.0;
  const Index d = sym.rows();
  std::vector<DenseForm::Term> terms;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      std::vector<unsigned> e(static_cast<std::size_t>(d), 0u);
      ++e[static_cast<std::size_t>(i)];
      ++e[static_cast<std::size_t>(j)];
      terms.push_back({MultiIndex(std::move(e)), i == j ? sym(i, i) : 2.0 * sym(i, j)});
    }
  }
  return DenseForm(2, d, field, std::move(terms));
}

Matrix quadratic_matrix(const SymmetricForm& form) {
  if (form.degree() != 2) throw ArgumentError("quadratic_matrix requires a degree-2 form");
  const Index d = form.dim();
  Matrix out(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      out(i, j) = form.multilinear({unit(d, i), unit(d, j)});
      out(j, i) = out(i, j);
    }
  }
  return out;
}

}  // namespace homiso
