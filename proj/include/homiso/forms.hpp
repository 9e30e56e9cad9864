#pragma once

// Homogeneous polynomial forms P(x) = A(x, ..., x) together with their
// symmetric multilinear form A, in four representations.

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "homiso/multi_index.hpp"
#include "homiso/subspace.hpp"
#include "homiso/types.hpp"

namespace homiso {

enum class Representation { dense, power_sum, partial_application, pullback };

std::string_view to_string(Representation repr);

/// Degree-n form on a d-dimensional space. Immutable; safe to share.
class SymmetricForm {
 public:
  virtual ~SymmetricForm() = default;

  unsigned degree() const noexcept { return degree_; }
  Index dim() const noexcept { return dim_; }
  Field field() const noexcept { return field_; }
  virtual Representation representation() const noexcept = 0;

  /// P(x). Throws ArgumentError on length mismatch.
  Scalar evaluate(const Vector& x) const;

  /// A(args[0], ..., args[n-1]). Throws ArgumentError on arity or length mismatch.
  Scalar multilinear(std::span<const Vector> args) const;
  Scalar multilinear(std::initializer_list<Vector> args) const;

 protected:
  SymmetricForm(unsigned degree, Index dim, Field field);

  virtual Scalar do_multilinear(std::span<const Vector> args) const = 0;
  virtual Scalar do_evaluate(const Vector& x) const;

 private:
  unsigned degree_;
  Index dim_;
  Field field_;
};

using FormPtr = std::shared_ptr<const SymmetricForm>;

/// P(x) = sum_m c_m x^m with every key of total degree n.
class DenseForm final : public SymmetricForm {
 public:
  struct Term {
    MultiIndex exponents;
    Scalar coeff;
  };

  /// Duplicate keys are summed. Real forms reject coefficients with an
  /// imaginary part.
  DenseForm(unsigned degree, Index dim, Field field, std::vector<Term> terms);

  Representation representation() const noexcept override { return Representation::dense; }

  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Coefficient of x^m (zero if absent).
  Scalar coefficient(const MultiIndex& m) const;

  /// Largest |c_m|.
  double max_abs_coefficient() const;

  /// Q(t) = P(B t) by expanding products of linear forms; B is d x k.
  DenseForm substitute(const Matrix& basis) const;

 protected:
  Scalar do_multilinear(std::span<const Vector> args) const override;
  Scalar do_evaluate(const Vector& x) const override;

 private:
  struct Compiled {
    std::vector<std::size_t> slots;
    Scalar weight;  // c_m / multinomial(n; m)
  };
  std::vector<Term> terms_;
  std::vector<Compiled> compiled_;
};

/// P(x) = sum_i lambda_i <phi_i, x>^n (bilinear pairing, no conjugation).
class PowerSumForm final : public SymmetricForm {
 public:
  PowerSumForm(unsigned degree, Index dim, Field field, std::vector<Scalar> lambdas, std::vector<Vector> functionals);

  Representation representation() const noexcept override { return Representation::power_sum; }

  const std::vector<Scalar>& lambdas() const noexcept { return lambdas_; }
  const std::vector<Vector>& functionals() const noexcept { return functionals_; }

 protected:
  Scalar do_multilinear(std::span<const Vector> args) const override;

 private:
  std::vector<Scalar> lambdas_;
  std::vector<Vector> functionals_;
};

/// x -> A_parent(fixed..., x, ..., x), a form of degree n - j.
class PartialApplicationForm final : public SymmetricForm {
 public:
  PartialApplicationForm(FormPtr parent, std::vector<Vector> fixed);

  Representation representation() const noexcept override { return Representation::partial_application; }

  const FormPtr& parent() const noexcept { return parent_; }
  const std::vector<Vector>& fixed() const noexcept { return fixed_; }

 protected:
  Scalar do_multilinear(std::span<const Vector> args) const override;

 private:
  FormPtr parent_;
  std::vector<Vector> fixed_;
};

/// t -> P(B t) on k coordinates, evaluated lazily through the parent.
class PullbackForm final : public SymmetricForm {
 public:
  PullbackForm(FormPtr parent, Matrix basis);

  Representation representation() const noexcept override { return Representation::pullback; }

  const FormPtr& parent() const noexcept { return parent_; }
  const Matrix& basis() const noexcept { return basis_; }

 protected:
  Scalar do_multilinear(std::span<const Vector> args) const override;
  Scalar do_evaluate(const Vector& t) const override;

 private:
  FormPtr parent_;
  Matrix basis_;
};

/// Independent route to A through 2^n evaluations of P:
/// A(x_1..x_n) = 1/(2^n n!) sum_eps eps_1...eps_n P(sum eps_i x_i).
/// Throws UnsupportedError for n > 8.
Scalar polarize_oracle(const SymmetricForm& form, std::span<const Vector> args);

/// Q(t) = P(B t) as a dense form on dim(B) variables; coefficient of t^m is
/// multinomial(n; m) * A(b_1^{m_1}, ..., b_k^{m_k}). Works for every representation.
DenseForm pullback(const SymmetricForm& form, const Matrix& basis);
DenseForm pullback(const SymmetricForm& form, const Subspace& subspace);

/// x^T B x as a dense form. B is symmetrized first.
DenseForm quadratic_from_matrix(const Matrix& b, Field field);

/// B_ij = A(e_i, e_j) for a degree-2 form.
Matrix quadratic_matrix(const SymmetricForm& form);

/// Standard basis vector of length d.
Vector unit(Index d, Index i);

}  // namespace homiso
