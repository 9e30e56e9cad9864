#pragma once

// Constructive null subspaces over C: pencil roots, greedy extension for
// quadratics, the recursive degree-n builder driven by the f_i bounds,
// simultaneous vanishing and null sequences.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "homiso/forms.hpp"
#include "homiso/subspace.hpp"

namespace homiso {

struct ConstructionConfig {
  double tolerance = kDefaultTolerance;
  double rank_tol = kDefaultRankTol;
  std::uint64_t rng_seed = 0;
  int max_root_iter = 100;
  /// Normalization for every internal tolerance check. Unset: sampled_scale of the input form.
  std::optional<double> reference_scale;

  void validate() const;
};

/// Roots of sum_p coeffs[p] * t^p (ascending powers, trailing coefficient
/// nonzero) from companion-matrix eigenvalues, Newton-polished.
std::vector<Scalar> polynomial_roots(std::span<const Scalar> coeffs, int max_iter = 100);

/// Coefficients of p(a) = P(x + a y) in ascending powers of a:
/// coefficient of a^p is C(n, p) A(x^{n-p}, y^p).
std::vector<Scalar> pencil_coefficients(const SymmetricForm& form, const Vector& x, const Vector& y);

/// Nonzero z in span{x, y} with |P(z)| <= tol * scale * |z|^n. Uses the
/// smallest-magnitude root of the pencil polynomial.
Vector zero_on_pencil(const SymmetricForm& form, const Vector& x, const Vector& y,
                      const ConstructionConfig& cfg = {});

/// Outcome of one greedy extension step.
struct ExtensionResult {
  std::optional<Subspace> extended;
  bool maximal() const noexcept { return !extended.has_value(); }
};

/// Grows a null subspace of a quadratic by one dimension inside
/// K = {x : A(h, x) = 0 for all h in H}, or reports that none exists.
ExtensionResult extend_null_quadratic(const SymmetricForm& form, const Subspace& null_subspace,
                                      const ConstructionConfig& cfg = {});

/// Greedy maximal null subspace of a quadratic, seeded by a pencil root on span{e_1, e_2}.
Subspace max_null_quadratic(const SymmetricForm& form, const ConstructionConfig& cfg = {});

/// k-dimensional null subspace of a degree-n form on C^d with d >= f(n, k).
/// Throws BoundError below the bound.
Subspace null_subspace(const FormPtr& form, Index k, const ConstructionConfig& cfg = {});

/// k-dimensional subspace on which every form vanishes; requires
/// d >= (f_{n_1} ∘ ... ∘ f_{n_p})(k).
Subspace simultaneous_null(std::span<const FormPtr> forms, Index k, const ConstructionConfig& cfg = {});

struct NullSequenceResult {
  std::vector<Vector> vectors;
  /// Half-open column ranges of the frame, one per vector.
  std::vector<std::pair<Index, Index>> block_ranges;
  double max_relative_residual = 0.0;
};

/// Block layout for m vectors of a degree-n sequence: [0,2) then blocks of
/// size k_seq(n, j) laid out cumulatively.
std::vector<std::pair<Index, Index>> null_sequence_blocks(unsigned degree, Index m);

/// Vectors x_1..x_m, x_j in the span of its block of `frame` columns, with
/// A(x_{i_1}, ..., x_{i_n}) = 0 for every choice of indices.
NullSequenceResult null_sequence(const FormPtr& form, const Matrix& frame, Index m,
                                 const ConstructionConfig& cfg = {});

/// Partial application and pullback that collapse nested wrappers so
/// evaluation always reaches the root form through at most two layers.
FormPtr make_partial(const FormPtr& form, std::vector<Vector> fixed);
FormPtr make_pullback(const FormPtr& form, const Matrix& basis);

}  // namespace homiso
