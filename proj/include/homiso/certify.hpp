#pragma once

#include <cstdint>
#include <optional>

#include "homiso/forms.hpp"
#include "homiso/subspace.hpp"

namespace homiso {

inline constexpr std::uint64_t kScaleSeed = 0x5eed;
inline constexpr int kScaleSamples = 64;

/// Evidence that P vanishes (or not) on a subspace.
struct CertReport {
  double max_abs_pullback_coeff = 0.0;
  double form_scale = 0.0;
  double relative_residual = 0.0;
  double tolerance = kDefaultTolerance;
  bool pass = true;
};

/// max |P(u)| over seeded random unit vectors of the form's field.
double sampled_scale(const SymmetricForm& form, std::uint64_t seed = kScaleSeed, int samples = kScaleSamples);

/// Normalization reference for certifying a k-dimensional subspace. Dense
/// forms: largest pullback coefficient on a random orthonormal k-frame.
/// Other representations: sampled_scale.
double form_scale(const SymmetricForm& form, Index k, std::uint64_t seed = kScaleSeed);

/// Q = P(B t); dense forms expand directly, others go through the multilinear form.
DenseForm restrict_to(const SymmetricForm& form, const Matrix& basis);

/// pass iff max |pullback coefficient| / scale <= tol. `scale` overrides the
/// form_scale reference. The empty subspace passes vacuously.
CertReport certify_null(const SymmetricForm& form, const Subspace& subspace, double tol = kDefaultTolerance,
                        std::optional<double> scale = std::nullopt);

}  // namespace homiso
