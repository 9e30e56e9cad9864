#include "homiso/certify.hpp"

#include <cmath>
#include <limits>

#include "homiso/errors.hpp"
#include "homiso/random.hpp"

namespace homiso {

double sampled_scale(const SymmetricForm& form, std::uint64_t seed, int samples) {
  if (form.dim() == 0) return 0.0;
  Rng rng(seed);
  double out = 0.0;
  for (int s = 0; s < samples; ++s) {
    out = std::max(out, std::abs(form.evaluate(random_unit_vector(form.dim(), form.field(), rng))));
  }
  return out;
}

DenseForm restrict_to(const SymmetricForm& form, const Matrix& basis) {
  if (const auto* dense = dynamic_cast<const DenseForm*>(&form)) return dense->substitute(basis);
  return pullback(form, basis);
}

double form_scale(const SymmetricForm& form, Index k, std::uint64_t seed) {
  if (form.representation() != Representation::dense) return sampled_scale(form, seed);
  if (k <= 0 || form.dim() == 0) return 0.0;
  Rng rng(seed);
  const Matrix frame = random_frame(form.dim(), std::min(k, form.dim()), form.field(), rng);
  return restrict_to(form, frame).max_abs_coefficient();
}

CertReport certify_null(const SymmetricForm& form, const Subspace& subspace, double tol, std::optional<double> scale) {
  if (subspace.ambient_dim() != form.dim()) throw ArgumentError("certify_null: subspace ambient dimension mismatch");
  CertReport report;
  report.tolerance = tol;
  if (subspace.dim() == 0) return report;

  report.max_abs_pullback_coeff = restrict_to(form, subspace.basis()).max_abs_coefficient();
  report.form_scale = scale ? *scale : form_scale(form, subspace.dim());
  if (report.form_scale > 0.0) {
    report.relative_residual = report.max_abs_pullback_coeff / report.form_scale;
  } else {
    report.relative_residual = report.max_abs_pullback_coeff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  report.pass = report.relative_residual <= tol;
  return report;
}

}  // namespace homiso
