#include "homiso/complex_null.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homiso/bounds.hpp"
#include "homiso/certify.hpp"
#include "homiso/errors.hpp"
#include "homiso/random.hpp"

namespace homiso {

void ConstructionConfig::validate() const {
  if (!(tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
  if (!(rank_tol > 0.0)) throw ArgumentError("rank_tol must be positive");
  if (max_root_iter < 0) throw ArgumentError("max_root_iter must be non-negative");
  if (reference_scale && !(*reference_scale >= 0.0)) throw ArgumentError("reference_scale must be non-negative");
}

// ---------------------------------------------------------------------------
// Wrappers

FormPtr make_partial(const FormPtr& form, std::vector<Vector> fixed) {
  if (fixed.empty()) return form;
  if (const auto* pa = dynamic_cast<const PartialApplicationForm*>(form.get())) {
    std::vector<Vector> merged = pa->fixed();
    merged.insert(merged.end(), std::make_move_iterator(fixed.begin()), std::make_move_iterator(fixed.end()));
    return std::make_shared<PartialApplicationForm>(pa->parent(), std::move(merged));
  }
  if (const auto* pb = dynamic_cast<const PullbackForm*>(form.get())) {
    for (auto& v : fixed) v = pb->basis() * v;
    return make_pullback(make_partial(pb->parent(), std::move(fixed)), pb->basis());
  }
  return std::make_shared<PartialApplicationForm>(form, std::move(fixed));
}

FormPtr make_pullback(const FormPtr& form, const Matrix& basis) {
  if (const auto* pb = dynamic_cast<const PullbackForm*>(form.get())) {
    return std::make_shared<PullbackForm>(pb->parent(), pb->basis() * basis);
  }
  return std::make_shared<PullbackForm>(form, basis);
}

// ---------------------------------------------------------------------------
// Pencil roots

namespace {

Scalar horner(std::span<const Scalar> c, Scalar t, Scalar* derivative) {
  Scalar value = 0.0;
  Scalar slope = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    slope = slope * t + value;
    value = value * t + c[i];
  }
  if (derivative) *derivative = slope;
  return value;
}

void require_complex(const SymmetricForm& form) {
  if (form.field() != Field::complex) throw ArgumentError("complex field required");
}

bool near_zero(const SymmetricForm& form, const Vector& v, double scale, double tol) {
  return std::abs(form.evaluate(v)) <= tol * scale * std::pow(v.norm(), form.degree());
}

Vector pencil_root(const SymmetricForm& form, const Vector& x, const Vector& y, double scale,
                   const ConstructionConfig& cfg) {
  Matrix pair(x.size(), 2);
  pair << x, y;
  if (linalg::numerical_rank(pair, cfg.rank_tol) < 2) throw RankError("pencil vectors are linearly dependent");

  const double tol = cfg.tolerance;
  if (near_zero(form, x, scale, tol)) return x;
  if (near_zero(form, y, scale, tol)) return y;

  const auto coeffs = pencil_coefficients(form, x, y);
  const unsigned n = form.degree();
  const double bound = tol * scale * std::pow(x.norm() + y.norm(), n);
  if (std::all_of(coeffs.begin(), coeffs.end(), [&](Scalar c) { return std::abs(c) <= bound; })) return x;

  auto roots = polynomial_roots(coeffs, cfg.max_root_iter);
  std::sort(roots.begin(), roots.end(), [](Scalar a, Scalar b) { return std::abs(a) < std::abs(b); });
  for (Scalar alpha : roots) {
    Vector z = x + alpha * y;
    if (near_zero(form, z, scale, tol)) return z;
  }
  throw NumericalError("pencil root residual exceeds tolerance");
}

}  // namespace

std::vector<Scalar> polynomial_roots(std::span<const Scalar> coeffs, int max_iter) {
  std::size_t size = coeffs.size();
  while (size > 0 && coeffs[size - 1] == Scalar{}) --size;
  if (size < 2) return {};
  const auto c = coeffs.first(size);
  const Index degree = static_cast<Index>(size - 1);

  Matrix companion = Matrix::Zero(degree, degree);
  for (Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (Index i = 0; i < degree; ++i) companion(i, degree - 1) = -c[static_cast<std::size_t>(i)] / c[size - 1];
  Eigen::ComplexEigenSolver<Matrix> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver failed");

  std::vector<Scalar> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + degree);
  for (Scalar& r : roots) {
    Scalar best = r;
    double best_residual = std::abs(horner(c, r, nullptr));
    Scalar t = r;
    for (int it = 0; it < max_iter && best_residual > 0.0; ++it) {
      Scalar slope;
      const Scalar value = horner(c, t, &slope);
      if (slope == Scalar{}) break;
      const Scalar step = value / slope;
      t -= step;
      const double residual = std::abs(horner(c, t, nullptr));
      if (residual < best_residual) {
        best = t;
        best_residual = residual;
      }
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    r = best;
  }
  return roots;
}

std::vector<Scalar> pencil_coefficients(const SymmetricForm& form, const Vector& x, const Vector& y) {
  const unsigned n = form.degree();
  std::vector<Scalar> out(n + 1);
  std::vector<Vector> args;
  for (unsigned p = 0; p <= n; ++p) {
    args.assign(n - p, x);
    args.insert(args.end(), p, y);
    out[p] = static_cast<double>(bounds::binomial(n, p)) * form.multilinear(args);
  }
  return out;
}

Vector zero_on_pencil(const SymmetricForm& form, const Vector& x, const Vector& y, const ConstructionConfig& cfg) {
  cfg.validate();
  require_complex(form);
  if (x.size() != form.dim() || y.size() != form.dim()) throw ArgumentError("pencil vectors have wrong length");
  const double scale = cfg.reference_scale ? *cfg.reference_scale : sampled_scale(form);
  return pencil_root(form, x, y, scale, cfg);
}

// ---------------------------------------------------------------------------
// Quadratic greedy extension

namespace {

double scale_for(const SymmetricForm& form, const ConstructionConfig& cfg) {
  return cfg.reference_scale ? *cfg.reference_scale : sampled_scale(form);
}

void check_null(const SymmetricForm& form, const Matrix& basis, double scale, const ConstructionConfig& cfg,
                const char* where) {
  const auto report = certify_null(form, Subspace(basis, Field::complex, cfg.rank_tol), cfg.tolerance, scale);
  if (!report.pass) {
    throw NumericalError(std::string(where) + ": certification failed, relative residual " +
                         std::to_string(report.relative_residual));
  }
}

ExtensionResult extend_impl(const SymmetricForm& form, const Matrix& h, double scale, const ConstructionConfig& cfg) {
  const Index d = form.dim();
  const Index m = h.cols();
  Matrix rows(m, d);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < d; ++j) rows(i, j) = form.multilinear({h.col(i), unit(d, j)});
  }
  const Matrix kernel = linalg::null_space(rows, cfg.rank_tol, cfg.rank_tol * scale);
  const Matrix complement = linalg::complement_in(kernel, h);

  std::optional<Vector> extra;
  const double tol = cfg.tolerance;
  if (complement.cols() >= 2) {
    const Vector y = complement.col(0);
    const Vector z = complement.col(1);
    if (near_zero(form, y, scale, tol)) {
      extra = y;
    } else if (near_zero(form, z, scale, tol)) {
      extra = z;
    } else {
      extra = pencil_root(form, y, z, scale, cfg);
    }
  } else if (complement.cols() == 1 && near_zero(form, complement.col(0), scale, tol)) {
    extra = complement.col(0);
  }
  if (!extra) return {};

  Matrix grown(d, m + 1);
  grown << h, extra->normalized();
  grown = linalg::orthonormal_columns(grown);
  check_null(form, grown, scale, cfg, "extend_null_quadratic");
  return ExtensionResult{Subspace(std::move(grown), Field::complex, cfg.rank_tol)};
}

}  // namespace

ExtensionResult extend_null_quadratic(const SymmetricForm& form, const Subspace& null_subspace,
                                      const ConstructionConfig& cfg) {
  cfg.validate();
  require_complex(form);
  if (form.degree() != 2) throw ArgumentError("extend_null_quadratic requires a degree-2 form");
  if (null_subspace.ambient_dim() != form.dim()) throw ArgumentError("subspace ambient dimension mismatch");
  const double scale = scale_for(form, cfg);
  if (!certify_null(form, null_subspace, cfg.tolerance, scale).pass) {
    throw PreconditionError("extend_null_quadratic: input subspace is not null");
  }
  const Matrix h = null_subspace.dim() ? orthonormalize(null_subspace, cfg.rank_tol).basis() : Matrix(form.dim(), 0);
  return extend_impl(form, h, scale, cfg);
}

Subspace max_null_quadratic(const SymmetricForm& form, const ConstructionConfig& cfg) {
  cfg.validate();
  require_complex(form);
  if (form.degree() != 2) throw ArgumentError("max_null_quadratic requires a degree-2 form");
  const Index d = form.dim();
  if (d < 2) throw ArgumentError("max_null_quadratic requires dimension >= 2");
  const double scale = scale_for(form, cfg);

  Matrix h = pencil_root(form, unit(d, 0), unit(d, 1), scale, cfg).normalized();
  for (;;) {
    auto step = extend_impl(form, h, scale, cfg);
    if (step.maximal()) break;
    h = step.extended->basis();
  }
  return Subspace(std::move(h), Field::complex, cfg.rank_tol);
}

// ---------------------------------------------------------------------------
// Recursive construction

namespace {

Matrix simultaneous_build(std::span<const FormPtr> forms, std::span<const double> scales, Index k,
                          const ConstructionConfig& cfg);

// k-dimensional null subspace of `form` inside its first f(n, k) coordinates,
// returned as orthonormal columns in the form's own coordinates.
Matrix build(const FormPtr& form, Index k, double scale, const ConstructionConfig& cfg) {
  const unsigned n = form->degree();
  const Index w = form->dim();
  if (k == 0) return Matrix(w, 0);
  const auto required = static_cast<Index>(bounds::f(n, static_cast<bounds::Count>(k)));
  if (w < required) throw BoundError(static_cast<std::uint64_t>(required), static_cast<std::uint64_t>(w));

  if (n == 1) {
    Matrix row(1, required);
    for (Index j = 0; j < required; ++j) row(0, j) = form->multilinear({unit(w, j)});
    const Matrix kernel = linalg::null_space(row, cfg.rank_tol, cfg.rank_tol * scale);
    Matrix out = Matrix::Zero(w, k);
    out.topRows(required) = kernel.leftCols(k);
    return out;
  }

  if (k == 1) return pencil_root(*form, unit(w, 0), unit(w, 1), scale, cfg).normalized();

  // H1: a (k-1)-dimensional null subspace inside the first f(n, k-1) coordinates.
  const auto prev = static_cast<Index>(bounds::f(n, static_cast<bounds::Count>(k - 1)));
  const Matrix select = Matrix::Identity(w, prev);
  Matrix h1 = Matrix::Zero(w, k - 1);
  h1.topRows(prev) = build(make_pullback(form, select), k - 1, scale, cfg).topRows(prev);
  h1 = linalg::orthonormal_columns(h1);

  // N: complement of H1 in the working frame; its dimension is exactly the
  // layered composition value that the partials below consume.
  const Matrix frame = Matrix::Identity(w, required);
  const Matrix complement = linalg::complement_in(frame, h1);

  // Partials A(h^alpha, x^{n-|alpha|}), degree n-1 first.
  std::vector<FormPtr> partials;
  for (unsigned level = 1; level < n; ++level) {
    for (const auto& alpha : monomials(static_cast<std::size_t>(k - 1), level)) {
      std::vector<Vector> fixed;
      for (std::size_t slot : alpha.slots()) fixed.push_back(h1.col(static_cast<Index>(slot)));
      partials.push_back(make_pullback(make_partial(form, std::move(fixed)), complement));
    }
  }
  const std::vector<double> scales(partials.size(), scale);
  const Matrix plane = complement * simultaneous_build(partials, scales, 2, cfg);

  const Vector y = pencil_root(*form, plane.col(0), plane.col(1), scale, cfg);
  Matrix out(w, k);
  out << h1, y.normalized();
  out = linalg::orthonormal_columns(out);
  check_null(*form, out, scale, cfg, "null_subspace");
  return out;
}

Matrix simultaneous_build(std::span<const FormPtr> forms, std::span<const double> scales, Index k,
                          const ConstructionConfig& cfg) {
  if (forms.size() == 1) return build(forms.front(), k, scales.front(), cfg);
  std::vector<unsigned> rest_degrees;
  for (const auto& f : forms.subspan(1)) rest_degrees.push_back(f->degree());
  const auto target = static_cast<Index>(bounds::default_table().compose(rest_degrees, static_cast<bounds::Count>(k)));

  const Matrix first = build(forms.front(), target, scales.front(), cfg);
  std::vector<FormPtr> rest;
  rest.reserve(forms.size() - 1);
  for (const auto& f : forms.subspan(1)) rest.push_back(make_pullback(f, first));
  return first * simultaneous_build(rest, scales.subspan(1), k, cfg);
}

void require_common(std::span<const FormPtr> forms) {
  if (forms.empty()) throw ArgumentError("at least one form is required");
  for (const auto& f : forms) {
    if (!f) throw ArgumentError("null form pointer");
    require_complex(*f);
    if (f->dim() != forms.front()->dim()) throw ArgumentError("forms must share the ambient dimension");
  }
}

}  // namespace

Subspace null_subspace(const FormPtr& form, Index k, const ConstructionConfig& cfg) {
  return simultaneous_null(std::span<const FormPtr>(&form, 1), k, cfg);
}

Subspace simultaneous_null(std::span<const FormPtr> forms, Index k, const ConstructionConfig& cfg) {
  cfg.validate();
  require_common(forms);
  if (k < 0) throw ArgumentError("target dimension must be non-negative");
  const Index d = forms.front()->dim();
  if (k == 0) return Subspace::empty(d, Field::complex);

  std::vector<unsigned> degrees;
  for (const auto& f : forms) degrees.push_back(f->degree());
  const auto required = bounds::default_table().compose(degrees, static_cast<bounds::Count>(k));
  if (static_cast<bounds::Count>(d) < required) throw BoundError(required, static_cast<std::uint64_t>(d));

  std::vector<double> scales;
  for (const auto& f : forms) scales.push_back(scale_for(*f, cfg));

  // Work in a seeded random unitary frame of the required size.
  Rng rng(cfg.rng_seed);
  const Matrix frame = random_frame(d, static_cast<Index>(required), Field::complex, rng);
  std::vector<FormPtr> local;
  for (const auto& f : forms) local.push_back(make_pullback(f, frame));

  Subspace result(frame * simultaneous_build(local, scales, k, cfg), Field::complex, cfg.rank_tol);
  result = orthonormalize(result, cfg.rank_tol);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto report = cfg.reference_scale ? certify_null(*forms[i], result, cfg.tolerance, *cfg.reference_scale)
                                            : certify_null(*forms[i], result, cfg.tolerance);
    if (!report.pass) {
      throw NumericalError("constructed subspace failed certification, relative residual " +
                           std::to_string(report.relative_residual));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Null sequences

std::vector<std::pair<Index, Index>> null_sequence_blocks(unsigned degree, Index m) {
  if (degree < 2) throw ArgumentError("null sequences require degree >= 2");
  if (m < 1) throw ArgumentError("null sequences require m >= 1");
  std::vector<std::pair<Index, Index>> blocks{{0, 2}};
  Index next = 2;
  for (Index j = 2; j <= m; ++j) {
    const auto size = bounds::k_seq(degree, static_cast<bounds::Count>(j));
    const Index end = static_cast<Index>(bounds::checked_add(static_cast<bounds::Count>(next), size));
    blocks.emplace_back(next, end);
    next = end;
  }
  return blocks;
}

NullSequenceResult null_sequence(const FormPtr& form, const Matrix& frame, Index m, const ConstructionConfig& cfg) {
  cfg.validate();
  if (!form) throw ArgumentError("null form pointer");
  require_complex(*form);
  const unsigned n = form->degree();
  const Index d = form->dim();
  if (frame.rows() != d) throw ArgumentError("frame vectors have wrong length");

  NullSequenceResult result;
  result.block_ranges = null_sequence_blocks(n, m);
  const Index needed = result.block_ranges.back().second;
  if (frame.cols() < needed) {
    throw BoundError(static_cast<std::uint64_t>(needed), static_cast<std::uint64_t>(frame.cols()));
  }
  if (linalg::numerical_rank(frame.leftCols(needed), cfg.rank_tol) != needed) {
    throw RankError("frame vectors are linearly dependent");
  }
  const double scale = scale_for(*form, cfg);

  const auto [s0, e0] = result.block_ranges.front();
  result.vectors.push_back(pencil_root(*form, frame.col(s0), frame.col(s0 + 1), scale, cfg).normalized());

  for (Index j = 2; j <= m; ++j) {
    const auto [start, end] = result.block_ranges[static_cast<std::size_t>(j - 1)];
    const Matrix block = linalg::orthonormal_columns(Matrix(frame.middleCols(start, end - start)));

    std::vector<FormPtr> partials;
    for (unsigned level = 1; level < n; ++level) {
      for (const auto& alpha : monomials(static_cast<std::size_t>(j - 1), level)) {
        std::vector<Vector> fixed;
        for (std::size_t slot : alpha.slots()) fixed.push_back(result.vectors[slot]);
        partials.push_back(make_pullback(make_partial(form, std::move(fixed)), block));
      }
    }
    const std::vector<double> scales(partials.size(), scale);
    const Matrix plane = block * simultaneous_build(partials, scales, 2, cfg);
    result.vectors.push_back(pencil_root(*form, plane.col(0), plane.col(1), scale, cfg).normalized());

    const Vector& x = result.vectors.back();
    if ((x - block * (block.adjoint() * x)).norm() > cfg.tolerance) {
      throw NumericalError("null sequence vector left its block");
    }
  }

  // Every A(x_{i_1}, ..., x_{i_n}) over multisets of the chosen vectors.
  std::vector<Vector> args;
  for (const auto& alpha : monomials(result.vectors.size(), n)) {
    args.clear();
    for (std::size_t slot : alpha.slots()) args.push_back(result.vectors[slot]);
    const double value = std::abs(form->multilinear(args));
    const double relative = scale > 0.0 ? value / scale : (value > 0.0 ? INFINITY : 0.0);
    result.max_relative_residual = std::max(result.max_relative_residual, relative);
  }
  if (result.max_relative_residual > cfg.tolerance) {
    throw NumericalError("null sequence failed certification, relative residual " +
                         std::to_string(result.max_relative_residual));
  }
  return result;
}

}  // namespace homiso
