#include "homiso/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "homiso/bounds.hpp"
#include "homiso/certify.hpp"
#include "homiso/complex_null.hpp"
#include "homiso/errors.hpp"
#include "homiso/io.hpp"
#include "homiso/random.hpp"
#include "homiso/real_quadratic.hpp"

namespace homiso::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  bool json = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "RNG seed (default: $HOMISO_SEED, else 0)");
  app->add_option("--tol", c.tol, "relative tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--json", c.json, "emit a JSON report");
}

json base_report(const std::string& command, const Common& c) {
  return json{{"command", command}, {"seed", c.seed}, {"tolerance", c.tol}};
}

void print_text(const json& node, const std::string& prefix, std::ostream& out) {
  for (const auto& [key, value] : node.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (key == "claims") {
      for (const auto& claim : value) {
        out << (claim["pass"].get<bool>() ? "PASS  " : "FAIL  ") << claim["name"].get<std::string>();
        if (!claim["detail"].get<std::string>().empty()) out << "  (" << claim["detail"].get<std::string>() << ")";
        out << '\n';
      }
    } else if (value.is_object()) {
      print_text(value, name, out);
    } else if (value.is_array() && (value.size() > 12 || (!value.empty() && value[0].is_array()))) {
      out << name << ": <" << value.size() << " entries>\n";
    } else {
      out << name << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
}

void emit(json report, const Common& c, Clock::time_point start, std::ostream& out) {
  report["wall_clock_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (c.json) {
    out << report.dump(2) << '\n';
  } else {
    print_text(report, "", out);
  }
}

json vector_to_json(const Vector& v, Field field) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(io::scalar_to_json(v(i), field));
  return arr;
}

struct LoadedForm {
  FormPtr form;
  std::string digest;
};

LoadedForm describe(FormPtr form) {
  return {form, io::digest(io::form_to_json(*form).dump())};
}

LoadedForm load_form(const std::string& path) {
  return describe(io::form_from_json(io::read_json_file(path)));
}

struct FormSource {
  std::string path;
  bool random = false;
  unsigned degree = 0;
  Index dim = 0;

  void attach(CLI::App* app) {
    app->add_option("--form", path, "form JSON file");
    app->add_flag("--random", random, "draw a random dense complex form");
    app->add_option("--degree", degree, "degree of the random form")->check(CLI::PositiveNumber);
    app->add_option("--dim", dim, "dimension of the random form")->check(CLI::PositiveNumber);
  }

  LoadedForm get(std::uint64_t seed) const {
    if (random == !path.empty()) throw UsageError("give exactly one of --form or --random");
    if (!random) return load_form(path);
    if (degree == 0 || dim == 0) throw UsageError("--random needs --degree and --dim");
    Rng rng(seed);
    return describe(std::make_shared<DenseForm>(random_dense_form(degree, dim, Field::complex, rng)));
  }
};

void require_complex(const SymmetricForm& form) {
  if (form.field() != Field::complex) throw UsageError("complex field required");
}

ConstructionConfig config(const Common& c) {
  ConstructionConfig cfg;
  cfg.tolerance = c.tol;
  cfg.rng_seed = c.seed;
  return cfg;
}

json claims_to_json(const std::vector<real::Claim>& claims) {
  json arr = json::array();
  for (const auto& claim : claims) arr.push_back({{"name", claim.name}, {"pass", claim.pass}, {"detail", claim.detail}});
  return arr;
}

bool all_pass(const std::vector<real::Claim>& claims) {
  return std::all_of(claims.begin(), claims.end(), [](const real::Claim& cl) { return cl.pass; });
}

json cert_to_json(const CertReport& cert) {
  return json{{"max_abs_pullback_coeff", cert.max_abs_pullback_coeff},
              {"form_scale", cert.form_scale},
              {"relative_residual", cert.relative_residual},
              {"pass", cert.pass}};
}

// ---- bounds ----------------------------------------------------------------

struct BoundsArgs {
  unsigned degree = 0;
  unsigned max_k = 0;
};

json bound_cell(const std::function<bounds::Count()>& compute) {
  try {
    return compute();
  } catch (const OverflowError&) {
    return "overflow";
  }
}

void print_table(const std::string& title, const std::vector<std::pair<std::string, json>>& rows, unsigned first_k,
                 std::ostream& out) {
  std::size_t label_w = 0;
  std::size_t cell_w = 1;
  for (const auto& [label, cells] : rows) {
    label_w = std::max(label_w, label.size());
    for (const auto& cell : cells) cell_w = std::max(cell_w, cell.is_string() ? cell.get<std::string>().size() : cell.dump().size());
  }
  out << title << '\n' << std::setw(static_cast<int>(label_w)) << "k";
  if (!rows.empty()) {
    for (std::size_t i = 0; i < rows.front().second.size(); ++i) {
      out << "  " << std::setw(static_cast<int>(cell_w)) << first_k + i;
    }
  }
  out << '\n';
  for (const auto& [label, cells] : rows) {
    out << std::setw(static_cast<int>(label_w)) << label;
    for (const auto& cell : cells) {
      out << "  " << std::setw(static_cast<int>(cell_w)) << (cell.is_string() ? cell.get<std::string>() : cell.dump());
    }
    out << '\n';
  }
}

int cmd_bounds(const BoundsArgs& a, const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  std::vector<std::pair<std::string, json>> f_rows;
  for (unsigned i = 1; i <= a.degree; ++i) {
    json cells = json::array();
    for (unsigned k = 1; k <= a.max_k; ++k) cells.push_back(bound_cell([&] { return bounds::f(i, k); }));
    f_rows.emplace_back("f_" + std::to_string(i), std::move(cells));
  }
  std::vector<std::pair<std::string, json>> delta_rows;
  for (unsigned j = 1; j < a.degree; ++j) {
    json cells = json::array();
    for (unsigned k = 2; k <= a.max_k; ++k) cells.push_back(bound_cell([&] { return bounds::delta(a.degree, j, k); }));
    delta_rows.emplace_back("j=" + std::to_string(j), std::move(cells));
  }
  if (!c.json) {
    print_table("f_i(k)", f_rows, 1, out);
    if (!delta_rows.empty() && a.max_k >= 2) {
      print_table("delta(" + std::to_string(a.degree) + ", j, k)", delta_rows, 2, out);
    }
    return kOk;
  }
  json report = base_report("bounds", c);
  report["degree"] = a.degree;
  report["max_k"] = a.max_k;
  json f = json::array();
  for (unsigned i = 0; i < f_rows.size(); ++i) f.push_back({{"i", i + 1}, {"values", f_rows[i].second}});
  json delta = json::array();
  for (unsigned j = 0; j < delta_rows.size(); ++j) delta.push_back({{"j", j + 1}, {"values", delta_rows[j].second}});
  report["f"] = std::move(f);
  report["delta"] = std::move(delta);
  report["delta_first_k"] = 2;
  emit(std::move(report), c, start, out);
  return kOk;
}

// ---- construct / verify / simultaneous / nullseq ----------------------------

struct ConstructArgs {
  FormSource source;
  Index k = 0;
  std::string out_path;
};

int cmd_construct(const ConstructArgs& a, const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  const auto [form, digest] = a.source.get(c.seed);
  require_complex(*form);
  const auto required = bounds::f(form->degree(), static_cast<bounds::Count>(a.k));
  const Subspace subspace = null_subspace(form, a.k, config(c));
  const CertReport cert = certify_null(*form, subspace, c.tol);
  json report = base_report("construct", c);
  report["inputs_digest"] = digest;
  report["degree"] = form->degree();
  report["k"] = a.k;
  report["dimension_used"] = form->dim();
  report["bound_required"] = required;
  report["residuals"] = {{"max_relative", cert.relative_residual}};
  report["certified"] = cert.pass;
  report["subspace"] = io::subspace_to_json(subspace);
  if (!a.out_path.empty()) {
    io::write_json_file(a.out_path, io::subspace_to_json(subspace));
    report["outputs"] = {a.out_path};
  }
  emit(std::move(report), c, start, out);
  return cert.pass ? kOk : kNumerical;
}

struct VerifyArgs {
  std::string form_path;
  std::string subspace_path;
};

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  const auto [form, digest] = load_form(a.form_path);
  const auto sub_doc = io::read_json_file(a.subspace_path);
  const Subspace subspace = io::subspace_from_json(sub_doc);
  if (subspace.ambient_dim() != form->dim()) {
    throw UsageError("subspace ambient dimension " + std::to_string(subspace.ambient_dim()) +
                     " does not match form dimension " + std::to_string(form->dim()));
  }
  const CertReport cert = certify_null(*form, subspace, c.tol);
  json report = base_report("verify", c);
  report["inputs_digest"] = io::digest(digest + sub_doc.dump());
  report["k"] = subspace.dim();
  report["dimension_used"] = form->dim();
  report["residuals"] = {{"max_relative", cert.relative_residual}};
  report["certificate"] = cert_to_json(cert);
  emit(std::move(report), c, start, out);
  return cert.pass ? kOk : kNumerical;
}

struct SimultaneousArgs {
  std::vector<std::string> form_paths;
  bool random = false;
  std::vector<unsigned> degrees;
  Index dim = 0;
  Index k = 0;
  std::string out_path;
};

int cmd_simultaneous(const SimultaneousArgs& a, const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  std::vector<FormPtr> forms;
  if (a.random == !a.form_paths.empty()) throw UsageError("give --form (repeatable) or --random");
  if (a.random) {
    if (a.degrees.empty() || a.dim == 0) throw UsageError("--random needs --degrees and --dim");
    Rng rng(c.seed);
    for (unsigned n : a.degrees) {
      if (n == 0) throw UsageError("degrees must be positive");
      forms.push_back(std::make_shared<DenseForm>(random_dense_form(n, a.dim, Field::complex, rng)));
    }
  } else {
    for (const auto& path : a.form_paths) forms.push_back(load_form(path).form);
  }
  std::string digests;
  std::vector<unsigned> degrees;
  for (const auto& form : forms) {
    require_complex(*form);
    digests += describe(form).digest;
    degrees.push_back(form->degree());
  }
  const auto required = bounds::default_table().compose(degrees, static_cast<bounds::Count>(a.k));
  const Subspace subspace = simultaneous_null(forms, a.k, config(c));
  json per_form = json::array();
  double worst = 0.0;
  bool pass = true;
  for (const auto& form : forms) {
    const CertReport cert = certify_null(*form, subspace, c.tol);
    per_form.push_back(cert.relative_residual);
    worst = std::max(worst, cert.relative_residual);
    pass = pass && cert.pass;
  }
  json report = base_report("simultaneous", c);
  report["inputs_digest"] = io::digest(digests);
  report["degrees"] = degrees;
  report["k"] = a.k;
  report["dimension_used"] = forms.front()->dim();
  report["bound_required"] = required;
  report["residuals"] = {{"max_relative", worst}, {"per_form", per_form}};
  report["certified"] = pass;
  report["subspace"] = io::subspace_to_json(subspace);
  if (!a.out_path.empty()) {
    io::write_json_file(a.out_path, io::subspace_to_json(subspace));
    report["outputs"] = {a.out_path};
  }
  emit(std::move(report), c, start, out);
  return pass ? kOk : kNumerical;
}

json sequence_report(const FormPtr& form, Index m, const Common& c, std::vector<real::Claim>* claims) {
  require_complex(*form);
  const Index d = form->dim();
  const auto blocks = null_sequence_blocks(form->degree(), m);
  const NullSequenceResult result = null_sequence(form, Matrix::Identity(d, d), m, config(c));
  json vectors = json::array();
  json block_json = json::array();
  bool in_blocks = true;
  for (std::size_t j = 0; j < result.vectors.size(); ++j) {
    const auto& v = result.vectors[j];
    const auto [lo, hi] = result.block_ranges[j];
    vectors.push_back(vector_to_json(v, Field::complex));
    block_json.push_back({lo, hi});
    const double outside = v.head(lo).norm() + v.tail(d - hi).norm();
    in_blocks = in_blocks && outside <= c.tol * v.norm();
  }
  json report;
  report["degree"] = form->degree();
  report["m"] = m;
  report["dimension_used"] = d;
  report["bound_required"] = blocks.back().second;
  report["blocks"] = std::move(block_json);
  report["vectors"] = std::move(vectors);
  report["residuals"] = {{"max_relative", result.max_relative_residual}};
  report["certified"] = in_blocks && result.max_relative_residual <= c.tol;
  if (claims) {
    claims->push_back({"vectors lie in their declared blocks", in_blocks, ""});
    std::ostringstream detail;
    detail << "max relative residual " << result.max_relative_residual;
    claims->push_back({"every n-fold multilinear value vanishes", result.max_relative_residual <= c.tol, detail.str()});
  }
  return report;
}

struct NullseqArgs {
  FormSource source;
  Index m = 0;
};

int cmd_nullseq(const NullseqArgs& a, const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  const auto [form, digest] = a.source.get(c.seed);
  json report = base_report("nullseq", c);
  report.update(sequence_report(form, a.m, c, nullptr));
  report["inputs_digest"] = digest;
  const bool ok = report["certified"].get<bool>();
  emit(std::move(report), c, start, out);
  return ok ? kOk : kNumerical;
}

// ---- real --------------------------------------------------------------------

struct RealArgs {
  std::string matrix_path;
  std::vector<Index> planted;
  std::string subspace_path;
  std::string out_path;
  int count = 20;
};

struct LoadedMatrix {
  real::RealQuadraticForm form;
  std::string digest;
};

LoadedMatrix load_matrix(const RealArgs& a, const Common& c) {
  if (a.planted.empty() == a.matrix_path.empty()) throw UsageError("give exactly one of --matrix or --planted");
  Eigen::MatrixXd m;
  if (!a.matrix_path.empty()) {
    m = io::matrix_from_json(io::read_json_file(a.matrix_path));
  } else {
    if (a.planted.size() != 3) throw UsageError("--planted takes p,q,z");
    for (Index v : a.planted) {
      if (v < 0) throw UsageError("--planted entries must be nonnegative");
    }
    if (a.planted[0] + a.planted[1] + a.planted[2] == 0) throw UsageError("--planted needs a positive dimension");
    Rng rng(c.seed);
    m = real::planted_signature(a.planted[0], a.planted[1], a.planted[2], rng);
  }
  real::RealQuadraticForm form(m);
  return {form, io::digest(io::matrix_to_json(form.matrix()).dump())};
}

json signature_json(const real::Signature& s) {
  return json{{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}, {"max_iso_dim", s.max_iso_dim()}};
}

json verdict_json(const real::MaximalityVerdict& v) {
  json eig = json::array();
  for (Index i = 0; i < v.compressed_eigenvalues.size(); ++i) eig.push_back(v.compressed_eigenvalues(i));
  json out{{"is_maximal", v.is_maximal}, {"orthogonal_dim", v.orthogonal_dim}, {"compressed_eigenvalues", eig}};
  if (v.witness) {
    json w = json::array();
    for (Index i = 0; i < v.witness->size(); ++i) w.push_back((*v.witness)(i));
    out["witness"] = std::move(w);
  }
  return out;
}

int cmd_real(const std::string& sub, const RealArgs& a, const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  const auto [form, digest] = load_matrix(a, c);
  const real::Options opts{c.tol, kDefaultRankTol};
  const real::Signature sig = real::signature(form);
  json report = base_report("real " + sub, c);
  report["inputs_digest"] = digest;
  report["dimension_used"] = form.dim();
  report["signature"] = signature_json(sig);
  int code = kOk;

  if (sub == "maximal") {
    const Subspace m = real::maximal_isotropic(form);
    const CertReport cert = certify_null(*form.form(), m, c.tol);
    const auto verdict = real::is_maximal(form, m, opts);
    report["k"] = m.dim();
    report["residuals"] = {{"max_relative", cert.relative_residual}};
    report["maximality"] = verdict_json(verdict);
    report["subspace"] = io::subspace_to_json(m);
    if (!a.out_path.empty()) {
      io::write_json_file(a.out_path, io::subspace_to_json(m));
      report["outputs"] = {a.out_path};
    }
    code = cert.pass && verdict.is_maximal ? kOk : kNumerical;
  } else if (sub == "check") {
    if (a.subspace_path.empty()) throw UsageError("check needs --subspace");
    const auto sub_doc = io::read_json_file(a.subspace_path);
    const Subspace parsed = io::subspace_from_json(sub_doc);
    if (parsed.ambient_dim() != form.dim()) throw UsageError("subspace ambient dimension does not match matrix");
    if (parsed.basis().imag().cwiseAbs().sum() != 0.0) throw UsageError("check needs a real subspace");
    const Subspace m = Subspace::from_real(parsed.real_basis());
    report["inputs_digest"] = io::digest(digest + sub_doc.dump());
    const CertReport cert = certify_null(*form.form(), m, c.tol);
    report["k"] = m.dim();
    report["residuals"] = {{"max_relative", cert.relative_residual}};
    report["null"] = cert.pass;
    if (cert.pass) {
      report["maximality"] = verdict_json(real::is_maximal(form, m, opts));
    } else {
      code = kNumerical;
    }
  } else if (sub == "restarts") {
    if (a.count < 1) throw UsageError("--count must be positive");
    json dims = json::array();
    bool invariant = true;
    bool bounded = true;
    for (int r = 0; r < a.count; ++r) {
      std::vector<Index> trace;
      const std::uint64_t restart_seed = c.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(r) + 1;
      const Subspace m = real::greedy_maximal(form, std::nullopt, restart_seed, opts, &trace);
      dims.push_back(m.dim());
      invariant = invariant && m.dim() == sig.max_iso_dim();
      for (Index t : trace) bounded = bounded && t <= sig.max_iso_dim();
    }
    report["restarts"] = a.count;
    report["dims"] = std::move(dims);
    report["invariant"] = invariant;
    report["intermediate_dims_bounded"] = bounded;
    code = invariant && bounded ? kOk : kNumerical;
  }
  emit(std::move(report), c, start, out);
  return code;
}

// ---- examples ------------------------------------------------------------------

struct ExampleArgs {
  Index k = 0;
  Index dim = 0;
  unsigned n = 0;
  Index m = 0;
  int restarts = 20;
  int samples = 1000;
};

int cmd_examples(const std::string& name, const ExampleArgs& a, const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  const real::Options opts{c.tol, kDefaultRankTol};
  json report = base_report("examples " + name, c);
  std::vector<real::Claim> claims;
  if (name == "pk") {
    if (a.restarts < 0) throw UsageError("--restarts must be nonnegative");
    const auto ex = real::example_pk(a.k, a.dim, a.restarts, c.seed, opts);
    report["k"] = a.k;
    report["dimension_used"] = a.dim;
    report["residuals"] = {{"max_relative", ex.cert.relative_residual}};
    report["restart_dims"] = ex.restart_dims;
    report["compressed_eigenvalues"] = verdict_json(ex.verdict)["compressed_eigenvalues"];
    claims = ex.claims;
  } else if (name == "higher") {
    if (a.samples < 1) throw UsageError("--samples must be positive");
    const auto ex = real::example_higher_degree(a.n, a.k, a.dim, c.seed, a.samples, opts);
    report["n"] = a.n;
    report["k"] = a.k;
    report["dimension_used"] = a.dim;
    report["maximal_dims"] = ex.maximal_dims;
    report["residuals"] = {
        {"max_relative", std::max(ex.hyperplane_cert.relative_residual, ex.coordinate_cert.relative_residual)}};
    report["samples"] = ex.samples;
    claims = ex.claims;
  } else {
    if (a.n < 2) throw UsageError("--n must be >= 2");
    if (a.m < 1) throw UsageError("--m must be positive");
    Rng rng(c.seed);
    const auto loaded = describe(std::make_shared<DenseForm>(random_dense_form(a.n, a.dim, Field::complex, rng)));
    report.update(sequence_report(loaded.form, a.m, c, &claims));
    report["inputs_digest"] = loaded.digest;
    report.erase("vectors");
  }
  report["claims"] = claims_to_json(claims);
  emit(std::move(report), c, start, out);
  return all_pass(claims) ? kOk : kNumerical;
}

std::uint64_t env_seed() {
  const char* raw = std::getenv("HOMISO_SEED");
  if (!raw || !*raw) return 0;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw UsageError(std::string("HOMISO_SEED is not an unsigned integer: ") + raw);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Common common;
  try {
    common.seed = env_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Null subspaces of homogeneous forms"};
  app.name("homiso");
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, std::function<int()>>> leaves;

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "print f_i(k) and delta(n, j, k) tables");
  bounds->add_option("--degree", bounds_args.degree)->required()->check(CLI::PositiveNumber);
  bounds->add_option("--max-k", bounds_args.max_k)->required()->check(CLI::PositiveNumber);
  add_common(bounds, common);
  leaves.emplace_back(bounds, [&] { return cmd_bounds(bounds_args, common, out); });

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "build a certified k-dimensional null subspace");
  construct_args.source.attach(construct);
  construct->add_option("--k", construct_args.k)->required()->check(CLI::PositiveNumber);
  construct->add_option("--out", construct_args.out_path, "write the subspace JSON here");
  add_common(construct, common);
  leaves.emplace_back(construct, [&] { return cmd_construct(construct_args, common, out); });

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "certify that a form vanishes on a subspace");
  verify->add_option("--form", verify_args.form_path)->required();
  verify->add_option("--subspace", verify_args.subspace_path)->required();
  add_common(verify, common);
  leaves.emplace_back(verify, [&] { return cmd_verify(verify_args, common, out); });

  SimultaneousArgs sim_args;
  auto* sim = app.add_subcommand("simultaneous", "common null subspace of several forms");
  sim->add_option("--form", sim_args.form_paths, "form JSON file (repeatable)");
  sim->add_flag("--random", sim_args.random, "draw random dense complex forms");
  sim->add_option("--degrees", sim_args.degrees, "degrees of the random forms")->delimiter(',');
  sim->add_option("--dim", sim_args.dim)->check(CLI::PositiveNumber);
  sim->add_option("--k", sim_args.k)->required()->check(CLI::PositiveNumber);
  sim->add_option("--out", sim_args.out_path);
  add_common(sim, common);
  leaves.emplace_back(sim, [&] { return cmd_simultaneous(sim_args, common, out); });

  NullseqArgs nullseq_args;
  auto* nullseq = app.add_subcommand("nullseq", "vectors whose every n-fold multilinear value vanishes");
  nullseq_args.source.attach(nullseq);
  nullseq->add_option("--m", nullseq_args.m)->required()->check(CLI::PositiveNumber);
  add_common(nullseq, common);
  leaves.emplace_back(nullseq, [&] { return cmd_nullseq(nullseq_args, common, out); });

  RealArgs real_args;
  auto* real_cmd = app.add_subcommand("real", "real quadratic forms x^T B x");
  real_cmd->require_subcommand(1);
  for (const char* name : {"signature", "maximal", "check", "restarts"}) {
    auto* leaf = real_cmd->add_subcommand(name);
    leaf->add_option("--matrix", real_args.matrix_path, "matrix JSON file");
    leaf->add_option("--planted", real_args.planted, "random form with inertia p,q,z")->delimiter(',');
    if (std::string(name) == "check") leaf->add_option("--subspace", real_args.subspace_path)->required();
    if (std::string(name) == "maximal") leaf->add_option("--out", real_args.out_path);
    if (std::string(name) == "restarts") leaf->add_option("--count", real_args.count, "number of restarts");
    add_common(leaf, common);
    leaves.emplace_back(leaf, [&, name] { return cmd_real(name, real_args, common, out); });
  }

  ExampleArgs ex_args;
  auto* examples = app.add_subcommand("examples", "replicate the worked examples");
  examples->require_subcommand(1);
  {
    auto* pk = examples->add_subcommand("pk", "quadratic: every maximal null subspace has dimension k");
    pk->add_option("--k", ex_args.k)->required()->check(CLI::PositiveNumber);
    pk->add_option("--dim", ex_args.dim)->required()->check(CLI::PositiveNumber);
    pk->add_option("--restarts", ex_args.restarts);
    add_common(pk, common);
    leaves.emplace_back(pk, [&] { return cmd_examples("pk", ex_args, common, out); });

    auto* higher = examples->add_subcommand("higher", "degree >= 3: maximal null subspaces of unequal dimension");
    higher->add_option("--n", ex_args.n)->required()->check(CLI::PositiveNumber);
    higher->add_option("--k", ex_args.k)->required()->check(CLI::PositiveNumber);
    higher->add_option("--dim", ex_args.dim)->required()->check(CLI::PositiveNumber);
    higher->add_option("--samples", ex_args.samples);
    add_common(higher, common);
    leaves.emplace_back(higher, [&] { return cmd_examples("higher", ex_args, common, out); });

    auto* seq = examples->add_subcommand("nullseq", "null sequence of a random form");
    seq->add_option("--n", ex_args.n)->required()->check(CLI::PositiveNumber);
    seq->add_option("--m", ex_args.m)->required()->check(CLI::PositiveNumber);
    seq->add_option("--dim", ex_args.dim)->required()->check(CLI::PositiveNumber);
    add_common(seq, common);
    leaves.emplace_back(seq, [&] { return cmd_examples("nullseq", ex_args, common, out); });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto fail = [&](int code, const std::string& message) {
    err << "error: " << message << '\n';
    if (common.json) {
      out << json{{"error", message}, {"exit_code", code}}.dump(2) << '\n';
    }
    return code;
  };

  try {
    for (const auto& [leaf, action] : leaves) {
      if (leaf->parsed()) return action();
    }
    return fail(kUsage, "no command given");
  } catch (const BoundError& e) {
    return fail(kBound, "requires dimension ≥ " + std::to_string(e.required()) + " (have " +
                            std::to_string(e.actual()) + ")");
  } catch (const OverflowError& e) {
    return fail(kBound, e.what());
  } catch (const NumericalError& e) {
    return fail(kNumerical, e.what());
  } catch (const UsageError& e) {
    return fail(kUsage, e.what());
  } catch (const ParseError& e) {
    return fail(kUsage, e.what());
  } catch (const ArgumentError& e) {
    return fail(kUsage, e.what());
  } catch (const RankError& e) {
    return fail(kUsage, e.what());
  } catch (const PreconditionError& e) {
    return fail(kUsage, e.what());
  } catch (const UnsupportedError& e) {
    return fail(kUsage, e.what());
  } catch (const std::exception& e) {
    return fail(kNumerical, e.what());
  }
}

}  // namespace homiso::cli
