// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "homiso/bounds.hpp"
#include "homiso/certify.hpp"
#include "homiso/complex_null.hpp"
#include "homiso/io.hpp"
#include "homiso/random.hpp"
#include "homiso/real_quadratic.hpp"

using namespace homiso;
using bounds::Count;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

// Stars and bars by enumeration.
Count count_compositions(Count slots, Count total) {
  if (slots == 0) return total == 0 ? 1 : 0;
  Count n = 0;
  for (Count first = 0; first <= total; ++first) n += count_compositions(slots - 1, total - first);
  return n;
}

double relative_at(const SymmetricForm& form, const Vector& z, double scale) {
  return std::abs(form.evaluate(z)) / (scale * std::pow(z.norm(), form.degree()));
}

// Independent of the pullback-coefficient certificate: P sampled at random
// points of the subspace.
double sampled_residual(const SymmetricForm& form, const Matrix& basis, Rng& rng, int samples = 32) {
  const double scale = sampled_scale(form);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector z = basis * random_vector(basis.cols(), Field::complex, rng);
    worst = std::max(worst, relative_at(form, z, scale));
  }
  return worst;
}

FormPtr random_form(unsigned n, Index d, Field field, Rng& rng) {
  return std::make_shared<DenseForm>(random_dense_form(n, d, field, rng));
}

// ---------------------------------------------------------------------------

Outcome bounds_regression() {
  Outcome o;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok && o.pass) o.detail = what;
    o.pass = o.pass && ok;
  };
  for (Count k = 1; k <= 12; ++k) expect(bounds::f(2, k) == 2 * k, "f_2(" + std::to_string(k) + ")");
  for (Count n = 1; n <= 5; ++n) expect(bounds::f(n, 1) == 2, "f_" + std::to_string(n) + "(1)");
  for (Count k = 1; k <= 12; ++k) expect(bounds::f(1, k) == k + 1, "f_1(" + std::to_string(k) + ")");
  expect(bounds::f(3, 2) == 7, "f(3,2)");
  int cells = 0;
  for (Count n = 2; n <= 6; ++n) {
    for (Count j = 1; j < n; ++j) {
      for (Count k = 2; k <= 6; ++k) {
        expect(bounds::delta(n, j, k) == count_compositions(k - 1, n - j), "delta mismatch");
        ++cells;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(cells) + " delta cells enumerated";
  return o;
}

Outcome polarization() {
  Rng rng(2024);
  const std::array reprs{Representation::dense, Representation::power_sum, Representation::partial_application,
                         Representation::pullback};
  double worst = 0.0;
  int forms = 0;
  for (int i = 0; i < 200; ++i) {
    const Representation repr = reprs[static_cast<std::size_t>(i % 4)];
    const Field field = (i / 4) % 2 == 0 ? Field::real : Field::complex;
    const unsigned n = 1 + static_cast<unsigned>(rng() % 4);
    const Index d = 1 + static_cast<Index>(rng() % 6);
    FormPtr form;
    switch (repr) {
      case Representation::dense:
        form = random_form(n, d, field, rng);
        break;
      case Representation::power_sum: {
        std::vector<Scalar> lambdas;
        std::vector<Vector> functionals;
        for (int r = 0; r < 4; ++r) {
          lambdas.push_back(random_vector(1, field, rng)(0));
          functionals.push_back(random_vector(d, field, rng));
        }
        form = std::make_shared<PowerSumForm>(n, d, field, lambdas, functionals);
        break;
      }
      case Representation::partial_application:
        form = std::make_shared<PartialApplicationForm>(random_form(n + 2, d, field, rng),
                                                        std::vector<Vector>{random_vector(d, field, rng),
                                                                            random_vector(d, field, rng)});
        break;
      case Representation::pullback: {
        const Index outer = d + 1 + static_cast<Index>(rng() % 3);
        Matrix b(outer, d);
        for (Index c = 0; c < d; ++c) b.col(c) = random_vector(outer, field, rng);
        form = std::make_shared<PullbackForm>(random_form(n, outer, field, rng), b);
        break;
      }
    }
    std::vector<Vector> args;
    for (unsigned a = 0; a < n; ++a) args.push_back(random_vector(d, field, rng));
    const Scalar direct = form->multilinear(args);
    const Scalar oracle = polarize_oracle(*form, args);
    worst = std::max(worst, std::abs(direct - oracle) / std::abs(oracle));
    ++forms;
  }
  return {worst <= 1e-9, std::to_string(forms) + " forms, worst relative difference " + fmt(worst)};
}

Outcome pencil_roots() {
  Rng rng(3);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const unsigned n = 1 + static_cast<unsigned>(i % 5);
    const auto form = random_form(n, 2, Field::complex, rng);
    const Vector x = random_vector(2, Field::complex, rng);
    const Vector y = random_vector(2, Field::complex, rng);
    const Vector z = zero_on_pencil(*form, x, y);
    worst = std::max(worst, relative_at(*form, z, sampled_scale(*form)));
  }
  return {worst <= 1e-8, "500 forms, worst |P(z)|/(scale |z|^n) = " + fmt(worst)};
}

Outcome complex_quadratic_maximality() {
  Rng rng(4);
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    const Index d = 2 + static_cast<Index>(rng() % 11);
    const Index z = static_cast<Index>(rng() % static_cast<std::uint64_t>(d + 1));
    const auto form = quadratic_from_matrix(planted_complex_quadratic(d, z, rng), Field::complex);
    const Subspace m = max_null_quadratic(form);
    if (m.dim() == (d - z) / 2 + z && certify_null(form, m).pass) ++ok;
  }
  return {ok == 100, std::to_string(ok) + "/100 trials reached floor((d-z)/2)+z, certified"};
}

Outcome general_construction() {
  double worst = 0.0;
  int ok7 = 0, ok22 = 0;
  Rng check_rng(55);
  auto trial = [&](Index d, Index k, std::uint64_t seed) {
    Rng rng(seed);
    const auto form = random_form(3, d, Field::complex, rng);
    ConstructionConfig cfg;
    cfg.rng_seed = seed;
    const Subspace s = null_subspace(form, k, cfg);
    const auto cert = certify_null(*form, s);
    const double sampled = sampled_residual(*form, s.basis(), check_rng);
    worst = std::max({worst, cert.relative_residual, sampled});
    return s.dim() == k && cert.pass && sampled <= 1e-8;
  };
  for (std::uint64_t t = 0; t < 20; ++t) ok7 += trial(7, 2, 100 + t) ? 1 : 0;
  for (std::uint64_t t = 0; t < 5; ++t) ok22 += trial(22, 3, 200 + t) ? 1 : 0;
  const bool bounds_ok = bounds::f(3, 2) == 7 && bounds::f(3, 3) == 22;
  return {ok7 == 20 && ok22 == 5 && bounds_ok,
          "C^7 k=2: " + std::to_string(ok7) + "/20, C^22 k=3: " + std::to_string(ok22) + "/5, worst residual " +
              fmt(worst)};
}

Outcome simultaneous() {
  // f_2(f_2(2)) with f_2(k) = 2k.
  const Count expected_bound = 2 * (2 * 2);
  const Count bound = bounds::default_table().compose(std::vector<int>{2, 2}, 2);
  int ok = 0;
  double worst = 0.0;
  Rng check_rng(66);
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(300 + t);
    std::vector<FormPtr> forms{random_form(2, 8, Field::complex, rng), random_form(2, 8, Field::complex, rng)};
    ConstructionConfig cfg;
    cfg.rng_seed = t;
    const Subspace s = simultaneous_null(forms, 2, cfg);
    bool pass = s.dim() == 2;
    for (const auto& f : forms) {
      const auto cert = certify_null(*f, s);
      const double sampled = sampled_residual(*f, s.basis(), check_rng);
      worst = std::max({worst, cert.relative_residual, sampled});
      pass = pass && cert.pass && sampled <= 1e-8;
    }
    ok += pass ? 1 : 0;
  }
  return {ok == 10 && bound == expected_bound && bound == 8,
          std::to_string(ok) + "/10 joint subspaces on C^8, bound " + std::to_string(bound) + ", worst residual " +
              fmt(worst)};
}

Outcome dimension_invariance() {
  Rng rng(7);
  int forms = 0, runs = 0, wrong = 0, over = 0;
  while (forms < 50) {
    const Index d = 1 + static_cast<Index>(rng() % 10);
    const Index p = static_cast<Index>(rng() % static_cast<std::uint64_t>(d + 1));
    const Index q = static_cast<Index>(rng() % static_cast<std::uint64_t>(d - p + 1));
    const Index z = d - p - q;
    const real::RealQuadraticForm form(real::planted_signature(p, q, z, rng));
    const Index expected = std::min(p, q) + z;
    for (int r = 0; r < 20; ++r) {
      std::vector<Index> trace;
      const Subspace m = real::greedy_maximal(form, std::nullopt, rng(), {}, &trace);
      ++runs;
      if (m.dim() != expected || !certify_null(*form.form(), m).pass) ++wrong;
      for (Index t : trace) over += t > expected ? 1 : 0;
    }
    ++forms;
  }
  return {wrong == 0 && over == 0, std::to_string(runs) + " greedy runs over " + std::to_string(forms) +
                                       " forms, " + std::to_string(wrong) + " off min(p,q)+z, " +
                                       std::to_string(over) + " intermediate steps above it"};
}

Outcome truncated_quadratic_example() {
  int configs = 0, ok = 0;
  for (Index k = 1; k <= 5; ++k) {
    for (Index d = 2 * k; d <= 2 * k + 4; ++d) {
      ++configs;
      // -x_1^2 - ... - x_k^2 + x_{k+1}^2 + ... + x_d^2 and M_k = span{e_j + e_{j+k}}
      Eigen::VectorXd diag = Eigen::VectorXd::Ones(d);
      diag.head(k).setConstant(-1.0);
      const real::RealQuadraticForm form(diag.asDiagonal().toDenseMatrix());
      Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(d, k);
      for (Index j = 0; j < k; ++j) mk(j, j) = mk(j + k, j) = 1.0;
      const Subspace m = Subspace::from_real(mk);
      bool pass = certify_null(*form.form(), m).pass && real::is_maximal(form, m).is_maximal;
      for (std::uint64_t r = 0; r < 20; ++r) {
        pass = pass && real::greedy_maximal(form, std::nullopt, 1000 * static_cast<std::uint64_t>(d) + r).dim() == k;
      }
      const auto ex = real::example_pk(k, d, 20, static_cast<std::uint64_t>(k * 100 + d));
      for (const auto& claim : ex.claims) pass = pass && claim.pass;
      ok += pass ? 1 : 0;
    }
  }
  return {ok == configs, std::to_string(ok) + "/" + std::to_string(configs) +
                             " (k, d) pairs: M_k null and maximal, every restart reaches k"};
}

Outcome higher_degree_example() {
  int configs = 0, ok = 0;
  std::string first_failure;
  for (unsigned n : {3u, 4u}) {
    for (Index k = 1; k <= 3; ++k) {
      for (Index d = k + 3; d <= k + 6; ++d) {
        ++configs;
        const auto ex = real::example_higher_degree(n, k, d, 17 * static_cast<std::uint64_t>(d) + n, 1000);
        bool pass = ex.hyperplane_cert.pass && ex.coordinate_cert.pass && ex.samples >= 1000 &&
                    ex.hyperplane_null_extensions == 0 && ex.coordinate_null_extensions == 0 &&
                    ex.maximal_dims == std::vector<Index>{d - 1, k} && ex.hyperplane.dim() == d - 1 &&
                    ex.coordinate.dim() == k;
        for (const auto& claim : ex.claims) {
          if (!claim.pass && first_failure.empty()) first_failure = claim.name;
          pass = pass && claim.pass;
        }
        ok += pass ? 1 : 0;
      }
    }
  }
  std::string detail = std::to_string(ok) + "/" + std::to_string(configs) +
                       " (n, k, d) triples: maximal null subspaces of dimensions d-1 and k";
  if (!first_failure.empty()) detail += "; failed: " + first_failure;
  return {ok == configs, detail};
}

struct SequenceCheck {
  bool pass = true;
  double worst = 0.0;
  Index dim = 0;
};

SequenceCheck check_sequence(unsigned n, Index m, std::uint64_t seed) {
  SequenceCheck out;
  std::vector<std::pair<Index, Index>> blocks{{0, 2}};
  for (Index j = 2; j <= m; ++j) {
    const Index size = static_cast<Index>(bounds::k_seq(n, static_cast<Count>(j)));
    blocks.emplace_back(blocks.back().second, blocks.back().second + size);
  }
  out.dim = blocks.back().second;
  Rng rng(seed);
  const auto form = random_form(n, out.dim, Field::complex, rng);
  ConstructionConfig cfg;
  cfg.rng_seed = seed;
  const auto result = null_sequence(form, Matrix::Identity(out.dim, out.dim), m, cfg);
  if (result.vectors.size() != static_cast<std::size_t>(m) || result.block_ranges != blocks) {
    out.pass = false;
    return out;
  }
  for (Index j = 0; j < m; ++j) {
    const Vector& v = result.vectors[static_cast<std::size_t>(j)];
    const auto [lo, hi] = blocks[static_cast<std::size_t>(j)];
    if (v.head(lo).norm() + v.tail(out.dim - hi).norm() > 1e-12 * v.norm()) out.pass = false;
  }
  // Every multiset of n indices.
  const double scale = sampled_scale(*form);
  std::vector<Index> idx(n, 0);
  for (;;) {
    std::vector<Vector> args;
    double norms = 1.0;
    for (Index i : idx) {
      args.push_back(result.vectors[static_cast<std::size_t>(i)]);
      norms *= args.back().norm();
    }
    out.worst = std::max(out.worst, std::abs(form->multilinear(args)) / (scale * norms));
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == m - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t p = pos; p < n; ++p) idx[p] = idx[pos - 1];
  }
  out.pass = out.pass && out.worst <= 1e-8;
  return out;
}

Outcome null_sequences() {
  const auto quad = check_sequence(2, 4, 41);
  const auto cubic = check_sequence(3, 3, 43);
  return {quad.pass && cubic.pass && quad.dim == 14 && cubic.dim == 28,
          "n=2 m=4 on C^" + std::to_string(quad.dim) + " residual " + fmt(quad.worst) + "; n=3 m=3 on C^" +
              std::to_string(cubic.dim) + " residual " + fmt(cubic.worst)};
}

std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(HOMISO_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe.release());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_determinism() {
  const std::vector<std::string> commands{
      "bounds --degree 4 --max-k 4 --json",
      "construct --random --degree 3 --dim 7 --k 2 --seed 5 --json",
      "construct --random --degree 3 --dim 22 --k 3 --seed 6 --json",
      "simultaneous --random --degrees 2,2 --dim 8 --k 2 --seed 7 --json",
      "nullseq --random --degree 2 --dim 14 --m 4 --seed 8 --json",
      "real restarts --planted 3,3,0 --count 20 --seed 9 --json",
      "examples higher --n 3 --k 2 --dim 6 --seed 10 --json",
      "construct --random --degree 3 --dim 6 --k 2 --json",
  };
  int identical = 0;
  std::string first_diff;
  for (const auto& args : commands) {
    const auto a = run_binary(args);
    const auto b = run_binary(args);
    bool same = a.first == b.first && a.first >= 0 && io::json::accept(a.second) && io::json::accept(b.second);
    if (same) {
      auto ja = io::json::parse(a.second);
      auto jb = io::json::parse(b.second);
      ja.erase("wall_clock_ms");
      jb.erase("wall_clock_ms");
      same = ja.dump() == jb.dump();
    }
    if (!same && first_diff.empty()) first_diff = args;
    identical += same ? 1 : 0;
  }
  std::string detail = std::to_string(identical) + "/" + std::to_string(commands.size()) +
                       " commands gave identical reports and exit codes";
  if (!first_diff.empty()) detail += "; differs: " + first_diff;
  return {identical == static_cast<int>(commands.size()), detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bounds regression", 1, bounds_regression},
      {2, "polarization oracle", 30, polarization},
      {3, "pencil roots", 10, pencil_roots},
      {4, "complex quadratic maximality", 60, complex_quadratic_maximality},
      {5, "general construction at the bound", 300, general_construction},
      {6, "simultaneous vanishing", 0, simultaneous},
      {7, "real quadratic dimension invariance", 60, dimension_invariance},
      {8, "truncated quadratic example", 30, truncated_quadratic_example},
      {9, "higher-degree example", 60, higher_degree_example},
      {10, "null sequences", 120, null_sequences},
      {11, "CLI determinism", 0, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds <= 0 || seconds < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.detail << " ["
              << fmt(seconds) << " s";
    if (c.limit_seconds > 0) std::cout << ", limit " << c.limit_seconds << " s";
    if (!in_time) std::cout << ", over time";
    std::cout << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
