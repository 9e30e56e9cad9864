#include "homiso/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "homiso/errors.hpp"

namespace homiso::io {

namespace {

template <class T>
T get(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

const json& get_array(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array()) {
    throw ParseError(std::string("missing array '") + key + "'");
  }
  return doc.at(key);
}

Vector vector_from_json(const json& arr, Index expected) {
  if (!arr.is_array() || static_cast<Index>(arr.size()) != expected) throw ParseError("vector has wrong length");
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) v(i) = scalar_from_json(arr[static_cast<std::size_t>(i)]);
  return v;
}

json vector_to_json(const Vector& v, Field field) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(scalar_to_json(v(i), field));
  return arr;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

Scalar scalar_from_json(const json& value) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  throw ParseError("scalar must be a number or [re, im]");
}

json scalar_to_json(Scalar value, Field field) {
  if (field == Field::real) return value.real();
  return json::array({value.real(), value.imag()});
}

FormPtr form_from_json(const json& doc) {
  const auto degree = get<int>(doc, "degree");
  const auto dim = get<Index>(doc, "dim");
  if (degree < 1) throw ParseError("degree must be >= 1");
  if (dim < 1) throw ParseError("dim must be >= 1");
  const Field field = field_from_string(doc.contains("field") ? get<std::string>(doc, "field") : "complex");
  const std::string repr = doc.contains("repr") ? get<std::string>(doc, "repr") : "dense";
  try {
    if (repr == "dense") {
      std::vector<DenseForm::Term> terms;
      for (const auto& t : get_array(doc, "terms")) {
        const auto exps = get<std::vector<unsigned>>(t, "exponents");
        if (!t.contains("coeff")) throw ParseError("term without 'coeff'");
        terms.push_back({MultiIndex(exps), scalar_from_json(t.at("coeff"))});
      }
      return std::make_shared<DenseForm>(static_cast<unsigned>(degree), dim, field, std::move(terms));
    }
    if (repr == "power_sum") {
      std::vector<Scalar> lambdas;
      for (const auto& l : get_array(doc, "lambdas")) lambdas.push_back(scalar_from_json(l));
      std::vector<Vector> functionals;
      for (const auto& f : get_array(doc, "functionals")) functionals.push_back(vector_from_json(f, dim));
      return std::make_shared<PowerSumForm>(static_cast<unsigned>(degree), dim, field, std::move(lambdas),
                                            std::move(functionals));
    }
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown form representation '" + repr + "'");
}

json form_to_json(const SymmetricForm& form) {
  json doc{{"degree", form.degree()}, {"dim", form.dim()}, {"field", std::string(to_string(form.field()))}};
  if (const auto* dense = dynamic_cast<const DenseForm*>(&form)) {
    doc["repr"] = "dense";
    json terms = json::array();
    for (const auto& t : dense->terms()) {
      terms.push_back({{"exponents", t.exponents.exponents()}, {"coeff", scalar_to_json(t.coeff, form.field())}});
    }
    doc["terms"] = std::move(terms);
    return doc;
  }
  if (const auto* ps = dynamic_cast<const PowerSumForm*>(&form)) {
    doc["repr"] = "power_sum";
    json lambdas = json::array();
    for (Scalar l : ps->lambdas()) lambdas.push_back(scalar_to_json(l, form.field()));
    json functionals = json::array();
    for (const auto& f : ps->functionals()) functionals.push_back(vector_to_json(f, form.field()));
    doc["lambdas"] = std::move(lambdas);
    doc["functionals"] = std::move(functionals);
    return doc;
  }
  throw UnsupportedError("only dense and power_sum forms have a file format");
}

Subspace subspace_from_json(const json& doc) {
  const auto d = get<Index>(doc, "ambient_dim");
  const auto k = get<Index>(doc, "k");
  if (d < 1 || k < 0 || k > d) throw ParseError("invalid subspace dimensions");
  const Field field = field_from_string(doc.contains("field") ? get<std::string>(doc, "field") : "complex");
  const auto& cols = get_array(doc, "basis_columns");
  if (static_cast<Index>(cols.size()) != k) throw ParseError("basis_columns count does not match k");
  Matrix basis(d, k);
  for (Index j = 0; j < k; ++j) basis.col(j) = vector_from_json(cols[static_cast<std::size_t>(j)], d);
  try {
    return Subspace(std::move(basis), field);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  } catch (const RankError& e) {
    throw ParseError(e.what());
  }
}

json subspace_to_json(const Subspace& subspace) {
  json cols = json::array();
  for (Index j = 0; j < subspace.dim(); ++j) cols.push_back(vector_to_json(subspace.column(j), subspace.field()));
  return json{{"ambient_dim", subspace.ambient_dim()},
              {"k", subspace.dim()},
              {"field", std::string(to_string(subspace.field()))},
              {"basis_columns", std::move(cols)}};
}

Eigen::MatrixXd matrix_from_json(const json& doc) {
  const auto d = get<Index>(doc, "dim");
  if (d < 1) throw ParseError("dim must be >= 1");
  const auto& rows = get_array(doc, "rows");
  if (static_cast<Index>(rows.size()) != d) throw ParseError("row count does not match dim");
  Eigen::MatrixXd m(d, d);
  for (Index i = 0; i < d; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d) throw ParseError("row length does not match dim");
    for (Index j = 0; j < d; ++j) {
      if (!row[static_cast<std::size_t>(j)].is_number()) throw ParseError("matrix entries must be numbers");
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace homiso::io
