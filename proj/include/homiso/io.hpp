#pragma once

// JSON schemas:
//   form     {"degree", "dim", "field", "repr": "dense", "terms": [{"exponents", "coeff"}]}
//            {"degree", "dim", "field", "repr": "power_sum", "lambdas": [..], "functionals": [[..]..]}
//   subspace {"ambient_dim", "k", "field", "basis_columns": [[..]..]}
//   matrix   {"dim", "rows": [[..]..]}
// Complex scalars are [re, im]; plain numbers are accepted everywhere and
// are what real-field output uses.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "homiso/forms.hpp"
#include "homiso/subspace.hpp"

namespace homiso::io {

using json = nlohmann::json;

/// Parse failures of any kind surface as ParseError.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

FormPtr form_from_json(const json& doc);
/// Dense and power-sum forms only.
json form_to_json(const SymmetricForm& form);

Subspace subspace_from_json(const json& doc);
json subspace_to_json(const Subspace& subspace);

Eigen::MatrixXd matrix_from_json(const json& doc);
json matrix_to_json(const Eigen::MatrixXd& m);

json scalar_to_json(Scalar value, Field field);
Scalar scalar_from_json(const json& value);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace homiso::io
