#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace homiso {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kDefaultRankTol = 1e-10;

/// Ground field of a form or subspace.
enum class Field { real, complex };

std::string_view to_string(Field field);
Field field_from_string(std::string_view name);

/// Complex wins: a real form restricted to a complex subspace is complex.
inline Field common_field(Field a, Field b) {
  return (a == Field::complex || b == Field::complex) ? Field::complex : Field::real;
}

}  // namespace homiso
