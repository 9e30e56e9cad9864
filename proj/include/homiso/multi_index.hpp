#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "homiso/bounds.hpp"

namespace homiso {

/// Exponent vector of a monomial x_1^{m_1} ... x_d^{m_d}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents) : exps_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<unsigned> exponents) : exps_(exponents) {}

  std::size_t size() const noexcept { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  unsigned& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<unsigned>& exponents() const noexcept { return exps_; }

  /// Sum of exponents.
  unsigned total() const noexcept;

  /// Variable indices repeated by multiplicity, ascending: {2,0,1} -> {0,0,2}.
  std::vector<std::size_t> slots() const;

  /// n! / (m_1! ... m_d!) in exact arithmetic.
  bounds::Count multinomial() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> exps_;
};

/// All exponent vectors of `vars` variables with total `degree`, in
/// descending lexicographic order ((2,0), (1,1), (0,2) for vars=2, degree=2).
std::vector<MultiIndex> monomials(std::size_t vars, unsigned degree);

}  // namespace homiso
