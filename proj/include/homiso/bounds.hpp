#pragma once

// Composition counts and the recursive dimension bounds f_i(k) that govern
// how large a complex space must be before every degree-i form is forced to
// vanish on a k-dimensional subspace.

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>

namespace homiso::bounds {

using Count = std::uint64_t;

/// Checked arithmetic; throws OverflowError instead of wrapping.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

/// Binomial coefficient C(n, r) in checked integer arithmetic.
Count binomial(Count n, Count r);

/// Base function f_1. `apply` must satisfy f(1) = 2, be strictly increasing and
/// have the hyperplane property; `iterate(m, x)` is f applied m times to x.
struct BaseRule {
  std::string name;
  std::function<Count(Count)> apply;
  std::function<Count(Count, Count)> iterate;

  /// f_1(k) = k + 1, the smallest admissible base.
  static BaseRule successor();
};

/// Memoized δ, f_i and k_j values. Reads are concurrent; writes take an
/// exclusive lock. Values never change once stored.
class BoundTable {
 public:
  explicit BoundTable(BaseRule base = BaseRule::successor());

  /// Number of (i_1..i_{k-1}) in N_0^{k-1} with sum n - j, i.e. C(n-j+k-2, k-2).
  Count delta(Count n, Count j, Count k) const;

  /// f_i(k).
  Count f(Count i, Count k) const;

  /// f_i applied `times` times to x.
  Count iterate(Count i, Count times, Count x) const;

  /// (f_{n-1}^{δ(n,n-1,j)} ∘ ... ∘ f_1^{δ(n,1,j)})(2); the block size for
  /// step j of the null-sequence construction. k_seq(n, 1) = 1.
  Count k_seq(Count n, Count j) const;

  /// (f_{degrees[0]} ∘ f_{degrees[1]} ∘ ... )(k).
  template <class Range>
  Count compose(const Range& degrees, Count k) const {
    Count value = k;
    for (auto it = std::rbegin(degrees); it != std::rend(degrees); ++it) {
      value = f(static_cast<Count>(*it), value);
    }
    return value;
  }

  const BaseRule& base() const noexcept { return base_; }

 private:
  // Composition over degree levels n-1 .. 1 applied to 2, with level p
  // iterated δ(n,p,j) times.
  Count layered(Count n, Count j) const;

  BaseRule base_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::tuple<Count, Count, Count>, Count> memo_delta_;
  mutable std::map<std::pair<Count, Count>, Count> memo_f_;
  mutable std::map<std::pair<Count, Count>, Count> memo_kseq_;
};

/// Process-wide table with the default base rule.
const BoundTable& default_table();

inline Count delta(Count n, Count j, Count k) { return default_table().delta(n, j, k); }
inline Count f(Count i, Count k) { return default_table().f(i, k); }
inline Count k_seq(Count n, Count j) { return default_table().k_seq(n, j); }

}  // namespace homiso::bounds
