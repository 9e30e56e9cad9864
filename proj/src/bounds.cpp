#include "homiso/bounds.hpp"

#include <algorithm>
#include <limits>

#include "homiso/errors.hpp"

namespace homiso::bounds {

Count checked_add(Count a, Count b) {
  Count out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in bound computation");
  return out;
}

Count checked_mul(Count a, Count b) {
  Count out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in bound computation");
  return out;
}

Count binomial(Count n, Count r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 result = 1;
  for (Count i = 1; i <= r; ++i) {
    result = result * (n - r + i) / i;
    if (result > std::numeric_limits<Count>::max()) throw OverflowError("binomial coefficient overflow");
  }
  return static_cast<Count>(result);
}

BaseRule BaseRule::successor() {
  return BaseRule{
      "f1(k)=k+1",
      [](Count k) { return checked_add(k, 1); },
      [](Count times, Count x) { return checked_add(x, times); },
  };
}

BoundTable::BoundTable(BaseRule base) : base_(std::move(base)) {
  if (!base_.apply) throw ArgumentError("base rule needs an apply function");
  if (!base_.iterate) {
    auto apply = base_.apply;
    base_.iterate = [apply](Count times, Count x) {
      for (Count t = 0; t < times; ++t) x = apply(x);
      return x;
    };
  }
}

Count BoundTable::delta(Count n, Count j, Count k) const {
  if (n < 2 || j < 1 || j > n - 1) throw ArgumentError("delta requires 1 <= j <= n-1");
  if (k < 2) throw ArgumentError("delta requires k >= 2");
  const auto key = std::make_tuple(n, j, k);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_delta_.find(key); it != memo_delta_.end()) return it->second;
  }
  const Count value = binomial(checked_add(n - j, k - 2), k - 2);
  std::unique_lock lock(mutex_);
  memo_delta_.emplace(key, value);
  return value;
}

Count BoundTable::iterate(Count i, Count times, Count x) const {
  if (i == 1) return base_.iterate(times, x);
  // f_i(x) >= 2x for i >= 2, so this overflows after at most 64 rounds.
  for (Count t = 0; t < times; ++t) x = f(i, x);
  return x;
}

Count BoundTable::layered(Count n, Count j) const {
  Count value = 2;
  for (Count p = 1; p < n; ++p) value = iterate(p, delta(n, p, j), value);
  return value;
}

Count BoundTable::f(Count i, Count k) const {
  if (i < 1 || k < 1) throw ArgumentError("f requires i >= 1 and k >= 1");
  if (i == 1) return base_.apply(k);
  if (k == 1) return 2;
  const auto key = std::make_pair(i, k);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_f_.find(key); it != memo_f_.end()) return it->second;
  }
  const Count value = checked_add(k - 1, layered(i, k));
  std::unique_lock lock(mutex_);
  memo_f_.emplace(key, value);
  return value;
}

Count BoundTable::k_seq(Count n, Count j) const {
  if (n < 2 || j < 1) throw ArgumentError("k_seq requires n >= 2 and j >= 1");
  if (j == 1) return 1;
  const auto key = std::make_pair(n, j);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_kseq_.find(key); it != memo_kseq_.end()) return it->second;
  }
  const Count value = layered(n, j);
  std::unique_lock lock(mutex_);
  memo_kseq_.emplace(key, value);
  return value;
}

const BoundTable& default_table() {
  static const BoundTable table;
  return table;
}

}  // namespace homiso::bounds
