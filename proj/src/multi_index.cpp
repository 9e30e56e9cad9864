#include "homiso/multi_index.hpp"

#include <numeric>

namespace homiso {

unsigned MultiIndex::total() const noexcept { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

std::vector<std::size_t> MultiIndex::slots() const {
  std::vector<std::size_t> out;
  out.reserve(total());
  for (std::size_t i = 0; i < exps_.size(); ++i) out.insert(out.end(), exps_[i], i);
  return out;
}

bounds::Count MultiIndex::multinomial() const {
  bounds::Count result = 1;
  bounds::Count running = 0;
  for (unsigned m : exps_) {
    running += m;
    result = bounds::checked_mul(result, bounds::binomial(running, m));
  }
  return result;
}

namespace {

void fill(std::size_t pos, unsigned remaining, std::vector<unsigned>& current, std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[pos] = e;
    fill(pos + 1, remaining - e, current, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> monomials(std::size_t vars, unsigned degree) {
  std::vector<MultiIndex> out;
  if (vars == 0) return out;
  std::vector<unsigned> current(vars, 0);
  fill(0, degree, current, out);
  return out;
}

}  // namespace homiso
