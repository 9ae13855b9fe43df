#include "udr/control.hpp"

#include "udr/random.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace udr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint64_t kCoverScanLimit = 1'000'000;

} // namespace

ControlMap ControlMap::cyclic(std::size_t m) {
  if (m == 0) throw std::invalid_argument("cyclic control needs m >= 1");
  return {CyclicRule{m}, m};
}

ControlMap ControlMap::explicit_prefix(std::vector<Index> prefix) {
  if (prefix.empty()) throw std::invalid_argument("explicit control needs a nonempty prefix");
  const Index m = *std::max_element(prefix.begin(), prefix.end());
  std::vector<bool> seen(m + 1, false);
  for (Index i : prefix) {
    if (i == 0) throw std::invalid_argument("explicit control indices are 1-based");
    seen[i] = true;
  }
  for (Index i = 1; i <= m; ++i) {
    if (!seen[i]) {
      throw std::invalid_argument("explicit prefix is not onto {1.." + std::to_string(m) + "}: missing " +
                                  std::to_string(i));
    }
  }
  return {ExplicitRule{std::move(prefix)}, m};
}

ControlMap ControlMap::random_block(std::size_t m, std::size_t block, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("random_block control needs m >= 1");
  if (block < m) throw std::invalid_argument("random_block control needs M >= m");
  return {RandomBlockRule{m, block, seed}, m};
}

std::size_t ControlMap::quasi_period() const noexcept {
  return std::visit(overloaded{
                        [](const CyclicRule& r) { return r.m; },
                        [](const ExplicitRule& r) { return r.prefix.size(); },
                        [](const RandomBlockRule& r) { return 2 * r.block - 1; },
                    },
                    rule_);
}

std::vector<Index> ControlMap::random_block_contents(std::uint64_t b) const {
  const auto* rule = std::get_if<RandomBlockRule>(&rule_);
  if (!rule) throw std::logic_error("random_block_contents on a non-random control");
  CounterRng rng(rule->seed, b);
  std::vector<Index> block(rule->block);
  for (std::size_t i = 0; i < rule->m; ++i) block[i] = i + 1;
  for (std::size_t i = rule->m; i-- > 1;) std::swap(block[i], block[rng.below(i + 1)]);
  for (std::size_t i = rule->m; i < rule->block; ++i) block[i] = 1 + rng.below(rule->m);
  for (std::size_t i = rule->block; i-- > 1;) std::swap(block[i], block[rng.below(i + 1)]);
  return block;
}

Index ControlMap::index_at(std::uint64_t n) const {
  return std::visit(overloaded{
                        [n](const CyclicRule& r) { return static_cast<Index>(n % r.m) + 1; },
                        [n](const ExplicitRule& r) { return r.prefix[n % r.prefix.size()]; },
                        [n, this](const RandomBlockRule& r) {
                          return random_block_contents(n / r.block)[n % r.block];
                        },
                    },
                    rule_);
}

std::vector<Index> window(const ControlMap& f, std::size_t r, std::uint64_t n) {
  if (r <= 1) throw std::invalid_argument("window size r must exceed 1");
  std::vector<Index> out(r);
  for (std::size_t j = 1; j <= r; ++j) out[j - 1] = f.index_at((r - 1) * n + j - 1);
  return out;
}

std::uint64_t cover_index(const ControlMap& f) {
  const std::size_t m = f.range_size();
  const std::uint64_t cap = std::min<std::uint64_t>(10 * m * f.quasi_period(), kCoverScanLimit);
  std::vector<bool> seen(m + 1, false);
  std::size_t covered = 0;
  for (std::uint64_t j = 1; j <= cap; ++j) {
    const Index i = f.index_at(j);
    if (!seen[i]) {
      seen[i] = true;
      if (++covered == m) return j;
    }
  }
  throw std::runtime_error("cover index scan exceeded " + std::to_string(cap) +
                           " arguments: control is not onto its range");
}

bool is_quasi_periodic(const ControlMap& f, std::size_t period, std::uint64_t horizon) {
  if (period == 0 || horizon < period) throw std::invalid_argument("quasi-periodicity check needs 1 <= M <= horizon");
  const std::size_t m = f.range_size();
  // Sliding window multiset counts over f(n..n+M-1).
  std::vector<std::size_t> count(m + 1, 0);
  std::size_t distinct = 0;
  auto add = [&](Index i) { distinct += (count[i]++ == 0); };
  auto drop = [&](Index i) { distinct -= (--count[i] == 0); };
  for (std::uint64_t k = 0; k < period; ++k) add(f.index_at(k));
  const std::uint64_t last = horizon - period;
  for (std::uint64_t n = 0; n <= last; ++n) {
    if (distinct != m) return false;
    if (n == last) break;
    drop(f.index_at(n));
    add(f.index_at(n + period));
  }
  return true;
}

bool windows_quasi_periodic(const ControlMap& f, std::size_t r, std::size_t period, std::uint64_t horizon) {
  if (period == 0 || horizon < period) throw std::invalid_argument("quasi-periodicity check needs 1 <= M <= horizon");
  std::vector<std::vector<Index>> seq;
  seq.reserve(horizon);
  for (std::uint64_t n = 0; n < horizon; ++n) seq.push_back(window(f, r, n));
  const std::set<std::vector<Index>> range(seq.begin(), seq.end());
  for (std::uint64_t n = 0; n + period <= horizon; ++n) {
    const std::set<std::vector<Index>> seen(seq.begin() + static_cast<std::ptrdiff_t>(n),
                                            seq.begin() + static_cast<std::ptrdiff_t>(n + period));
    if (seen.size() != range.size()) return false;
  }
  return true;
}

} // namespace udr
