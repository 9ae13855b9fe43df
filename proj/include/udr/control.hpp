#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace udr {

/// Set and operator indices are 1-based throughout, matching {1, ..., m}.
using Index = std::size_t;

struct CyclicRule {
  std::size_t m;
};

/// The prefix repeats forever: f(n) = prefix[n mod prefix.size()].
struct ExplicitRule {
  std::vector<Index> prefix;
};

/// Every aligned block [bM, (b+1)M) holds a shuffled surjection onto {1..m}.
struct RandomBlockRule {
  std::size_t m;
  std::size_t block;
  std::uint64_t seed;
};

/**
 * A control mapping n -> f(n) from the naturals onto {1, ..., m}.
 *
 * Evaluation is a pure function of n; RandomBlock derives each block from
 * (seed, block number) with a counter-based generator.
 */
class ControlMap {
public:
  using Rule = std::variant<CyclicRule, ExplicitRule, RandomBlockRule>;

  static ControlMap cyclic(std::size_t m);
  static ControlMap explicit_prefix(std::vector<Index> prefix);
  static ControlMap random_block(std::size_t m, std::size_t block, std::uint64_t seed);

  const Rule& rule() const noexcept { return rule_; }
  std::size_t range_size() const noexcept { return m_; }

  /// A window length for which the map is quasi-periodic by construction:
  /// m for cyclic, the prefix length for explicit, 2M - 1 for random blocks.
  std::size_t quasi_period() const noexcept;

  Index index_at(std::uint64_t n) const;

  /// Contents of the aligned RandomBlock block number `b`.
  std::vector<Index> random_block_contents(std::uint64_t b) const;

private:
  ControlMap(Rule rule, std::size_t m) : rule_(std::move(rule)), m_(m) {}

  Rule rule_;
  std::size_t m_;
};

/// [f((r-1)n), ..., f((r-1)n + r - 1)]; r must exceed 1.
std::vector<Index> window(const ControlMap& f, std::size_t r, std::uint64_t n);

/// Smallest j >= 1 with f({1, ..., j}) = {1, ..., m}. The scan starts at
/// argument 1 and is capped at min(10 m M, 10^6) with M = f.quasi_period().
std::uint64_t cover_index(const ControlMap& f);

/// Finite-horizon check that every run f(n..n+M-1), n <= horizon - M, hits
/// all of {1, ..., m}. Requires 1 <= M <= horizon.
bool is_quasi_periodic(const ControlMap& f, std::size_t period, std::uint64_t horizon);

/// The same check for the sequence of windows n -> window(f, r, n), compared
/// as ordered tuples. The range is taken as every tuple seen on [0, horizon).
bool windows_quasi_periodic(const ControlMap& f, std::size_t r, std::size_t period, std::uint64_t horizon);

} // namespace udr
