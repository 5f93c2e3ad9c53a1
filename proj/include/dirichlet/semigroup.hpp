#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dirichlet/errors.hpp"
#include "dirichlet/rational.hpp"

namespace dirichlet {

/// The multiplicative semigroup {1, ..., N}: the index structure of ordinary
/// Dirichlet series truncated at N. Decompositions of n are its ordered
/// divisor pairs. Stateless beyond N; divisor pairs are enumerated by trial
/// division on demand.
class OrdinaryIndexSet {
public:
  using Index = std::int64_t;

  explicit OrdinaryIndexSet(Index truncation) : n_(truncation) {
    if (truncation < 1) throw Error("ordinary truncation must be >= 1");
  }

  Index truncation() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_); }
  Index unit() const { return 1; }
  Index indexAt(std::size_t pos) const { return static_cast<Index>(pos) + 1; }
  bool contains(Index n) const { return n >= 1 && n <= n_; }

  /// All ordered pairs (k, l) with k*l = n, ascending in k. Includes the two
  /// trivial pairs with the unit.
  std::vector<std::pair<Index, Index>> decompositions(Index n) const {
    if (!contains(n)) throw Error("index out of window: " + std::to_string(n));
    std::vector<std::pair<Index, Index>> low, high;
    for (Index d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      low.emplace_back(d, n / d);
      if (d != n / d) high.emplace_back(n / d, d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
  }

  friend bool operator==(const OrdinaryIndexSet& a, const OrdinaryIndexSet& b) {
    return a.n_ == b.n_;
  }

private:
  Index n_;
};

/// A finitely generated additive semigroup Lambda intersected with [0, T]:
/// all sums of the generators up to the horizon, as exact rationals, sorted
/// and deduplicated. 0 is always an element (the empty combination).
///
/// The pair table (lambda1, lambda2) with lambda1 + lambda2 = lambda is
/// computed once per element on first use and cached; index sets stay safe
/// for shared concurrent reads.
class GeneratedSemigroup {
public:
  using Index = Rational;

  GeneratedSemigroup(std::vector<Rational> generators, Rational horizon,
                     std::size_t elementCap = 100000)
      : generators_(std::move(generators)), horizon_(horizon) {
    for (const Rational& g : generators_)
      if (!(g > Rational(0))) throw Error("generators must be positive");
    if (!(horizon_ > Rational(0))) throw Error("horizon must be positive");

    // Worklist closure: ascending insertion keeps every v + alpha <= T
    // reachable from v already visited.
    std::set<Rational> values{Rational(0)};
    for (const Rational& alpha : generators_) {
      for (auto it = values.begin(); it != values.end(); ++it) {
        const Rational next = *it + alpha;
        if (next <= horizon_) {
          values.insert(next);
          if (values.size() > elementCap)
            throw ExplosionError("semigroup element count exceeds cap of " +
                                 std::to_string(elementCap));
        }
      }
    }
    elements_.assign(values.begin(), values.end());
    positions_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
      positions_.emplace(elements_[i], i);
    pairRows_ = std::make_unique<std::deque<PairRow>>(elements_.size());
  }

  GeneratedSemigroup(const GeneratedSemigroup& other)
      : generators_(other.generators_),
        horizon_(other.horizon_),
        elements_(other.elements_),
        positions_(other.positions_),
        pairRows_(std::make_unique<std::deque<PairRow>>(elements_.size())) {}

  GeneratedSemigroup& operator=(const GeneratedSemigroup& other) {
    if (this != &other) {
      generators_ = other.generators_;
      horizon_ = other.horizon_;
      elements_ = other.elements_;
      positions_ = other.positions_;
      pairRows_ = std::make_unique<std::deque<PairRow>>(elements_.size());
    }
    return *this;
  }

  const std::vector<Rational>& generators() const { return generators_; }
  Rational horizon() const { return horizon_; }
  const std::vector<Rational>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  Index unit() const { return Rational(0); }
  Index indexAt(std::size_t pos) const { return elements_[pos]; }
  bool contains(const Rational& v) const { return positions_.count(v) > 0; }

  /// All ordered pairs of elements summing to lambda, ascending in the first
  /// component.
  const std::vector<std::pair<Index, Index>>& decompositions(
      const Rational& lambda) const {
    const auto it = positions_.find(lambda);
    if (it == positions_.end())
      throw Error("index not in semigroup: " + lambda.toString());
    PairRow& row = (*pairRows_)[it->second];
    std::call_once(row.built, [&] {
      for (const Rational& first : elements_) {
        if (lambda < first) break;
        const Rational second = lambda - first;
        if (positions_.count(second)) row.pairs.emplace_back(first, second);
      }
    });
    return row.pairs;
  }

  friend bool operator==(const GeneratedSemigroup& a,
                         const GeneratedSemigroup& b) {
    return a.generators_ == b.generators_ && a.horizon_ == b.horizon_;
  }

private:
  struct PairRow {
    std::once_flag built;
    std::vector<std::pair<Index, Index>> pairs;
  };

  std::vector<Rational> generators_;
  Rational horizon_;
  std::vector<Rational> elements_;
  std::unordered_map<Rational, std::size_t> positions_;
  std::unique_ptr<std::deque<PairRow>> pairRows_;
};

}  // namespace dirichlet
