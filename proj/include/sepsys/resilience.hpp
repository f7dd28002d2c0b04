#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"
#include "inducers.hpp"
#include "orientations.hpp"
#include "rational.hpp"
#include "util.hpp"

namespace sepsys {

struct ResilienceValue {
  enum class Kind { finite, at_least, infinite };
  Kind kind = Kind::infinite;
  std::size_t value = 0;

  static ResilienceValue finite(std::size_t k) { return {Kind::finite, k}; }
  static ResilienceValue at_least(std::size_t cap) { return {Kind::at_least, cap}; }
  static ResilienceValue infinite() { return {Kind::infinite, 0}; }

  friend bool operator==(const ResilienceValue&, const ResilienceValue&) = default;
};

namespace detail {

/// Small sides of the maximal elements, deduplicated and with dominated sets
/// dropped; covers are preserved.
inline std::vector<Side> cover_candidates(const Orientation& tau) {
  std::vector<Side> smalls;
  for (std::size_t i : maximal_elements(tau)) {
    const Side s = tau.element(i).small;
    if (std::find(smalls.begin(), smalls.end(), s) == smalls.end()) smalls.push_back(s);
  }
  std::vector<Side> kept;
  for (const Side& a : smalls) {
    bool dominated = false;
    for (const Side& b : smalls)
      if (a != b && a.is_subset_of(b)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(a);
  }
  std::sort(kept.begin(), kept.end(), [](const Side& a, const Side& b) {
    if (a.count() != b.count()) return a.count() > b.count();
    return side_lex_less(a, b);
  });
  return kept;
}

/// Branch-and-bound search for a cover of the ground set by at most `limit`
/// candidate sides. Branches on the sets containing a least-covered element.
class CoverSearch {
 public:
  CoverSearch(std::size_t width, std::vector<Side> candidates)
      : width_(width), candidates_(std::move(candidates)) {
    max_count_ = 0;
    for (const Side& c : candidates_) max_count_ = std::max(max_count_, c.count());
    containing_.resize(width_);
    for (std::size_t j = 0; j < candidates_.size(); ++j)
      for (std::size_t v = candidates_[j].find_first(); v != Side::npos;
           v = candidates_[j].find_next(v))
        containing_[v].push_back(j);
  }

  bool exists_cover(std::size_t limit) {
    if (limit == 0) return false;
    Side uncovered = full_side(width_);
    used_.assign(candidates_.size(), 0);
    return search(uncovered, limit);
  }

 private:
  bool search(const Side& uncovered, std::size_t remaining) {
    if (uncovered.none()) return true;
    if (remaining == 0 || max_count_ == 0) return false;
    if ((uncovered.count() + max_count_ - 1) / max_count_ > remaining) return false;

    std::size_t pivot = Side::npos;
    std::size_t fewest = SIZE_MAX;
    for (std::size_t v = uncovered.find_first(); v != Side::npos; v = uncovered.find_next(v)) {
      const std::size_t options = containing_[v].size();
      if (options < fewest) {
        fewest = options;
        pivot = v;
      }
    }
    for (std::size_t j : containing_[pivot]) {
      if (used_[j]) continue;
      used_[j] = 1;
      const Side rest = uncovered - candidates_[j];
      if (search(rest, remaining - 1)) {
        used_[j] = 0;
        return true;
      }
      used_[j] = 0;
    }
    return false;
  }

  std::size_t width_;
  std::vector<Side> candidates_;
  std::size_t max_count_ = 0;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::uint8_t> used_;
};

}  // namespace detail

/// Largest k such that no k elements of tau have a co-small supremum, searched
/// over subsets of the maximal elements; exact up to `cap` (default: the
/// number of maximal elements), truncated to AtLeast beyond it.
inline ResilienceValue resilience(const Orientation& tau,
                                  std::optional<std::size_t> cap = std::nullopt) {
  const std::size_t m = maximal_elements(tau).size();
  const std::size_t cap_value = cap.value_or(std::max<std::size_t>(m, 1));
  if (cap && *cap == 0) throw InputError("resilience cap must be positive");

  auto candidates = detail::cover_candidates(tau);
  Side all(tau.width());
  for (const Side& c : candidates) all |= c;
  if (!all.all()) return ResilienceValue::infinite();

  detail::CoverSearch search(tau.width(), std::move(candidates));
  for (std::size_t size = 1; size <= cap_value + 1; ++size)
    if (search.exists_cover(size)) return ResilienceValue::finite(size - 1);
  return ResilienceValue::at_least(cap_value);
}

inline bool is_k_resilient(const Orientation& tau, std::size_t k) {
  auto candidates = detail::cover_candidates(tau);
  Side all(tau.width());
  for (const Side& c : candidates) all |= c;
  if (!all.all()) return true;
  const std::size_t budget = std::min(k, candidates.size());
  detail::CoverSearch search(tau.width(), std::move(candidates));
  return !search.exists_cover(budget);
}

struct LocalWitnessSet {
  std::size_t k = 0;
  Rational ell;
  std::vector<std::size_t> maximal;  // separation indices of the maximal elements
  // Subsets are ascending index lists into `maximal`.
  std::vector<std::pair<std::vector<std::size_t>, WeightFunction>> witnesses;
};

struct LocalCounterexample {
  std::vector<std::size_t> subset;  // indices into the maximal-element list
  WeightFunction farkas;
};

using LocalInducedResult = std::variant<LocalWitnessSet, LocalCounterexample>;

namespace detail {

inline std::vector<std::vector<std::size_t>> local_subsets(std::size_t m, std::size_t k) {
  std::vector<std::vector<std::size_t>> subsets;
  if (k <= m) {
    for_each_combination(m, k, [&](const std::vector<std::size_t>& c) {
      subsets.push_back(c);
      return true;
    });
  } else {
    // Fewer maximal elements than k: all subsets qualify.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<std::size_t> c;
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i) & 1u) c.push_back(i);
      subsets.push_back(std::move(c));
    }
  }
  return subsets;
}

}  // namespace detail

/// For every k-subset of the maximal elements, finds a weight function with
/// margin >= 1 on the subset and deficit <= ell on every maximal element (the
/// deficit bound extends to all of tau by monotonicity), or reports the first
/// subset with a Farkas certificate of infeasibility.
inline LocalInducedResult is_locally_induced(const Orientation& tau, std::size_t k,
                                             const Rational& ell,
                                             std::uint64_t lp_budget = 100000) {
  if (k == 0) throw InputError("k must be positive");
  if (ell < 0) throw InputError("ell must be non-negative");

  const std::vector<std::size_t> mu = maximal_elements(tau);
  const std::size_t m = mu.size();
  std::vector<OrientedSeparation> mu_elems;
  mu_elems.reserve(m);
  for (std::size_t i : mu) mu_elems.push_back(tau.element(i));

  LocalWitnessSet out;
  out.k = k;
  out.ell = ell;
  out.maximal = mu;

  std::uint64_t solved = 0;
  const auto subsets = detail::local_subsets(m, k);
  for (const auto& subset : subsets) {
    if (++solved > lp_budget)
      throw ResourceError("local-witness search exceeded budget after " +
                          std::to_string(solved - 1) + " of " + std::to_string(subsets.size()) +
                          " subsets");
    std::vector<OrientedSeparation> columns;
    std::vector<Rational> bounds;
    for (std::size_t idx : subset) {
      columns.push_back(mu_elems[idx]);
      bounds.push_back(1);
    }
    for (const OrientedSeparation& e : mu_elems) {
      columns.push_back(e);
      bounds.push_back(-ell);
    }
    const RationalMatrix q = build_matrix(tau.width(), columns);
    FeasibilityResult res = solve_feasibility(q, bounds);
    if (Feasible* f = std::get_if<Feasible>(&res)) {
      out.witnesses.emplace_back(subset, std::move(f->x));
    } else {
      return LocalCounterexample{subset, std::get<Infeasible>(res).y};
    }
  }
  return out;
}

/// Pointwise sum of the local witnesses. When k(1 + 1/ell) exceeds m the sum
/// provably induces the maximal elements, hence tau; that case is re-verified.
inline WeightFunction combined_weight(const Orientation& tau, const LocalWitnessSet& ws) {
  const std::size_t m = ws.maximal.size();
  const std::size_t n = tau.width();

  if (ws.k >= m) {
    std::vector<std::size_t> whole(m);
    for (std::size_t i = 0; i < m; ++i) whole[i] = i;
    for (const auto& [subset, w] : ws.witnesses)
      if (subset == whole) return w;
    throw InputError("witness set lacks the full maximal subset");
  }

  const BigInt expected = binomial(m, ws.k);
  if (BigInt(ws.witnesses.size()) != expected)
    throw InputError("witness set does not cover every k-subset of the maximal elements");

  WeightFunction sum(n, Rational(0));
  for (const auto& [subset, w] : ws.witnesses) {
    require_weight_function(w, n);
    for (std::size_t v = 0; v < n; ++v) sum[v] += w[v];
  }
  // k > m / (1 + 1/ell), written multiplicatively to allow ell = 0.
  const bool margin_guaranteed = Rational(ws.k) * (ws.ell + 1) > Rational(m) * ws.ell;
  if (margin_guaranteed && !induces(sum, tau))
    throw InvariantError("combined weight fails to induce although the margin condition holds");
  return sum;
}

struct TopKCover {
  std::size_t element = 0;
  Rational big_weight;
  Rational small_weight;
};

/// Picks the k heaviest maximal elements under w' and returns a ground element
/// outside all their small sides, with the verified strict weight inequality.
inline TopKCover top_k_cover_check(const Orientation& tau, const WeightFunction& w_mu,
                                   std::size_t k) {
  const std::vector<std::size_t> mu = maximal_elements(tau);
  const std::size_t m = mu.size();
  if (w_mu.size() != m) throw InputError("weight function must live on the maximal elements");
  if (!is_nonzero(w_mu)) throw InputError("weight function must be non-zero");
  for (const Rational& v : w_mu)
    if (v < 0) throw InputError("weight functions must be non-negative");
  if (2 * k <= m) throw InputError("k must exceed half the number of maximal elements");
  if (!is_k_resilient(tau, k)) throw InputError("orientation is not k-resilient");

  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w_mu[a] > w_mu[b]; });

  Side covered(tau.width());
  for (std::size_t r = 0; r < std::min(k, m); ++r) covered |= tau.element(mu[order[r]]).small;
  const Side outside = ~covered;
  const std::size_t v = outside.find_first();
  if (v == Side::npos) throw InvariantError("resilient orientation left no uncovered element");

  TopKCover result;
  result.element = v;
  result.big_weight = 0;
  result.small_weight = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const OrientedSeparation e = tau.element(mu[i]);
    if (e.big.test(v)) result.big_weight += w_mu[i];
    if (e.small.test(v)) result.small_weight += w_mu[i];
  }
  if (!(result.big_weight > result.small_weight))
    throw InvariantError("top-k cover argument failed to produce a strict inequality");
  return result;
}

}  // namespace sepsys
