#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "core.hpp"
#include "inducers.hpp"
#include "orientations.hpp"
#include "util.hpp"

namespace sepsys {

/// All 2^(n-1) bipartitions of an n-set, including the trivial one.
inline SystemPtr full_bipartition_universe(std::size_t n, OrderSpec order = OrderSpec::standard(),
                                           std::uint64_t budget = 1u << 22) {
  if (n == 0) throw InputError("ground set must be non-empty");
  if (n >= 63 || (std::uint64_t{1} << n) > budget)
    throw ResourceError("bipartition universe exceeds budget");
  std::vector<Separation> seps;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Side a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? a : b).set(i);
    seps.emplace_back(OrientedSeparation(std::move(a), std::move(b)));
  }
  return make_system(GroundSet(n), std::move(seps), std::move(order));
}

/// All separations of an n-set with standard order below k.
inline SystemPtr full_Sk_universe(std::size_t n, std::size_t k, std::uint64_t budget = 1u << 24) {
  if (n == 0) throw InputError("ground set must be non-empty");
  // Choose a separator of size z < k, then two-color the remaining elements.
  BigInt work = 0;
  for (std::size_t z = 0; z < std::min(k, n + 1); ++z)
    work += binomial(n, z) * boost::multiprecision::pow(BigInt(2), unsigned(n - z));
  if (work > budget) throw ResourceError("S_k universe exceeds budget");

  std::vector<Separation> seps;
  for (std::size_t z = 0; z < std::min(k, n + 1); ++z) {
    for_each_combination(n, z, [&](const std::vector<std::size_t>& sep_elems) {
      const Side separator = side_from_indices(n, sep_elems);
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < n; ++i)
        if (!separator.test(i)) rest.push_back(i);
      const std::size_t r = rest.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        Side a = separator, b = separator;
        for (std::size_t i = 0; i < r; ++i) ((mask >> i) & 1u ? a : b).set(rest[i]);
        seps.emplace_back(OrientedSeparation(std::move(a), std::move(b)));
      }
      return true;
    });
  }
  return make_system(GroundSet(n), std::move(seps), OrderSpec::standard());
}

/// All bipartitions of an n-set whose big side contains x, oriented toward x.
inline Orientation gen_principal(std::size_t n, std::size_t x, std::uint64_t budget = 1u << 22) {
  if (n < 2) throw InputError("principal family needs at least two elements");
  if (x >= n) throw InputError("fixed element outside the ground set");
  const SystemPtr sys = full_bipartition_universe(n, OrderSpec::standard(), budget);
  std::vector<std::uint8_t> flags(sys->size());
  for (std::size_t i = 0; i < sys->size(); ++i)
    flags[i] = sys->at(i).canonical().big.test(x) ? 1 : 0;
  return Orientation(sys, std::move(flags));
}

/// The introduction's tangle: one ground element per 3-subset of the m
/// separations, placed on the big side of exactly those three.
inline Orientation gen_intro(std::size_t m) {
  if (m < 3) throw InputError("construction needs at least three separations");
  std::vector<std::vector<std::size_t>> triples;
  for_each_combination(m, 3, [&](const std::vector<std::size_t>& c) {
    triples.push_back(c);
    return true;
  });
  const std::size_t n = triples.size();

  std::vector<Side> bigs(m, Side(n));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t j : triples[v]) bigs[j].set(v);

  std::vector<Separation> seps;
  std::vector<std::pair<Separation, Side>> toward;
  for (std::size_t j = 0; j < m; ++j) {
    OrientedSeparation o(~bigs[j], bigs[j]);
    seps.emplace_back(o);
    toward.emplace_back(Separation(o), bigs[j]);
  }
  const SystemPtr sys = make_system(GroundSet(n), std::move(seps), OrderSpec::standard());
  std::vector<std::uint8_t> flags(sys->size());
  for (const auto& [sep, big] : toward) {
    const std::size_t idx = *sys->find(sep);
    flags[idx] = (sys->at(idx).canonical().big == big) ? 1 : 0;
  }
  return Orientation(sys, std::move(flags));
}

/// Bipartitions with a side lighter than n/3, oriented toward the majority.
inline Orientation gen_thirds(std::size_t n) {
  if (n < 4) throw InputError("majority family needs at least four elements");
  std::vector<Separation> seps;
  for (std::size_t s = 0; 3 * s < n; ++s) {
    for_each_combination(n, s, [&](const std::vector<std::size_t>& small) {
      const Side a = side_from_indices(n, small);
      seps.emplace_back(OrientedSeparation(a, ~a));
      return true;
    });
  }
  const SystemPtr sys = make_system(GroundSet(n), std::move(seps), OrderSpec::standard());
  const WeightOrienting wo = orient_by_weight(WeightFunction(n, Rational(1)), *sys);
  return orientation_from(wo, sys);
}

namespace detail {

struct GridGraph {
  std::size_t n = 0;

  std::size_t cells() const { return n * n; }

  std::vector<std::size_t> neighbors(std::size_t cell) const {
    const std::size_t r = cell / n, c = cell % n;
    std::vector<std::size_t> out;
    if (r > 0) out.push_back(cell - n);
    if (r + 1 < n) out.push_back(cell + n);
    if (c > 0) out.push_back(cell - 1);
    if (c + 1 < n) out.push_back(cell + 1);
    return out;
  }

  /// Component ids of the cells outside `removed`; removed cells get npos.
  std::vector<std::size_t> components(const Side& removed, std::size_t& count) const {
    std::vector<std::size_t> comp(cells(), Side::npos);
    count = 0;
    for (std::size_t start = 0; start < cells(); ++start) {
      if (removed.test(start) || comp[start] != Side::npos) continue;
      std::queue<std::size_t> frontier;
      frontier.push(start);
      comp[start] = count;
      while (!frontier.empty()) {
        const std::size_t cell = frontier.front();
        frontier.pop();
        for (std::size_t next : neighbors(cell)) {
          if (removed.test(next) || comp[next] != Side::npos) continue;
          comp[next] = count;
          frontier.push(next);
        }
      }
      ++count;
    }
    return comp;
  }
};

}  // namespace detail

/// Graph separations of the n-by-n grid of order at most four, oriented toward
/// the heavier side. A tie would contradict the orientation being induced by
/// the full vertex set and is reported as an invariant violation.
inline Orientation gen_grid(std::size_t n, std::uint64_t budget = 4'000'000) {
  if (n < 5) throw InputError("grid family needs n >= 5");
  const detail::GridGraph grid{n};
  const std::size_t cells = grid.cells();

  BigInt work = 0;
  for (std::size_t z = 0; z <= 4; ++z) work += binomial(cells, z);
  if (work > budget) throw ResourceError("grid separator enumeration exceeds budget");

  std::vector<Separation> seps;
  for (std::size_t z = 0; z <= 4; ++z) {
    for_each_combination(cells, z, [&](const std::vector<std::size_t>& removed_elems) {
      const Side removed = side_from_indices(cells, removed_elems);
      std::size_t comp_count = 0;
      const std::vector<std::size_t> comp = grid.components(removed, comp_count);
      // One side fixes component 0 to avoid emitting each pair twice.
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (comp_count - 1)); ++mask) {
        Side a = removed, b = removed;
        for (std::size_t cell = 0; cell < cells; ++cell) {
          if (removed.test(cell)) continue;
          const std::size_t c = comp[cell];
          const bool on_a = c > 0 && ((mask >> (c - 1)) & 1u);
          (on_a ? a : b).set(cell);
        }
        seps.emplace_back(OrientedSeparation(std::move(a), std::move(b)));
      }
      return true;
    });
  }
  const SystemPtr sys = make_system(GroundSet(cells), std::move(seps), OrderSpec::standard());
  const WeightOrienting wo = orient_by_weight(WeightFunction(cells, Rational(1)), *sys);
  if (!wo.total())
    throw InvariantError("grid orientation hit a tie; the full vertex set cannot induce it");
  return orientation_from(wo, sys);
}

/// The sharpness family: ground elements are the k-subsets of [m] (one block
/// of `block` elements each), the order of a bipartition counts the crossed
/// membership families V_i, and every bipartition of order below m points to
/// the side containing some V_i. Materializing all of S_m is exponential in
/// general, so the family is exposed through queries plus two instantiations:
/// the maximal elements alone, or the full system under a budget.
class TauMK {
 public:
  TauMK(std::size_t m, std::size_t k, std::optional<std::size_t> ell)
      : m_(m), k_(k), block_(ell.value_or(1)) {
    if (k < 3 || k > m) throw InputError("family requires 3 <= k <= m");
    if (block_ < 1) throw InputError("block size must be at least one");
    for_each_combination(m, k, [&](const std::vector<std::size_t>& c) {
      subsets_.push_back(c);
      return true;
    });
    const std::size_t n = subsets_.size() * block_;
    families_.assign(m_, Side(n));
    for (std::size_t s = 0; s < subsets_.size(); ++s)
      for (std::size_t i : subsets_[s])
        for (std::size_t b = 0; b < block_; ++b) families_[i].set(s * block_ + b);
  }

  std::size_t m() const { return m_; }
  std::size_t k() const { return k_; }
  std::size_t block() const { return block_; }
  std::size_t ground_size() const { return subsets_.size() * block_; }
  const std::vector<Side>& families() const { return families_; }

  OrderSpec order_spec() const {
    return OrderSpec::crossing(families_);
  }

  /// The number of membership families meeting both sides.
  std::size_t crossing_order(const Separation& s) const {
    return order_spec().evaluate(s);
  }

  /// The designated orientation of a bipartition of order below m, or nullopt.
  std::optional<OrientedSeparation> orient(const Separation& s) const {
    if (s.width() != ground_size()) throw InputError("separation over a different ground set");
    const OrientedSeparation& canon = s.canonical();
    if (canon.small.intersects(canon.big)) throw InputError("family orients bipartitions only");
    if (crossing_order(s) >= m_) return std::nullopt;
    for (const Side& family : families_) {
      if (family.is_subset_of(canon.big)) return canon;
      if (family.is_subset_of(canon.small)) return canon.inverse();
    }
    throw InvariantError("bipartition of low order keeps no family whole");
  }

  /// The m maximal elements (complement of V_i, V_i) as their own system.
  Orientation maximal_instance() const {
    std::vector<Separation> seps;
    for (const Side& family : families_)
      seps.emplace_back(OrientedSeparation(~family, family));
    const SystemPtr sys = make_system(GroundSet(ground_size()), std::move(seps), order_spec());
    std::vector<std::uint8_t> flags(sys->size());
    for (std::size_t i = 0; i < sys->size(); ++i) {
      const OrientedSeparation o = *orient(sys->at(i));
      flags[i] = (o == sys->at(i).canonical()) ? 1 : 0;
    }
    return Orientation(sys, std::move(flags));
  }

 private:
  std::size_t m_, k_, block_;
  std::vector<std::vector<std::size_t>> subsets_;
  std::vector<Side> families_;
};

inline TauMK gen_tau_mk(std::size_t m, std::size_t k, std::optional<std::size_t> ell = {}) {
  return TauMK(m, k, ell);
}

/// Full materialization of S_m: every bipartition with a side containing some
/// V_i. Exponential in the co-family size; guarded by the budget.
inline Orientation materialize_tau_mk(const TauMK& family, std::uint64_t budget = 1u << 23) {
  const std::size_t n = family.ground_size();
  BigInt work = 0;
  for (const Side& f : family.families())
    work += boost::multiprecision::pow(BigInt(2), unsigned(n - f.count()));
  if (work > budget) throw ResourceError("full materialization of the family exceeds budget");

  std::map<Separation, Side, SepLess> toward;
  for (const Side& family_side : family.families()) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (!family_side.test(i)) rest.push_back(i);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
      Side big = family_side;
      for (std::size_t i = 0; i < rest.size(); ++i)
        if ((mask >> i) & 1u) big.set(rest[i]);
      OrientedSeparation o(~big, big);
      toward.emplace(Separation(o), big);
    }
  }
  std::vector<Separation> seps;
  for (const auto& [sep, big] : toward) seps.push_back(sep);
  const SystemPtr sys = make_system(GroundSet(n), std::move(seps), family.order_spec());
  std::vector<std::uint8_t> flags(sys->size());
  for (std::size_t i = 0; i < sys->size(); ++i) {
    const Side& big = toward.at(sys->at(i));
    flags[i] = (sys->at(i).canonical().big == big) ? 1 : 0;
  }
  return Orientation(sys, std::move(flags));
}

}  // namespace sepsys
