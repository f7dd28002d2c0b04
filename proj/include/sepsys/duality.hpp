#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "orientations.hpp"

namespace sepsys {

/// The separation of the system's separation set that v defines: separations
/// whose sigma-orientation keeps v on the small side versus on the big side.
/// Separations with v in the separator land on both sides.
inline OrientedSeparation phi(std::size_t v, const Orientation& sigma) {
  if (v >= sigma.width()) throw InputError("element outside the ground set");
  const std::size_t t = sigma.size();
  Side c(t), d(t);
  for (std::size_t j = 0; j < t; ++j) {
    const OrientedSeparation e = sigma.element(j);
    if (e.small.test(v)) c.set(j);
    if (e.big.test(v)) d.set(j);
  }
  return OrientedSeparation(std::move(c), std::move(d));
}

struct DualSystem {
  SystemPtr base;  // deduplicated unoriented images, canonically sorted
  /// Default orientation as a family: the oriented image of each ground
  /// element. Two elements may contribute inverse orientations of one
  /// underlying separation; `default_orientation` is only attached when the
  /// family picks a single direction per separation.
  std::vector<OrientedSeparation> tau_sigma;
  std::optional<Orientation> default_orientation;
  bool injective = false;  // oriented images pairwise distinct
  std::vector<std::vector<std::size_t>> collision_classes;  // identical images
  std::vector<std::size_t> image_of;  // v -> index into base->separations()
};

/// Builds the dual set of separations with respect to sigma. Elements carrying
/// the same information (equal oriented images) collapse into collision
/// classes and defeat injectivity.
inline DualSystem dualize(const Orientation& sigma) {
  if (sigma.size() == 0) throw InputError("cannot dualize an empty system");
  const std::size_t n = sigma.width();

  DualSystem dual;
  dual.tau_sigma.reserve(n);
  for (std::size_t v = 0; v < n; ++v) dual.tau_sigma.push_back(phi(v, sigma));

  std::map<std::pair<std::vector<Side::block_type>, std::vector<Side::block_type>>,
           std::vector<std::size_t>>
      classes;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Side::block_type> small(dual.tau_sigma[v].small.num_blocks());
    std::vector<Side::block_type> big(dual.tau_sigma[v].big.num_blocks());
    boost::to_block_range(dual.tau_sigma[v].small, small.begin());
    boost::to_block_range(dual.tau_sigma[v].big, big.begin());
    classes[{std::move(small), std::move(big)}].push_back(v);
  }
  dual.injective = classes.size() == n;
  for (auto& [key, members] : classes) dual.collision_classes.push_back(members);
  std::sort(dual.collision_classes.begin(), dual.collision_classes.end());

  std::vector<Separation> seps;
  for (std::size_t v = 0; v < n; ++v) seps.emplace_back(dual.tau_sigma[v]);
  dual.base = make_system(GroundSet(sigma.size()), std::move(seps), OrderSpec::standard());
  dual.image_of.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    dual.image_of[v] = *dual.base->find(Separation(dual.tau_sigma[v]));

  // A per-separation orientation exists only when no two images demand
  // opposite directions of one separation.
  std::vector<std::int8_t> want(dual.base->size(), -1);
  bool consistent_directions = true;
  for (std::size_t v = 0; v < n && consistent_directions; ++v) {
    const std::size_t idx = dual.image_of[v];
    const std::int8_t dir =
        (dual.tau_sigma[v] == dual.base->at(idx).canonical()) ? 1 : 0;
    if (want[idx] == -1)
      want[idx] = dir;
    else if (want[idx] != dir)
      consistent_directions = false;
  }
  if (consistent_directions) {
    std::vector<std::uint8_t> flags(dual.base->size());
    for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = want[i] == 1 ? 1 : 0;
    dual.default_orientation = Orientation(dual.base, std::move(flags));
  }
  return dual;
}

/// Dualizes the dual and checks that the primal returns, under the canonical
/// relabeling of ground elements by the positions of their images.
inline bool double_dual(const Orientation& sigma) {
  const DualSystem first = dualize(sigma);
  if (!first.injective) throw InputError("double dual requires an injective image map");
  const std::size_t n = sigma.width();
  const std::size_t t = sigma.size();

  // Canonical positions of the oriented images.
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Separation sa(first.tau_sigma[a]), sb(first.tau_sigma[b]);
    if (!(sa == sb)) return sep_less(sa, sb);
    // Inverse orientations of one separation: canonical direction first.
    return (first.tau_sigma[a] == sa.canonical()) && !(first.tau_sigma[b] == sb.canonical());
  });
  std::vector<std::size_t> position(n);
  for (std::size_t pos = 0; pos < n; ++pos) position[order[pos]] = pos;

  // Second dualization, mirrored over the members of tau_sigma.
  std::vector<OrientedSeparation> second;
  second.reserve(t);
  for (std::size_t j = 0; j < t; ++j) {
    Side c(n), d(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (first.tau_sigma[v].small.test(j)) c.set(position[v]);
      if (first.tau_sigma[v].big.test(j)) d.set(position[v]);
    }
    second.emplace_back(std::move(c), std::move(d));
  }

  // The primal, transported along the same relabeling.
  std::vector<OrientedSeparation> expected;
  expected.reserve(t);
  for (std::size_t j = 0; j < t; ++j) {
    const OrientedSeparation e = sigma.element(j);
    Side small(n), big(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (e.small.test(v)) small.set(position[v]);
      if (e.big.test(v)) big.set(position[v]);
    }
    expected.emplace_back(std::move(small), std::move(big));
  }

  auto key = [](const OrientedSeparation& o) {
    return std::make_pair(side_indices(o.small), side_indices(o.big));
  };
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> lhs, rhs;
  for (const auto& o : second) lhs.push_back(key(o));
  for (const auto& o : expected) rhs.push_back(key(o));
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

}  // namespace sepsys
