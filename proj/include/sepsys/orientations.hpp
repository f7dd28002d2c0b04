#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "rational.hpp"
#include "util.hpp"

namespace sepsys {

/// A choice of one orientation per separation of a system. The flag vector
/// records, per separation in canonical system order, whether the chosen
/// element is the stored canonical orientation (true) or its inverse.
class Orientation {
 public:
  Orientation(SystemPtr system, std::vector<std::uint8_t> forward)
      : system_(std::move(system)), forward_(std::move(forward)) {
    if (!system_) throw InputError("orientation requires a system");
    if (forward_.size() != system_->size())
      throw InputError("orientation must choose a direction for every separation");
    // Normalize flags so orientations compare by their elements; a degenerate
    // separation has only one orientation.
    for (std::size_t i = 0; i < forward_.size(); ++i) {
      forward_[i] = forward_[i] ? 1 : 0;
      if (system_->at(i).canonical().is_degenerate()) forward_[i] = 1;
    }
  }

  static Orientation all_forward(SystemPtr system) {
    std::vector<std::uint8_t> flags(system->size(), 1);
    return Orientation(std::move(system), std::move(flags));
  }

  const SeparationSystem& system() const { return *system_; }
  const SystemPtr& system_ptr() const { return system_; }
  std::size_t size() const { return forward_.size(); }
  std::size_t width() const { return system_->width(); }
  bool forward(std::size_t i) const { return forward_.at(i) != 0; }
  const std::vector<std::uint8_t>& flags() const { return forward_; }

  OrientedSeparation element(std::size_t i) const {
    const OrientedSeparation& canon = system_->at(i).canonical();
    return forward(i) ? canon : canon.inverse();
  }

  /// True iff the underlying separation belongs to the system and this
  /// orientation picked exactly `o`.
  bool contains(const OrientedSeparation& o) const {
    const auto idx = system_->find(Separation(o));
    if (!idx) return false;
    return element(*idx) == o;
  }

  friend bool operator==(const Orientation& a, const Orientation& b) {
    return a.forward_ == b.forward_ && (a.system_ == b.system_ || *a.system_ == *b.system_);
  }

 private:
  SystemPtr system_;
  std::vector<std::uint8_t> forward_;
};

struct ConsistencyCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 2>> witness;  // indices i, j with inverse(e_i) < e_j
};

/// No inverted element lies strictly below another element. Pairs with the
/// same underlying separation are exempt; regularity and the tangle axiom
/// cover those.
inline ConsistencyCheck is_consistent(const Orientation& tau) {
  std::vector<OrientedSeparation> elems;
  elems.reserve(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) elems.push_back(tau.element(i));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const OrientedSeparation inv_i = elems[i].inverse();
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (lt(inv_i, elems[j])) return {false, std::array<std::size_t, 2>{i, j}};
      if (lt(elems[j].inverse(), elems[i])) return {false, std::array<std::size_t, 2>{j, i}};
    }
  }
  return {};
}

struct ProfileCheck {
  bool ok = true;
  bool consistent = true;
  std::optional<std::array<std::size_t, 2>> witness;  // pair whose inverted meet lies in tau
};

/// Consistency plus: for distinct elements s, t the meet of their inverses is
/// not in tau. The meet only counts when its separation belongs to the system.
inline ProfileCheck is_profile(const Orientation& tau) {
  const ConsistencyCheck c = is_consistent(tau);
  if (!c.ok) return {false, false, c.witness};
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const OrientedSeparation inv_i = tau.element(i).inverse();
    for (std::size_t j = i + 1; j < tau.size(); ++j) {
      const OrientedSeparation m = meet(inv_i, tau.element(j).inverse());
      if (tau.contains(m)) return {false, true, std::array<std::size_t, 2>{i, j}};
    }
  }
  return {};
}

struct RegularityCheck {
  bool ok = true;
  std::optional<std::size_t> witness;  // index of a co-small element
};

inline RegularityCheck is_regular(const Orientation& tau) {
  for (std::size_t i = 0; i < tau.size(); ++i)
    if (tau.element(i).is_cosmall()) return {false, i};
  return {};
}

struct TangleCheck {
  bool ok = true;
  bool consistent = true;
  std::optional<std::array<std::size_t, 3>> witness;  // small sides covering the ground set
};

namespace detail {

/// Distinct small sides with a representative element index, lightest first.
inline std::vector<std::pair<Side, std::size_t>> distinct_smalls(const Orientation& tau) {
  std::map<Side, std::size_t> seen;
  for (std::size_t i = 0; i < tau.size(); ++i) seen.emplace(tau.element(i).small, i);
  std::vector<std::pair<Side, std::size_t>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const std::size_t ca = a.first.count(), cb = b.first.count();
    if (ca != cb) return ca < cb;
    return a.second < b.second;
  });
  return out;
}

inline std::uint32_t low_word(const Side& s) {
  std::vector<Side::block_type> blocks(s.num_blocks());
  boost::to_block_range(s, blocks.begin());
  return blocks.empty() ? 0u : static_cast<std::uint32_t>(blocks[0]);
}

/// Cover search via a superset-indicator table over all masks; only viable for
/// small widths but immune to a quadratic-times-linear scan blowup.
inline std::optional<std::array<std::size_t, 3>> cover_triple_sos(
    std::size_t width, const std::vector<std::pair<Side, std::size_t>>& smalls) {
  const std::uint32_t full = (width == 32) ? 0xffffffffu : ((1u << width) - 1u);
  std::vector<std::uint8_t> superset(std::size_t{1} << width, 0);
  for (const auto& [side, idx] : smalls) superset[low_word(side)] = 1;
  for (std::size_t b = 0; b < width; ++b) {
    const std::uint32_t bit = 1u << b;
    for (std::uint32_t m = 0; m <= full; ++m)
      if (!(m & bit) && superset[m | bit]) superset[m] = 1;
  }
  for (std::size_t i = 0; i < smalls.size(); ++i) {
    const std::uint32_t a = low_word(smalls[i].first);
    for (std::size_t j = i; j < smalls.size(); ++j) {
      const std::uint32_t missing = full & ~(a | low_word(smalls[j].first));
      if (!superset[missing]) continue;
      for (const auto& [side, idx] : smalls) {
        if ((low_word(side) & missing) == missing)
          return std::array<std::size_t, 3>{smalls[i].second, smalls[j].second, idx};
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::array<std::size_t, 3>> cover_triple_direct(
    const std::vector<std::pair<Side, std::size_t>>& smalls) {
  const std::size_t n = smalls.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Side ab = smalls[i].first | smalls[j].first;
      for (std::size_t k = j; k < n; ++k) {
        if ((ab | smalls[k].first).all())
          return std::array<std::size_t, 3>{smalls[i].second, smalls[j].second, smalls[k].second};
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::array<std::size_t, 3>> cover_triple(
    std::size_t width, const std::vector<std::pair<Side, std::size_t>>& smalls) {
  if (width <= 25 && smalls.size() > 64) return cover_triple_sos(width, smalls);
  return cover_triple_direct(smalls);
}

}  // namespace detail

/// Consistent and no three (not necessarily distinct) small sides cover the
/// ground set.
inline TangleCheck is_tangle(const Orientation& tau) {
  const ConsistencyCheck c = is_consistent(tau);
  if (!c.ok) return {false, false, std::nullopt};
  const auto smalls = detail::distinct_smalls(tau);
  if (auto triple = detail::cover_triple(tau.width(), smalls)) {
    std::sort(triple->begin(), triple->end());
    return {false, true, *triple};
  }
  return {};
}

struct AxiomReport {
  ConsistencyCheck consistent;
  ProfileCheck profile;
  RegularityCheck regular;
  TangleCheck tangle;
};

inline AxiomReport axiom_report(const Orientation& tau) {
  return {is_consistent(tau), is_profile(tau), is_regular(tau), is_tangle(tau)};
}

/// Indices of the <=-maximal elements, ascending.
inline std::vector<std::size_t> maximal_elements(const Orientation& tau) {
  std::vector<OrientedSeparation> elems;
  elems.reserve(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) elems.push_back(tau.element(i));

  // Only an element with a larger-or-equal small side can dominate.
  std::vector<std::size_t> by_small;
  by_small.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) by_small.push_back(i);
  std::sort(by_small.begin(), by_small.end(), [&](std::size_t a, std::size_t b) {
    return elems[a].small.count() < elems[b].small.count();
  });
  std::vector<std::size_t> rank(elems.size());
  for (std::size_t pos = 0; pos < by_small.size(); ++pos) rank[by_small[pos]] = pos;

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    bool maximal = true;
    for (std::size_t pos = rank[i]; pos < by_small.size() && maximal; ++pos) {
      const std::size_t j = by_small[pos];
      if (j != i && lt(elems[i], elems[j])) maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

namespace detail {

inline void require_bipartitions(const SeparationSystem& sys) {
  for (const Separation& s : sys.separations())
    if (s.canonical().small.intersects(s.canonical().big))
      throw InputError("operation requires a bipartition system; offending separation " +
                       to_string(s));
}

}  // namespace detail

/// Minimum size of the intersection of three (not necessarily distinct) big
/// sides, or nullopt for an empty orientation. Triples of maximal elements
/// suffice: big sides only shrink upward in the separation order.
inline std::optional<std::size_t> min_triple_big_intersection(const Orientation& tau) {
  detail::require_bipartitions(tau.system());
  if (tau.size() == 0) return std::nullopt;
  std::vector<Side> bigs;
  for (std::size_t i : maximal_elements(tau)) bigs.push_back(tau.element(i).big);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < bigs.size(); ++i)
    for (std::size_t j = i; j < bigs.size(); ++j)
      for (std::size_t k = j; k < bigs.size(); ++k) {
        const std::size_t size = (bigs[i] & bigs[j] & bigs[k]).count();
        if (!best || size < *best) best = size;
      }
  return best;
}

/// F^ell tangle: consistent and every triple of big sides meets in at least
/// ell points. Requires a bipartition system.
inline bool is_f_ell_tangle(const Orientation& tau, const Rational& ell) {
  if (ell < 0) throw InputError("ell must be non-negative");
  if (!is_consistent(tau).ok) return false;
  const auto least = min_triple_big_intersection(tau);
  if (!least) return true;
  return Rational(*least) >= ell;
}

/// Restriction of tau to an arbitrary subsystem of its system.
inline Orientation restrict_to(const Orientation& tau, SystemPtr sub) {
  std::vector<std::uint8_t> flags;
  flags.reserve(sub->size());
  for (const Separation& s : sub->separations()) {
    const auto idx = tau.system().find(s);
    if (!idx) throw InputError("subsystem separation missing from the orientation's system");
    flags.push_back(tau.forward(*idx) ? 1 : 0);
  }
  return Orientation(std::move(sub), std::move(flags));
}

/// Restriction of tau to the separations of order less than k.
inline Orientation restrict_orientation(const Orientation& tau, std::size_t k) {
  auto sub = std::make_shared<const SeparationSystem>(restrict_to_Sk(tau.system(), k));
  return restrict_to(tau, std::move(sub));
}

/// tau_small extends to tau_big, i.e. tau_small is a subset of tau_big.
inline bool extends(const Orientation& tau_small, const Orientation& tau_big) {
  for (std::size_t i = 0; i < tau_small.size(); ++i)
    if (!tau_big.contains(tau_small.element(i))) return false;
  return true;
}

using OrientationFilter = std::function<bool(const Orientation&)>;

/// Brute-force stream of all orientations passing the filter. Ground truth for
/// tests; refuses to run past the budget.
inline std::vector<Orientation> enumerate_orientations(SystemPtr sys, const OrientationFilter& filter,
                                                       std::uint64_t budget = 1u << 20) {
  const std::size_t t = sys->size();
  if (t >= 63 || (std::uint64_t{1} << t) > budget)
    throw ResourceError("orientation enumeration exceeds budget");
  std::vector<Orientation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    std::vector<std::uint8_t> flags(t);
    for (std::size_t i = 0; i < t; ++i) flags[i] = (mask >> i) & 1u;
    Orientation tau(sys, std::move(flags));
    if (!filter || filter(tau)) out.push_back(std::move(tau));
  }
  return out;
}

/// Exhaustive search for regular profiles with consistency, profile and
/// regularity propagation; prunes only assignments every extension of which
/// stays violating, so the result equals the brute-force enumeration.
inline std::vector<Orientation> find_regular_profiles(SystemPtr sys,
                                                      std::uint64_t node_budget = 50'000'000) {
  const std::size_t t = sys->size();
  std::vector<OrientedSeparation> fwd, rev;
  fwd.reserve(t);
  rev.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    fwd.push_back(sys->at(i).canonical());
    rev.push_back(sys->at(i).canonical().inverse());
  }
  const auto oriented = [&](std::size_t i, bool forward) -> const OrientedSeparation& {
    return forward ? fwd[i] : rev[i];
  };

  // forbid bit 1: forward banned; bit 2: inverse banned.
  std::vector<std::uint8_t> forbid(t, 0);
  for (std::size_t i = 0; i < t; ++i) {
    if (fwd[i].is_cosmall()) forbid[i] |= 1;
    if (rev[i].is_cosmall()) forbid[i] |= 2;
    if (forbid[i] == 3) return {};  // degenerate separation present
  }

  std::vector<std::int8_t> state(t, -1);  // -1 unassigned, else 0/1 forward flag
  std::vector<std::size_t> assigned;
  std::vector<Orientation> found;
  std::uint64_t nodes = 0;

  struct ForbidMark {
    std::size_t index;
    std::uint8_t bit;
  };

  const std::function<void(std::size_t)> dfs = [&](std::size_t pos) {
    if (++nodes > node_budget) throw ResourceError("regular-profile search exceeds node budget");
    if (pos == t) {
      std::vector<std::uint8_t> flags(t);
      for (std::size_t i = 0; i < t; ++i) flags[i] = state[i] == 1 ? 1 : 0;
      found.emplace_back(sys, std::move(flags));
      return;
    }
    for (int dir = 1; dir >= 0; --dir) {
      const std::uint8_t bit = dir ? 1 : 2;
      if (forbid[pos] & bit) continue;
      const OrientedSeparation& e = oriented(pos, dir != 0);
      const OrientedSeparation inv_e = e.inverse();

      bool ok = true;
      std::vector<ForbidMark> marks;
      for (std::size_t j : assigned) {
        const OrientedSeparation f = oriented(j, state[j] == 1);
        if (lt(inv_e, f) || lt(f.inverse(), e)) {
          ok = false;
          break;
        }
        const OrientedSeparation m = meet(inv_e, f.inverse());
        const auto ms = sys->find(Separation(m));
        if (!ms) continue;
        const bool banned_dir_forward = m == fwd[*ms];
        if (state[*ms] != -1) {
          if ((state[*ms] == 1) == banned_dir_forward) {
            ok = false;
            break;
          }
          continue;
        }
        const std::uint8_t ban_bit = banned_dir_forward ? 1 : 2;
        if (!(forbid[*ms] & ban_bit)) {
          forbid[*ms] |= ban_bit;
          marks.push_back({*ms, ban_bit});
          if (forbid[*ms] == 3) {
            ok = false;
            break;
          }
        }
      }
      // A recorded ban may have landed on this very separation.
      if (ok && (forbid[pos] & bit)) ok = false;
      if (ok) {
        state[pos] = dir;
        assigned.push_back(pos);
        dfs(pos + 1);
        assigned.pop_back();
        state[pos] = -1;
      }
      for (const ForbidMark& mark : marks) forbid[mark.index] &= ~mark.bit;
    }
  };
  dfs(0);
  return found;
}

}  // namespace sepsys
