#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"
#include "exactlp.hpp"
#include "orientations.hpp"
#include "rational.hpp"
#include "util.hpp"

namespace sepsys {

/// Non-negative weights on ground-set elements (or on separations, when used
/// as a dual-side witness).
using WeightFunction = std::vector<Rational>;

inline Rational weight_of(const WeightFunction& w, const Side& side) {
  Rational sum = 0;
  for (std::size_t i = side.find_first(); i != Side::npos; i = side.find_next(i)) sum += w.at(i);
  return sum;
}

inline bool is_nonzero(const WeightFunction& w) {
  for (const Rational& v : w)
    if (v != 0) return true;
  return false;
}

inline void require_weight_function(const WeightFunction& w, std::size_t width) {
  if (w.size() != width) throw InputError("weight function size does not match the ground set");
  for (const Rational& v : w)
    if (v < 0) throw InputError("weight functions must be non-negative");
}

inline WeightFunction indicator(const Side& side) {
  WeightFunction w(side.size(), Rational(0));
  for (std::size_t i = side.find_first(); i != Side::npos; i = side.find_next(i)) w[i] = 1;
  return w;
}

struct WeightOrienting {
  std::vector<std::int8_t> direction;  // +1 canonical, -1 inverse, 0 tie
  std::vector<std::size_t> ties;       // separation indices left unoriented

  bool total() const { return ties.empty(); }
};

/// Orients each separation toward its heavier side; ties are surfaced, never
/// broken.
inline WeightOrienting orient_by_weight(const WeightFunction& w, const SeparationSystem& sys) {
  require_weight_function(w, sys.width());
  WeightOrienting result;
  result.direction.resize(sys.size(), 0);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const OrientedSeparation& canon = sys.at(i).canonical();
    const Rational wa = weight_of(w, canon.small);
    const Rational wb = weight_of(w, canon.big);
    if (wa < wb)
      result.direction[i] = 1;
    else if (wb < wa)
      result.direction[i] = -1;
    else
      result.ties.push_back(i);
  }
  return result;
}

inline Orientation orientation_from(const WeightOrienting& wo, SystemPtr sys) {
  if (!wo.total()) throw InputError("weight function leaves ties; no total orientation");
  std::vector<std::uint8_t> flags(wo.direction.size());
  for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = wo.direction[i] > 0 ? 1 : 0;
  return Orientation(std::move(sys), std::move(flags));
}

/// w(A) < w(B) strictly for every (A, B) in tau.
inline bool induces(const WeightFunction& w, const Orientation& tau) {
  require_weight_function(w, tau.width());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const OrientedSeparation e = tau.element(i);
    if (!(weight_of(w, e.small) < weight_of(w, e.big))) return false;
  }
  return true;
}

/// Indicator-function variant of `induces`, by exact counting.
inline bool induces_set(const Side& x, const Orientation& tau) {
  if (x.size() != tau.width()) throw InputError("set over a different ground set");
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const OrientedSeparation e = tau.element(i);
    if ((x & e.small).count() >= (x & e.big).count()) return false;
  }
  return true;
}

/// Sign matrix with one row per ground element and one column per oriented
/// separation: +1 on the big side only, -1 on the small side only, 0 on the
/// separator.
inline RationalMatrix build_matrix(std::size_t width, const std::vector<OrientedSeparation>& columns) {
  RationalMatrix q(width, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const OrientedSeparation& e = columns[j];
    if (e.width() != width) throw InputError("matrix column over a different ground set");
    for (std::size_t i = 0; i < width; ++i) {
      const bool in_small = e.small.test(i);
      const bool in_big = e.big.test(i);
      if (in_big && !in_small)
        q.at(i, j) = 1;
      else if (in_small && !in_big)
        q.at(i, j) = -1;
    }
  }
  return q;
}

inline RationalMatrix build_matrix(const Orientation& tau) {
  std::vector<OrientedSeparation> cols;
  cols.reserve(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) cols.push_back(tau.element(i));
  return build_matrix(tau.width(), cols);
}

struct Induced {
  WeightFunction weights;
  bool vacuous = false;  // empty orientation, induced by convention
};

struct NotInduced {
  std::vector<std::size_t> columns;  // separation indices the witness lives on
  WeightFunction witness;
};

using InduceOutcome = std::variant<Induced, NotInduced>;

/// Decides whether tau is induced by a weight function, via Farkas feasibility
/// of Q^T x >= 1. With use_maximal the column space shrinks to the maximal
/// elements, which suffices because weight margins only shrink upward.
inline InduceOutcome decide_induced(const Orientation& tau, bool use_maximal = true) {
  if (tau.size() == 0) return Induced{WeightFunction(tau.width(), Rational(0)), true};

  std::vector<std::size_t> columns;
  if (use_maximal) {
    columns = maximal_elements(tau);
  } else {
    columns.resize(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) columns[i] = i;
  }
  std::vector<OrientedSeparation> col_elems;
  col_elems.reserve(columns.size());
  for (std::size_t i : columns) col_elems.push_back(tau.element(i));

  const RationalMatrix q = build_matrix(tau.width(), col_elems);
  const std::vector<Rational> ones(columns.size(), Rational(1));
  FeasibilityResult res = solve_feasibility(q, ones);

  if (Feasible* f = std::get_if<Feasible>(&res)) {
    if (!induces(f->x, tau))
      throw InvariantError("feasible point fails to induce the orientation");
    return Induced{std::move(f->x)};
  }
  Infeasible& inf = std::get<Infeasible>(res);
  if (!verify_certificate(q, ones, res))
    throw InvariantError("Farkas witness fails verification");
  return NotInduced{std::move(columns), std::move(inf.y)};
}

/// Scales and clears denominators so that the inducer is integer valued with
/// margin at least K on every element of tau.
inline WeightFunction normalize_inducer(const WeightFunction& w, const Orientation& tau,
                                        const Rational& K) {
  if (K <= 0) throw InputError("margin K must be positive");
  if (!induces(w, tau)) throw InputError("weight function does not induce the orientation");

  Rational margin = 0;
  bool have_margin = false;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const OrientedSeparation e = tau.element(i);
    const Rational m = weight_of(w, e.big) - weight_of(w, e.small);
    if (!have_margin || m < margin) {
      margin = m;
      have_margin = true;
    }
  }
  const Rational scale = have_margin ? K / margin : Rational(1);
  WeightFunction scaled(w.size());
  BigInt common = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    scaled[i] = w[i] * scale;
    common = boost::multiprecision::lcm(common, denominator(scaled[i]));
  }
  for (Rational& v : scaled) v *= Rational(common);
  return scaled;
}

struct DenseInducer {
  enum class Path { whole_set, first_big, pair_intersection, counting, lp_fallback };
  Path path;
  std::optional<Side> inducing_set;  // present on the set-valued paths
  WeightFunction weights;            // always a verified inducer
};

/// Constructive inducer for F^ell tangles of bipartition systems with
/// ell >= |V|/8, following the case chain: the whole set, then the first big
/// side of at most half the points, then a pairwise big intersection; at the
/// threshold itself a counting construction over the balanced elements, with
/// the LP decider as a verified fallback.
inline DenseInducer dense_tangle_inducer(const Orientation& tau, const Rational& ell) {
  const std::size_t n = tau.width();
  detail::require_bipartitions(tau.system());
  if (ell < Rational(n) / 8) throw InputError("ell is below |V|/8; no inducer is guaranteed");
  if (!is_f_ell_tangle(tau, ell))
    throw InputError("orientation is not an F^ell tangle for the given ell");

  const auto finish_set = [&](DenseInducer::Path path, Side set) {
    return DenseInducer{path, set, indicator(set)};
  };

  const Side whole = full_side(n);
  if (induces_set(whole, tau)) return finish_set(DenseInducer::Path::whole_set, whole);

  std::optional<Side> b1;
  for (std::size_t i = 0; i < tau.size() && !b1; ++i) {
    const OrientedSeparation e = tau.element(i);
    if (2 * e.big.count() <= n) b1 = e.big;
  }
  if (!b1) throw InvariantError("no element with a light big side although V fails");
  if (induces_set(*b1, tau)) return finish_set(DenseInducer::Path::first_big, *b1);

  std::optional<Side> b1b2;
  for (std::size_t i = 0; i < tau.size() && !b1b2; ++i) {
    const OrientedSeparation e = tau.element(i);
    if ((*b1 & e.small).count() >= (*b1 & e.big).count()) b1b2 = *b1 & e.big;
  }
  if (!b1b2) throw InvariantError("no second element although the first big side fails");
  if (induces_set(*b1b2, tau)) return finish_set(DenseInducer::Path::pair_intersection, *b1b2);

  if (ell > Rational(n) / 8)
    throw InvariantError("set-valued chain failed above the 1/8 threshold");

  // Threshold case: count big-side memberships among the balanced elements,
  // then add a constant large enough to fix every unbalanced element.
  WeightFunction counting(n, Rational(0));
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const OrientedSeparation e = tau.element(i);
    if (e.small.count() != e.big.count()) continue;
    for (std::size_t v = e.big.find_first(); v != Side::npos; v = e.big.find_next(v))
      counting[v] += 1;
  }
  Rational deficit = 0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const OrientedSeparation e = tau.element(i);
    const Rational d = weight_of(counting, e.small) - weight_of(counting, e.big);
    if (d > deficit) deficit = d;
  }
  const Rational constant = 1 + deficit;
  WeightFunction lifted(n);
  for (std::size_t v = 0; v < n; ++v) lifted[v] = counting[v] + constant;
  if (induces(lifted, tau))
    return DenseInducer{DenseInducer::Path::counting, std::nullopt, std::move(lifted)};

  const InduceOutcome out = decide_induced(tau);
  if (const Induced* ind = std::get_if<Induced>(&out))
    return DenseInducer{DenseInducer::Path::lp_fallback, std::nullopt, ind->weights};
  throw InvariantError("LP fallback reports not-induced inside the guaranteed regime");
}

/// Lexicographically first subset of the ground set whose indicator induces
/// tau, or nullopt. Test oracle; exponential.
inline std::optional<Side> brute_force_set_inducer(const Orientation& tau,
                                                   std::uint64_t budget = 1u << 20) {
  const std::size_t n = tau.width();
  if (n >= 63 || (std::uint64_t{1} << n) > budget)
    throw ResourceError("set-inducer search exceeds budget");

  // Preorder traversal by appending ever-larger indices visits subsets in
  // lexicographic order of their sorted index sequences.
  Side current(n);
  std::optional<Side> found;
  const std::function<bool(std::size_t)> visit = [&](std::size_t next) -> bool {
    if (induces_set(current, tau)) {
      found = current;
      return true;
    }
    for (std::size_t i = next; i < n; ++i) {
      current.set(i);
      if (visit(i + 1)) return true;
      current.reset(i);
    }
    return false;
  };
  visit(0);
  return found;
}

namespace detail {

inline BigInt count_separations_below(std::size_t n, std::size_t k) {
  // Separations with separator of size z < k: choose the separator, then
  // two-color the rest; the degenerate separation appears once z reaches n.
  BigInt total = 0;
  for (std::size_t z = 0; z < k && z <= n; ++z) {
    if (z == n) {
      total += 1;
    } else {
      total += binomial(n, z) * boost::multiprecision::pow(BigInt(2), unsigned(n - z - 1));
    }
  }
  return total;
}

}  // namespace detail

/// Extracts an inducing set for the order-<k restriction of a regular
/// 2k-profile of the full standard-order universe, by shrinking star
/// interiors: while some low-order element keeps at least k interior points on
/// its small side, re-root the star at a least-order such element.
inline Side star_interior_inducer(const Orientation& tau, std::size_t k) {
  const SeparationSystem& sys = tau.system();
  const std::size_t n = tau.width();
  if (k == 0) throw InputError("k must be positive");
  if (sys.order_spec().kind() != OrderSpec::Kind::standard)
    throw InputError("star-interior extraction requires the standard order");
  if (n < 2 * k)
    throw InputError("no regular 2k-profile exists on fewer than 2k points");
  for (const Separation& s : sys.separations())
    if (sys.order_of(s) >= 2 * k) throw InputError("system contains a separation of order >= 2k");
  if (BigInt(sys.size()) != detail::count_separations_below(n, 2 * k))
    throw InputError("system is not the full S_2k of the ground set");
  if (!is_regular(tau).ok || !is_profile(tau).ok)
    throw InputError("orientation is not a regular 2k-profile");

  const Orientation low = restrict_orientation(tau, k);
  std::vector<OrientedSeparation> star;
  Side interior = full_side(n);

  for (std::size_t round = 0; round <= n; ++round) {
    std::optional<std::size_t> pick;
    std::size_t pick_order = 0;
    for (std::size_t i = 0; i < low.size(); ++i) {
      if ((interior & low.element(i).small).count() < k) continue;
      const std::size_t ord = low.system().order_of(low.system().at(i));
      if (!pick || ord < pick_order) {
        pick = i;
        pick_order = ord;
      }
    }
    if (!pick) {
      if (interior.count() < 2 * k)
        throw InvariantError("star interior shrank below 2k");
      if (!induces_set(interior, low))
        throw InvariantError("star interior fails to induce the low-order restriction");
      return interior;
    }

    const OrientedSeparation picked = low.element(*pick);
    std::vector<OrientedSeparation> next{picked};
    for (const OrientedSeparation& cd : star) {
      const OrientedSeparation shifted(picked.big & cd.small, picked.small | cd.big);
      if (!tau.contains(shifted))
        throw InvariantError("re-rooted star member is not in the profile");
      if (std::find(next.begin(), next.end(), shifted) == next.end()) next.push_back(shifted);
    }
    Side next_interior = full_side(n);
    for (const OrientedSeparation& e : next) next_interior &= e.big;
    const bool shrank = next_interior.is_proper_subset_of(interior);
    if (!shrank) throw InvariantError("star interior failed to shrink");
    star = std::move(next);
    interior = std::move(next_interior);
  }
  throw InvariantError("star improvement exceeded |V| rounds");
}

}  // namespace sepsys
