#pragma once

#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "duality.hpp"
#include "generators.hpp"
#include "inducers.hpp"
#include "orientations.hpp"
#include "resilience.hpp"

namespace sepsys {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace reproduce_detail {

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& label) {
    if (!condition) {
      ok = false;
      detail << (detail.tellp() > 0 ? "; " : "") << "FAILED: " << label;
    }
  }
  void note(const std::string& text) {
    detail << (detail.tellp() > 0 ? "; " : "") << text;
  }
};

inline Orientation random_orientation(std::mt19937_64& rng, std::size_t n, std::size_t t) {
  std::vector<Separation> seps;
  for (std::size_t i = 0; i < t; ++i) {
    Side a(n), b(n);
    for (std::size_t v = 0; v < n; ++v) {
      switch (rng() % 3) {
        case 0: a.set(v); break;
        case 1: b.set(v); break;
        default: a.set(v); b.set(v); break;
      }
    }
    seps.emplace_back(OrientedSeparation(std::move(a), std::move(b)));
  }
  auto sys = make_system(GroundSet(n), std::move(seps), OrderSpec::standard());
  std::vector<std::uint8_t> flags(sys->size());
  for (auto& f : flags) f = rng() & 1u;
  return Orientation(std::move(sys), std::move(flags));
}

inline bool farkas_witness_verifies(const Orientation& tau, const NotInduced& cert) {
  std::vector<OrientedSeparation> cols;
  for (std::size_t idx : cert.columns) cols.push_back(tau.element(idx));
  const RationalMatrix q = build_matrix(tau.width(), cols);
  return verify_certificate(q, std::vector<Rational>(cols.size(), Rational(1)),
                            Infeasible{cert.witness});
}

}  // namespace reproduce_detail

/// Criterion 1: the (6,3) family is a 3-resilient tangle on twenty points with
/// six maximal elements and a verifiable non-inducibility certificate; the
/// uniform witness itself verifies.
inline CriterionResult criterion_1() {
  using namespace reproduce_detail;
  Checker c;
  const Orientation tau = materialize_tau_mk(gen_tau_mk(6, 3));
  c.expect(tau.width() == 20, "|V| = 20");
  c.expect(is_tangle(tau).ok, "is_tangle");
  const auto mu = maximal_elements(tau);
  c.expect(mu.size() == 6, "exactly 6 maximal elements");
  c.expect(resilience(tau) == ResilienceValue::finite(3), "resilience Finite(3)");

  const InduceOutcome out = decide_induced(tau);
  const NotInduced* witness = std::get_if<NotInduced>(&out);
  c.expect(witness != nullptr, "decide_induced NotInduced");
  if (witness) c.expect(farkas_witness_verifies(tau, *witness), "returned witness verifies");

  std::vector<OrientedSeparation> cols;
  for (std::size_t idx : mu) cols.push_back(tau.element(idx));
  const RationalMatrix q = build_matrix(tau.width(), cols);
  const std::vector<Rational> ones(cols.size(), Rational(1));
  c.expect(verify_certificate(q, ones, Infeasible{WeightFunction(cols.size(), Rational(1))}),
           "all-ones witness verifies");
  c.note("|S_6| = " + std::to_string(tau.size()));
  return {1, "tau(6,3) certificates", c.ok, c.detail.str()};
}

/// Criterion 2: the (5,3) family is decided induced by the LP route and,
/// independently, by combining local witnesses at k = 3, ell = 1.
inline CriterionResult criterion_2() {
  using namespace reproduce_detail;
  Checker c;
  const Orientation tau = materialize_tau_mk(gen_tau_mk(5, 3));
  c.expect(resilience(tau) == ResilienceValue::finite(3), "resilience Finite(3)");
  c.expect(Rational(3) > Rational(5, 2), "3 > 5/2");

  const InduceOutcome out = decide_induced(tau);
  const Induced* lp = std::get_if<Induced>(&out);
  c.expect(lp != nullptr, "decide_induced Induced");
  if (lp) c.expect(induces(lp->weights, tau), "LP inducer verifies");

  const LocalInducedResult local = is_locally_induced(tau, 3, Rational(1));
  const LocalWitnessSet* ws = std::get_if<LocalWitnessSet>(&local);
  c.expect(ws != nullptr, "3-locally 1-induced");
  if (ws) {
    const WeightFunction combined = combined_weight(tau, *ws);
    c.expect(induces(combined, tau), "combined local witnesses induce");
  }
  return {2, "tau(5,3) double decision", c.ok, c.detail.str()};
}

/// Criterion 3: the introduction tangle on six separations satisfies the
/// three-memberships property, is not 4-resilient, and is not induced.
inline CriterionResult criterion_3() {
  using namespace reproduce_detail;
  Checker c;
  const Orientation tau = gen_intro(6);
  c.expect(tau.width() == 20, "|V| = 20");
  bool star_property = true;
  for (std::size_t v = 0; v < tau.width(); ++v) {
    std::size_t memberships = 0;
    for (std::size_t j = 0; j < tau.size(); ++j)
      if (tau.element(j).big.test(v)) ++memberships;
    if (memberships != 3) star_property = false;
  }
  c.expect(star_property, "every point on exactly 3 big sides");
  c.expect(!is_k_resilient(tau, 4), "not 4-resilient");

  const InduceOutcome out = decide_induced(tau);
  const NotInduced* witness = std::get_if<NotInduced>(&out);
  c.expect(witness != nullptr, "decide_induced NotInduced");
  if (witness) c.expect(farkas_witness_verifies(tau, *witness), "witness verifies");
  return {3, "introduction tangle", c.ok, c.detail.str()};
}

/// Criterion 4: the majority family on six points: resilience Finite(3), six
/// maximal elements, induced by the uniform weights.
inline CriterionResult criterion_4() {
  using namespace reproduce_detail;
  Checker c;
  const Orientation tau = gen_thirds(6);
  const ResilienceValue r = resilience(tau);
  std::ostringstream rs;
  rs << "computed resilience = "
     << (r.kind == ResilienceValue::Kind::finite ? "Finite(" + std::to_string(r.value) + ")"
                                                 : "other");
  c.note(rs.str());
  c.expect(r == ResilienceValue::finite(3), "resilience Finite(3)");
  c.expect(maximal_elements(tau).size() == 6, "6 maximal elements");

  const InduceOutcome out = decide_induced(tau);
  c.expect(std::holds_alternative<Induced>(out), "decide_induced Induced");
  c.expect(induces(WeightFunction(6, Rational(1)), tau), "uniform weights induce");
  return {4, "majority family on six points", c.ok, c.detail.str()};
}

/// Criterion 5: the five-by-five grid family: tie-free by construction, a
/// tangle, small sides of at most ten cells, resilience at least three.
inline CriterionResult criterion_5() {
  using namespace reproduce_detail;
  Checker c;
  try {
    const Orientation tau = gen_grid(5);  // throws on a tie
    c.note("|S_5| = " + std::to_string(tau.size()));
    c.expect(is_tangle(tau).ok, "is_tangle");
    bool light = true;
    for (std::size_t i = 0; i < tau.size(); ++i)
      if (tau.element(i).small.count() > 10) light = false;
    c.expect(light, "max small side <= 10");
    const ResilienceValue r = resilience(tau, 5);
    const bool at_least_3 = (r.kind == ResilienceValue::Kind::finite && r.value >= 3) ||
                            (r.kind == ResilienceValue::Kind::at_least && r.value >= 3) ||
                            r.kind == ResilienceValue::Kind::infinite;
    if (r.kind == ResilienceValue::Kind::finite)
      c.note("resilience = Finite(" + std::to_string(r.value) + ")");
    c.expect(at_least_3, "resilience >= 3 under cap 5");
  } catch (const InvariantError& e) {
    c.expect(false, std::string("tie-free construction: ") + e.what());
  }
  return {5, "grid family", c.ok, c.detail.str()};
}

/// Criterion 6: the (8,4) family sits below the 1/8 threshold with
/// intersection floor five, and fifty randomized dense bipartition systems all
/// yield verified inducers, with set-valued answers above the threshold.
inline CriterionResult criterion_6() {
  using namespace reproduce_detail;
  Checker c;
  const Orientation tau = gen_tau_mk(8, 4).maximal_instance();
  const auto least = min_triple_big_intersection(tau);
  c.expect(least.has_value() && *least == 5, "intersection floor = 5 = C(5,1)");
  c.expect(is_f_ell_tangle(tau, Rational(4)), "F^4 tangle");
  const InduceOutcome out = decide_induced(tau);
  const NotInduced* witness = std::get_if<NotInduced>(&out);
  c.expect(witness != nullptr, "decide_induced NotInduced");
  if (witness) c.expect(farkas_witness_verifies(tau, *witness), "witness verifies");
  c.expect(Rational(4) < Rational(70, 8), "4 < 70/8, consistent with the threshold");

  std::mt19937_64 rng(0x5ee5ee);
  std::size_t produced = 0, set_valued_due = 0, set_valued_got = 0;
  for (int trial = 0; produced < 50; ++trial) {
    if (trial > 400) break;
    const std::size_t n = 8 + (rng() % 9);  // 8..16
    const std::size_t core_size = (n + 7) / 8;
    Side core(n);
    while (core.count() < core_size) core.set(rng() % n);

    std::vector<Separation> seps;
    const std::size_t want = 4 + rng() % 5;
    while (seps.size() < want) {
      Side big = core;
      while (2 * big.count() <= n) big.set(rng() % n);
      seps.emplace_back(OrientedSeparation(~big, big));
    }
    auto sys = make_system(GroundSet(n), std::move(seps), OrderSpec::standard());
    const WeightOrienting wo = orient_by_weight(WeightFunction(n, Rational(1)), *sys);
    if (!wo.total()) continue;
    const Orientation majority = orientation_from(wo, sys);

    const auto floor = min_triple_big_intersection(majority);
    if (!floor) continue;
    const Rational ell(*floor);
    if (ell < Rational(n) / 8) continue;
    if (!is_f_ell_tangle(majority, ell)) continue;

    ++produced;
    const DenseInducer result = dense_tangle_inducer(majority, ell);
    if (!induces(result.weights, majority)) {
      c.expect(false, "dense inducer verifies on instance " + std::to_string(produced));
      break;
    }
    if (ell > Rational(n) / 8) {
      ++set_valued_due;
      if (result.inducing_set.has_value()) ++set_valued_got;
    }
  }
  c.expect(produced == 50, "50 dense instances produced");
  c.expect(set_valued_due == set_valued_got, "set-valued whenever ell > |V|/8");
  c.note("instances = " + std::to_string(produced) +
         ", set-valued = " + std::to_string(set_valued_got) + "/" +
         std::to_string(set_valued_due));
  return {6, "1/8 threshold family", c.ok, c.detail.str()};
}

/// Criterion 7: on two hundred random instances the decision matches the
/// brute-force set oracle, certificates verify, and both column spaces agree.
inline CriterionResult criterion_7() {
  using namespace reproduce_detail;
  Checker c;
  std::mt19937_64 rng(0xfa47a5);
  std::size_t set_found = 0, not_induced = 0;
  for (int trial = 0; trial < 200 && c.ok; ++trial) {
    const Orientation tau = random_orientation(rng, 2 + rng() % 5, 1 + rng() % 8);
    const InduceOutcome via_maximal = decide_induced(tau, true);
    const InduceOutcome via_all = decide_induced(tau, false);
    c.expect(via_maximal.index() == via_all.index(), "maximal/full tags agree");

    if (const Induced* ind = std::get_if<Induced>(&via_maximal)) {
      c.expect(induces(ind->weights, tau) || ind->vacuous, "inducer verifies");
    } else {
      ++not_induced;
      c.expect(farkas_witness_verifies(tau, std::get<NotInduced>(via_maximal)),
               "farkas witness verifies");
      c.expect(farkas_witness_verifies(tau, std::get<NotInduced>(via_all)),
               "full-column farkas witness verifies");
    }
    const auto set = brute_force_set_inducer(tau);
    if (set.has_value()) {
      ++set_found;
      c.expect(std::holds_alternative<Induced>(via_maximal), "set inducer implies Induced");
    }
  }
  c.note("sets found = " + std::to_string(set_found) +
         ", not induced = " + std::to_string(not_induced));
  c.expect(set_found > 20 && not_induced > 20, "both outcomes well represented");
  return {7, "random-instance oracle agreement", c.ok, c.detail.str()};
}

/// Criterion 8: double dualization returns the primal on the named and random
/// injective instances, and Farkas witnesses induce nothing through the dual.
inline CriterionResult criterion_8() {
  using namespace reproduce_detail;
  Checker c;
  c.expect(double_dual(gen_principal(3, 2)), "double dual of the principal example");
  c.expect(double_dual(gen_tau_mk(6, 3).maximal_instance()), "double dual of the (6,3) family");

  std::mt19937_64 rng(0xd0a1);
  std::size_t verified = 0;
  for (int trial = 0; trial < 4000 && verified < 20; ++trial) {
    const Orientation sigma = random_orientation(rng, 2 + rng() % 5, 1 + rng() % 6);
    if (sigma.size() == 0) continue;
    if (!dualize(sigma).injective) continue;
    if (!double_dual(sigma)) {
      c.expect(false, "double dual on a random injective instance");
      break;
    }
    ++verified;
  }
  c.expect(verified == 20, "20 random injective double duals");

  std::size_t pushed = 0;
  for (int trial = 0; trial < 4000 && pushed < 12; ++trial) {
    const Orientation sigma = random_orientation(rng, 2 + rng() % 4, 1 + rng() % 6);
    if (sigma.size() == 0) continue;
    const InduceOutcome out = decide_induced(sigma, false);
    const NotInduced* witness = std::get_if<NotInduced>(&out);
    if (!witness) continue;
    ++pushed;
    for (std::size_t v = 0; v < sigma.width(); ++v) {
      const OrientedSeparation image = phi(v, sigma);
      if (weight_of(witness->witness, image.small) < weight_of(witness->witness, image.big)) {
        c.expect(false, "witness induces a dual separation");
        break;
      }
    }
  }
  c.expect(pushed == 12, "12 witnesses pushed through the dual");
  return {8, "duality round trips", c.ok, c.detail.str()};
}

/// Criterion 9: star-interior extraction over regular 2k-profiles of the full
/// low-order universes: exhaustively for k = 1 on four and five points, and on
/// twenty generated regular 4-profiles for k = 2 on five to eight points.
inline CriterionResult criterion_9() {
  using namespace reproduce_detail;
  Checker c;

  std::size_t found_k1 = 0;
  for (std::size_t n = 4; n <= 5; ++n) {
    const SystemPtr universe = full_Sk_universe(n, 2);
    const auto profiles = find_regular_profiles(universe);
    found_k1 += profiles.size();
    for (const Orientation& tau : profiles) {
      const Side x = star_interior_inducer(tau, 1);
      c.expect(x.count() >= 2, "interior has at least 2 points");
      c.expect(induces_set(x, restrict_orientation(tau, 1)), "interior induces the restriction");
      // Independently: pairs and triples of elements that form stars have
      // interiors of at least two points.
      for (std::size_t i = 0; i < tau.size(); ++i) {
        for (std::size_t j = i + 1; j < tau.size(); ++j) {
          const StarCheck star = star_interior(tau.width(), {tau.element(i), tau.element(j)});
          if (star.is_star) c.expect(star.interior.count() >= 2, "pair star interior >= 2");
        }
      }
    }
  }
  c.note("exhaustive regular 2-profiles on 4..5 points: " + std::to_string(found_k1) +
         (found_k1 == 0 ? " (vacuous)" : ""));

  std::mt19937_64 rng(0x57a7);
  std::size_t found_k2 = 0, attempts = 0;
  for (std::size_t n = 5; n <= 8; ++n) {
    const SystemPtr universe = full_Sk_universe(n, 4);
    for (int trial = 0; trial < 40; ++trial) {
      ++attempts;
      WeightFunction w(n);
      for (Rational& v : w) v = Rational(1 + int(rng() % 4096), 1 + int(rng() % 7));
      const WeightOrienting wo = orient_by_weight(w, *universe);
      if (!wo.total()) continue;
      const Orientation tau = orientation_from(wo, universe);
      if (!is_regular(tau).ok || !is_profile(tau).ok) continue;
      ++found_k2;
      const Side x = star_interior_inducer(tau, 2);
      c.expect(x.count() >= 4, "interior has at least 4 points");
      c.expect(induces_set(x, restrict_orientation(tau, 2)), "interior induces the restriction");
      if (found_k2 >= 20) break;
    }
  }
  c.note("generated regular 4-profiles on 5..8 points: " + std::to_string(found_k2) + " in " +
         std::to_string(attempts) + " attempts");
  c.expect(found_k2 >= 20, "at least 20 generated regular 4-profiles");
  return {9, "star-interior extraction", c.ok, c.detail.str()};
}

/// Criterion 10: on every enumerated orientation of the small-system corpus,
/// tangles are consistent regular profiles; the majority orientation of the
/// singleton bipartitions is the consistent-but-not-profile witness.
inline CriterionResult criterion_10() {
  using namespace reproduce_detail;
  Checker c;

  std::vector<Separation> singles{
      Separation(OrientedSeparation(side_from_indices(3, {0}), side_from_indices(3, {1, 2}))),
      Separation(OrientedSeparation(side_from_indices(3, {1}), side_from_indices(3, {0, 2}))),
      Separation(OrientedSeparation(side_from_indices(3, {2}), side_from_indices(3, {0, 1}))),
  };
  const SystemPtr singleton_sys = make_system(GroundSet(3), singles, OrderSpec::standard());

  std::vector<SystemPtr> corpus{singleton_sys, full_bipartition_universe(3),
                                full_bipartition_universe(4), full_Sk_universe(3, 2),
                                gen_principal(4, 0).system_ptr()};
  std::mt19937_64 rng(0xc0de);
  for (int trial = 0; trial < 8; ++trial)
    corpus.push_back(random_orientation(rng, 3 + rng() % 3, 5 + rng() % 8).system_ptr());

  std::size_t orientations_checked = 0, tangles_seen = 0;
  for (const SystemPtr& sys : corpus) {
    if (sys->size() > 12) {
      c.expect(false, "corpus system too large");
      continue;
    }
    for (const Orientation& tau : enumerate_orientations(sys, nullptr)) {
      ++orientations_checked;
      if (!is_tangle(tau).ok) continue;
      ++tangles_seen;
      if (!is_consistent(tau).ok || !is_profile(tau).ok || !is_regular(tau).ok) {
        c.expect(false, "tangle failing the profile hierarchy");
        break;
      }
    }
  }
  c.expect(tangles_seen > 0, "corpus contains tangles");
  c.note(std::to_string(orientations_checked) + " orientations, " +
         std::to_string(tangles_seen) + " tangles");

  std::vector<std::uint8_t> majority_flags(singleton_sys->size());
  for (std::size_t i = 0; i < singleton_sys->size(); ++i)
    majority_flags[i] = singleton_sys->at(i).canonical().small.count() == 1 ? 1 : 0;
  const Orientation majority(singleton_sys, std::move(majority_flags));
  c.expect(is_consistent(majority).ok && !is_profile(majority).ok,
           "majority orientation is consistent but not a profile");
  return {10, "axiom hierarchy", c.ok, c.detail.str()};
}

inline std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  std::vector<CriterionResult> results;
  results.push_back(criterion_1());
  results.push_back(criterion_2());
  results.push_back(criterion_3());
  results.push_back(criterion_4());
  results.push_back(criterion_5());
  results.push_back(criterion_6());
  results.push_back(criterion_7());
  results.push_back(criterion_8());
  results.push_back(criterion_9());
  results.push_back(criterion_10());
  for (const CriterionResult& r : results) {
    out << "criterion " << r.id << " [" << r.name << "]: " << (r.pass ? "PASS" : "FAIL");
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
  }
  std::size_t passed = 0;
  for (const CriterionResult& r : results)
    if (r.pass) ++passed;
  out << passed << "/" << results.size() << " criteria passed\n";
  return results;
}

inline bool run_acceptance_suite(std::ostream& out) {
  const auto results = run_acceptance(out);
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace sepsys
