#include <catch_amalgamated.hpp>

#include <random>

#include "sepsys/generators.hpp"
#include "sepsys/orientations.hpp"

using namespace sepsys;

namespace {

Side side(std::size_t width, std::initializer_list<std::size_t> indices) {
  return side_from_indices(width, std::vector<std::size_t>(indices));
}

OrientedSeparation osep(std::size_t width, std::initializer_list<std::size_t> a,
                        std::initializer_list<std::size_t> b) {
  return OrientedSeparation(side(width, a), side(width, b));
}

/// The three singleton bipartitions of a 3-set.
SystemPtr singleton_system() {
  std::vector<Separation> seps{
      Separation(osep(3, {0}, {1, 2})),
      Separation(osep(3, {1}, {0, 2})),
      Separation(osep(3, {2}, {0, 1})),
  };
  return make_system(GroundSet(3), std::move(seps), OrderSpec::standard());
}

Orientation orient_toward(SystemPtr sys, const std::vector<Side>& bigs) {
  std::vector<std::uint8_t> flags(sys->size());
  for (std::size_t i = 0; i < sys->size(); ++i) {
    bool matched = false;
    for (const Side& b : bigs) {
      if (sys->at(i).canonical().big == b) {
        flags[i] = 1;
        matched = true;
        break;
      }
      if (sys->at(i).canonical().small == b) {
        flags[i] = 0;
        matched = true;
        break;
      }
    }
    REQUIRE(matched);
  }
  return Orientation(std::move(sys), std::move(flags));
}

Orientation majority_of_singletons() {
  auto sys = singleton_system();
  return orient_toward(sys, {side(3, {1, 2}), side(3, {0, 2}), side(3, {0, 1})});
}

Orientation principal_of_singletons(std::size_t x) {
  auto sys = singleton_system();
  std::vector<std::uint8_t> flags(sys->size());
  for (std::size_t i = 0; i < sys->size(); ++i)
    flags[i] = sys->at(i).canonical().big.test(x) ? 1 : 0;
  return Orientation(std::move(sys), std::move(flags));
}

SystemPtr random_system(std::mt19937_64& rng, std::size_t n, std::size_t t) {
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
  return make_system(GroundSet(n), std::move(seps), OrderSpec::standard());
}

}  // namespace

TEST_CASE("consistency") {
  SECTION("an inverted nested pair is inconsistent") {
    auto sys = make_system(
        GroundSet(3),
        {Separation(osep(3, {0, 1}, {2})), Separation(osep(3, {0, 2}, {1}))},
        OrderSpec::standard());
    const Orientation tau = orient_toward(sys, {side(3, {2}), side(3, {1})});
    const ConsistencyCheck check = is_consistent(tau);
    REQUIRE_FALSE(check.ok);
    REQUIRE(check.witness.has_value());
    const auto [i, j] = *check.witness;
    CHECK(lt(tau.element(i).inverse(), tau.element(j)));
  }
  SECTION("principal orientations are consistent") {
    CHECK(is_consistent(principal_of_singletons(2)).ok);
  }
  SECTION("the empty system is vacuously consistent") {
    auto sys = make_system(GroundSet(2), {}, OrderSpec::standard());
    CHECK(is_consistent(Orientation::all_forward(sys)).ok);
  }
}

TEST_CASE("profiles") {
  SECTION("the majority orientation of the singleton bipartitions is not a profile") {
    const ProfileCheck check = is_profile(majority_of_singletons());
    CHECK_FALSE(check.ok);
    CHECK(check.consistent);
    REQUIRE(check.witness.has_value());
  }
  SECTION("the principal orientation is a profile") {
    CHECK(is_profile(principal_of_singletons(2)).ok);
  }
  SECTION("single-separation systems are profiles either way") {
    auto sys = make_system(GroundSet(3), {Separation(osep(3, {0}, {1, 2}))},
                           OrderSpec::standard());
    CHECK(is_profile(Orientation(sys, {1})).ok);
    CHECK(is_profile(Orientation(sys, {0})).ok);
  }
}

TEST_CASE("regularity") {
  auto sys = make_system(GroundSet(2), {Separation(osep(2, {}, {0, 1}))}, OrderSpec::standard());
  const Orientation small_dir = orient_toward(sys, {side(2, {0, 1})});
  CHECK(is_regular(small_dir).ok);
  const Orientation cosmall_dir(sys, {static_cast<std::uint8_t>(small_dir.forward(0) ? 0 : 1)});
  const RegularityCheck check = is_regular(cosmall_dir);
  CHECK_FALSE(check.ok);
  REQUIRE(check.witness.has_value());
  CHECK(cosmall_dir.element(*check.witness).is_cosmall());

  auto degenerate =
      make_system(GroundSet(2), {Separation(osep(2, {0, 1}, {0, 1}))}, OrderSpec::standard());
  CHECK_FALSE(is_regular(Orientation::all_forward(degenerate)).ok);
  CHECK(is_regular(principal_of_singletons(1)).ok);
}

TEST_CASE("tangles") {
  SECTION("the majority orientation has a covering triple") {
    const Orientation tau = majority_of_singletons();
    const TangleCheck check = is_tangle(tau);
    REQUIRE_FALSE(check.ok);
    CHECK(check.consistent);
    REQUIRE(check.witness.has_value());
    Side cover(3);
    for (std::size_t idx : *check.witness) cover |= tau.element(idx).small;
    CHECK(cover.all());
  }
  SECTION("principal orientations are tangles") {
    CHECK(is_tangle(principal_of_singletons(2)).ok);
    CHECK(is_tangle(gen_principal(3, 2)).ok);
  }
  SECTION("the sharpness family is a tangle") {
    CHECK(is_tangle(gen_tau_mk(6, 3).maximal_instance()).ok);
    CHECK(is_tangle(materialize_tau_mk(gen_tau_mk(6, 3))).ok);
  }
  SECTION("both cover-search strategies agree on random instances") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 4 + rng() % 4;
      auto sys = random_system(rng, n, 60 + rng() % 30);
      std::vector<std::uint8_t> flags(sys->size());
      for (auto& f : flags) f = rng() & 1u;
      const Orientation tau(sys, std::move(flags));

      const auto smalls = detail::distinct_smalls(tau);
      const auto direct = detail::cover_triple_direct(smalls);
      const auto table = detail::cover_triple_sos(n, smalls);
      CHECK(direct.has_value() == table.has_value());
    }
  }
}

TEST_CASE("F-ell thresholds") {
  SECTION("the (8,4) family meets triples in exactly five points") {
    const Orientation tau = gen_tau_mk(8, 4).maximal_instance();
    const auto least = min_triple_big_intersection(tau);
    REQUIRE(least.has_value());
    CHECK(*least == 5);
    CHECK(is_f_ell_tangle(tau, Rational(4)));
    CHECK(is_f_ell_tangle(tau, Rational(5)));
    CHECK_FALSE(is_f_ell_tangle(tau, Rational(11, 2)));
  }
  SECTION("the principal 3-set tangle has threshold one") {
    const Orientation tau = gen_principal(3, 2);
    const auto least = min_triple_big_intersection(tau);
    REQUIRE(least.has_value());
    CHECK(*least == 1);
  }
  SECTION("non-bipartition systems are rejected") {
    auto sys = make_system(GroundSet(3), {Separation(osep(3, {0, 1}, {1, 2}))},
                           OrderSpec::standard());
    CHECK_THROWS_AS(min_triple_big_intersection(Orientation::all_forward(sys)), InputError);
  }
  SECTION("maximal-element reduction agrees with all-element triples on a full family") {
    const Orientation tau = materialize_tau_mk(gen_tau_mk(5, 3));
    std::vector<Side> bigs;
    for (std::size_t i = 0; i < tau.size(); ++i) bigs.push_back(tau.element(i).big);
    std::size_t best = tau.width();
    for (std::size_t i = 0; i < bigs.size(); ++i)
      for (std::size_t j = i; j < bigs.size(); ++j)
        for (std::size_t k = j; k < bigs.size(); ++k)
          best = std::min(best, (bigs[i] & bigs[j] & bigs[k]).count());
    CHECK(min_triple_big_intersection(tau).value() == best);
  }
}

TEST_CASE("maximal elements") {
  SECTION("principal orientation has a single maximal element") {
    const Orientation tau = gen_principal(3, 2);
    const auto mu = maximal_elements(tau);
    REQUIRE(mu.size() == 1);
    CHECK(tau.element(mu[0]) == osep(3, {0, 1}, {2}));
  }
  SECTION("the (6,3) family has exactly its six family elements maximal") {
    const Orientation tau = materialize_tau_mk(gen_tau_mk(6, 3));
    const auto mu = maximal_elements(tau);
    REQUIRE(mu.size() == 6);
    const TauMK family = gen_tau_mk(6, 3);
    for (std::size_t idx : mu) {
      const OrientedSeparation e = tau.element(idx);
      CHECK(std::find(family.families().begin(), family.families().end(), e.big) !=
            family.families().end());
    }
  }
  SECTION("the majority family has the six singleton-small bipartitions maximal") {
    const Orientation tau = gen_thirds(6);
    const auto mu = maximal_elements(tau);
    REQUIRE(mu.size() == 6);
    for (std::size_t idx : mu) CHECK(tau.element(idx).small.count() == 1);
  }
  SECTION("every element lies below some maximal element") {
    const Orientation tau = gen_thirds(7);
    const auto mu = maximal_elements(tau);
    for (std::size_t i = 0; i < tau.size(); ++i) {
      bool below = false;
      for (std::size_t idx : mu)
        if (leq(tau.element(i), tau.element(idx))) below = true;
      CHECK(below);
    }
  }
}

TEST_CASE("restriction and extension") {
  const Orientation tau = materialize_tau_mk(gen_tau_mk(5, 3));
  const Orientation low = restrict_orientation(tau, 3);
  CHECK(low.size() < tau.size());
  CHECK(extends(low, tau));

  SECTION("tangle property is antitone under restriction") {
    REQUIRE(is_tangle(tau).ok);
    CHECK(is_tangle(low).ok);
  }
  SECTION("restricting at the order bound is the identity") {
    const Orientation same = restrict_orientation(tau, 5);
    CHECK(same == tau);
  }
}

TEST_CASE("orientation enumeration") {
  SECTION("two separations give four orientations") {
    auto sys = make_system(
        GroundSet(3),
        {Separation(osep(3, {0}, {1, 2})), Separation(osep(3, {1}, {0, 2}))},
        OrderSpec::standard());
    CHECK(enumerate_orientations(sys, nullptr).size() == 4);
  }
  SECTION("exactly the three principal tangles of the singleton bipartitions") {
    const auto tangles = enumerate_orientations(
        singleton_system(), [](const Orientation& t) { return is_tangle(t).ok; });
    REQUIRE(tangles.size() == 3);
    for (const Orientation& t : tangles) {
      bool principal = false;
      for (std::size_t x = 0; x < 3; ++x)
        if (t == principal_of_singletons(x)) principal = true;
      CHECK(principal);
    }
  }
  SECTION("regularity forces the small orientation of a trivial separation") {
    auto sys = make_system(GroundSet(2), {Separation(osep(2, {}, {0, 1}))},
                           OrderSpec::standard());
    const auto regulars = enumerate_orientations(
        sys, [](const Orientation& t) { return is_regular(t).ok; });
    REQUIRE(regulars.size() == 1);
    CHECK(regulars[0].element(0) == osep(2, {}, {0, 1}));
  }
  SECTION("the budget is enforced") {
    const SystemPtr big = full_bipartition_universe(6);
    CHECK_THROWS_AS(enumerate_orientations(big, nullptr, 1024), ResourceError);
  }
}

TEST_CASE("pruned regular-profile search matches brute force") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + rng() % 3;
    auto sys = random_system(rng, n, 3 + rng() % 8);
    const auto brute = enumerate_orientations(sys, [](const Orientation& t) {
      return is_regular(t).ok && is_profile(t).ok;
    });
    const auto pruned = find_regular_profiles(sys);
    REQUIRE(pruned.size() == brute.size());
    for (const Orientation& p : pruned)
      CHECK(std::find(brute.begin(), brute.end(), p) != brute.end());
  }
}

TEST_CASE("regular profiles of full bipartition universes are principal") {
  for (std::size_t n = 3; n <= 5; ++n) {
    const SystemPtr universe = full_bipartition_universe(n);
    const auto profiles = find_regular_profiles(universe);
    REQUIRE(profiles.size() == n);
    for (const Orientation& p : profiles) {
      Side common = full_side(n);
      for (std::size_t i = 0; i < p.size(); ++i) common &= p.element(i).big;
      CHECK(common.count() == 1);
    }
  }
}

TEST_CASE("tangles are regular profiles on every enumerated small system") {
  std::mt19937_64 rng(13131);
  std::vector<SystemPtr> corpus;
  corpus.push_back(singleton_system());
  corpus.push_back(full_bipartition_universe(3));
  corpus.push_back(full_bipartition_universe(4));
  corpus.push_back(full_Sk_universe(3, 2));
  for (int trial = 0; trial < 6; ++trial)
    corpus.push_back(random_system(rng, 3 + rng() % 3, 6 + rng() % 7));

  for (const SystemPtr& sys : corpus) {
    REQUIRE(sys->size() <= 16);
    for (const Orientation& tau : enumerate_orientations(sys, nullptr)) {
      if (is_tangle(tau).ok) {
        CHECK(is_consistent(tau).ok);
        CHECK(is_profile(tau).ok);
        CHECK(is_regular(tau).ok);
      }
    }
  }
}
