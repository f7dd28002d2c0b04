#include <catch_amalgamated.hpp>

#include <random>

#include "sepsys/duality.hpp"
#include "sepsys/generators.hpp"
#include "sepsys/inducers.hpp"

using namespace sepsys;

namespace {

Side side(std::size_t width, std::initializer_list<std::size_t> indices) {
  return side_from_indices(width, std::vector<std::size_t>(indices));
}

OrientedSeparation osep(std::size_t width, std::initializer_list<std::size_t> a,
                        std::initializer_list<std::size_t> b) {
  return OrientedSeparation(side(width, a), side(width, b));
}

SystemPtr singleton_system() {
  std::vector<Separation> seps{
      Separation(osep(3, {0}, {1, 2})),
      Separation(osep(3, {1}, {0, 2})),
      Separation(osep(3, {2}, {0, 1})),
  };
  return make_system(GroundSet(3), std::move(seps), OrderSpec::standard());
}

Orientation principal_of_singletons(std::size_t x) {
  auto sys = singleton_system();
  std::vector<std::uint8_t> flags(sys->size());
  for (std::size_t i = 0; i < sys->size(); ++i)
    flags[i] = sys->at(i).canonical().big.test(x) ? 1 : 0;
  return Orientation(std::move(sys), std::move(flags));
}

Orientation random_orientation(std::mt19937_64& rng, std::size_t n, std::size_t t) {
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

}  // namespace

TEST_CASE("the image of an element sorts separations by where it sits") {
  const Orientation sigma = principal_of_singletons(2);
  // Canonical order of the system: {0}|{1,2} then {0,1}|{2} then {1}|{0,2}.
  REQUIRE(sigma.system().at(0).canonical().small == side(3, {0}));
  REQUIRE(sigma.system().at(1).canonical().small == side(3, {0, 1}));
  REQUIRE(sigma.system().at(2).canonical().small == side(3, {0, 2}));

  CHECK(phi(0, sigma) == osep(3, {0, 1}, {2}));       // s1 and s3 keep 0 small
  CHECK(phi(1, sigma) == osep(3, {1, 2}, {0}));       // s2 and s3 keep 1 small
  CHECK(phi(2, sigma) == osep(3, {}, {0, 1, 2}));     // 2 sits on every big side
  CHECK_THROWS_AS(phi(5, sigma), InputError);
}

TEST_CASE("images cover the separation index set and split it along separators") {
  std::mt19937_64 rng(4711);
  for (int trial = 0; trial < 50; ++trial) {
    const Orientation sigma = random_orientation(rng, 2 + rng() % 4, 1 + rng() % 6);
    if (sigma.size() == 0) continue;
    for (std::size_t v = 0; v < sigma.width(); ++v) {
      const OrientedSeparation image = phi(v, sigma);
      CHECK((image.small | image.big).all());
      for (std::size_t j = 0; j < sigma.size(); ++j) {
        const bool in_both = image.small.test(j) && image.big.test(j);
        CHECK(in_both == sigma.element(j).separator().test(v));
      }
    }
  }
}

TEST_CASE("dualizing the principal example") {
  const DualSystem dual = dualize(principal_of_singletons(2));
  CHECK(dual.injective);
  CHECK(dual.base->size() == 3);
  REQUIRE(dual.default_orientation.has_value());
  CHECK(dual.collision_classes.size() == 3);
  for (std::size_t v = 0; v < 3; ++v)
    CHECK(dual.default_orientation->contains(dual.tau_sigma[v]));
}

TEST_CASE("elements carrying the same information collapse") {
  // Two elements on the same side of every separation: {1,2} never separate.
  auto sys = make_system(GroundSet(4),
                         {Separation(osep(4, {0}, {1, 2, 3})), Separation(osep(4, {3}, {0, 1, 2}))},
                         OrderSpec::standard());
  const Orientation sigma = Orientation::all_forward(sys);
  const DualSystem dual = dualize(sigma);
  CHECK_FALSE(dual.injective);
  CHECK_FALSE(dual.default_orientation.has_value());
  bool found_pair = false;
  for (const auto& cls : dual.collision_classes) {
    if (cls == std::vector<std::size_t>{1, 2}) found_pair = true;
  }
  CHECK(found_pair);
  CHECK_THROWS_AS(double_dual(sigma), InputError);
}

TEST_CASE("the family of maximal elements dualizes injectively") {
  // Complementary point pairs have inverse images, so the twenty oriented
  // images share ten underlying separations; injectivity is about the
  // oriented images, and no single per-separation orientation exists.
  const Orientation sigma = gen_tau_mk(6, 3).maximal_instance();
  const DualSystem dual = dualize(sigma);
  CHECK(dual.injective);
  CHECK(dual.collision_classes.size() == 20);
  CHECK(dual.base->size() == 10);
  CHECK_FALSE(dual.default_orientation.has_value());
}

TEST_CASE("dualizing the dual yields the primal") {
  CHECK(double_dual(principal_of_singletons(2)));
  CHECK(double_dual(gen_tau_mk(6, 3).maximal_instance()));

  std::mt19937_64 rng(31337);
  int verified = 0;
  while (verified < 20) {
    const Orientation sigma = random_orientation(rng, 2 + rng() % 5, 1 + rng() % 6);
    if (sigma.size() == 0) continue;
    if (!dualize(sigma).injective) continue;
    CHECK(double_dual(sigma));
    ++verified;
  }
}

TEST_CASE("Farkas witnesses induce nothing in the dual") {
  // A not-induced sigma yields a witness w' whose dual evaluation keeps every
  // default-oriented separation weakly reversed.
  std::mt19937_64 rng(112358);
  int covered = 0;
  std::vector<Orientation> instances{gen_tau_mk(6, 3).maximal_instance(), gen_intro(6)};
  while (covered < 10) {
    const Orientation sigma = random_orientation(rng, 2 + rng() % 4, 1 + rng() % 6);
    if (sigma.size() == 0) continue;
    if (!std::holds_alternative<NotInduced>(decide_induced(sigma, false))) continue;
    instances.push_back(sigma);
    ++covered;
  }
  for (const Orientation& sigma : instances) {
    const InduceOutcome out = decide_induced(sigma, false);
    REQUIRE(std::holds_alternative<NotInduced>(out));
    const WeightFunction& w = std::get<NotInduced>(out).witness;
    REQUIRE(w.size() == sigma.size());
    for (std::size_t v = 0; v < sigma.width(); ++v) {
      const OrientedSeparation image = phi(v, sigma);
      CHECK_FALSE(weight_of(w, image.small) < weight_of(w, image.big));
    }
  }
}

TEST_CASE("collision classes partition the ground set") {
  std::mt19937_64 rng(8128);
  for (int trial = 0; trial < 30; ++trial) {
    const Orientation sigma = random_orientation(rng, 2 + rng() % 5, 1 + rng() % 5);
    if (sigma.size() == 0) continue;
    const DualSystem dual = dualize(sigma);
    std::vector<bool> seen(sigma.width(), false);
    for (const auto& cls : dual.collision_classes) {
      CHECK_FALSE(cls.empty());
      for (std::size_t v : cls) {
        CHECK_FALSE(seen.at(v));
        seen[v] = true;
      }
      for (std::size_t v : cls) CHECK(dual.image_of[v] == dual.image_of[cls.front()]);
    }
    for (bool b : seen) CHECK(b);
  }
}
