#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "sepsys/generators.hpp"
#include "sepsys/inducers.hpp"
#include "sepsys/resilience.hpp"

using namespace sepsys;

namespace {

/// Union-find component counter over the grid minus a removed set; kept apart
/// from the generator's breadth-first search on purpose.
std::size_t uf_components(std::size_t n, const Side& removed) {
  const std::size_t cells = n * n;
  std::vector<std::size_t> parent(cells);
  std::iota(parent.begin(), parent.end(), 0);
  const std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cell = r * n + c;
      if (removed.test(cell)) continue;
      if (c + 1 < n && !removed.test(cell + 1)) unite(cell, cell + 1);
      if (r + 1 < n && !removed.test(cell + n)) unite(cell, cell + n);
    }
  }
  std::size_t count = 0;
  for (std::size_t cell = 0; cell < cells; ++cell)
    if (!removed.test(cell) && find(cell) == cell) ++count;
  return count;
}

bool grid_edge_crosses(std::size_t n, const Side& a_only, const Side& b_only) {
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cell = r * n + c;
      for (const std::size_t next : {c + 1 < n ? cell + 1 : cell, r + 1 < n ? cell + n : cell}) {
        if (next == cell) continue;
        if ((a_only.test(cell) && b_only.test(next)) || (b_only.test(cell) && a_only.test(next)))
          return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("principal generator") {
  const Orientation tau = gen_principal(3, 2);
  CHECK(tau.size() == 4);  // half of the 2^3 oriented bipartitions
  CHECK(is_tangle(tau).ok);
  for (std::size_t i = 0; i < tau.size(); ++i) CHECK(tau.element(i).big.test(2));
  CHECK_THROWS_AS(gen_principal(3, 3), InputError);
  CHECK_THROWS_AS(gen_principal(1, 0), InputError);
}

TEST_CASE("introduction construction") {
  const Orientation tau = gen_intro(6);
  REQUIRE(tau.width() == 20);
  REQUIRE(tau.size() == 6);
  for (std::size_t j = 0; j < tau.size(); ++j) CHECK(tau.element(j).big.count() == 10);

  // Every point sits on the big side of exactly three elements.
  for (std::size_t v = 0; v < tau.width(); ++v) {
    std::size_t memberships = 0;
    for (std::size_t j = 0; j < tau.size(); ++j)
      if (tau.element(j).big.test(v)) ++memberships;
    CHECK(memberships == 3);
  }
  CHECK(is_tangle(tau).ok);
  CHECK(std::holds_alternative<NotInduced>(decide_induced(tau)));
  CHECK_THROWS_AS(gen_intro(2), InputError);
}

TEST_CASE("majority family") {
  const Orientation tau6 = gen_thirds(6);
  CHECK(tau6.size() == 7);
  CHECK(is_tangle(tau6).ok);
  const InduceOutcome out = decide_induced(tau6);
  REQUIRE(std::holds_alternative<Induced>(out));
  CHECK(induces(WeightFunction(6, Rational(1)), tau6));

  const Orientation tau7 = gen_thirds(7);
  CHECK(tau7.size() == 29);  // trivial + singletons + pairs
  CHECK_THROWS_AS(gen_thirds(3), InputError);
}

TEST_CASE("sharpness family queries and materialization") {
  SECTION("ground sizes and maximal systems") {
    const TauMK family = gen_tau_mk(6, 3);
    CHECK(family.ground_size() == 20);
    const Orientation maximal = family.maximal_instance();
    CHECK(maximal.size() == 6);
    for (std::size_t i = 0; i < maximal.size(); ++i) {
      CHECK(maximal.element(i).big.count() == 10);
      CHECK(family.crossing_order(maximal.system().at(i)) == 5);
    }
  }
  SECTION("query orientation of a separation") {
    const TauMK family = gen_tau_mk(6, 3);
    const Side v0 = family.families()[0];
    const Separation top(OrientedSeparation(~v0, v0));
    const auto oriented = family.orient(top);
    REQUIRE(oriented.has_value());
    CHECK(oriented->big == v0);

    // A balanced bipartition crossing every family has no orientation.
    Side half(family.ground_size());
    for (std::size_t i = 0; i < family.ground_size(); i += 2) half.set(i);
    const Separation crossing_all(OrientedSeparation(half, ~half));
    if (family.crossing_order(crossing_all) >= 6)
      CHECK_FALSE(family.orient(crossing_all).has_value());
  }
  SECTION("materialization matches an independent bipartition scan") {
    for (const auto& [m, k] : std::vector<std::pair<std::size_t, std::size_t>>{{5, 3}, {6, 3}}) {
      const TauMK family = gen_tau_mk(m, k);
      const std::size_t n = family.ground_size();
      const Orientation tau = materialize_tau_mk(family);

      // Oracle: scan all bipartitions by mask over the canonical-side choice.
      std::size_t expected = 0;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        Side a(n);
        for (std::size_t i = 0; i + 1 < n; ++i)
          if ((mask >> i) & 1u) a.set(i);
        // Fix the last element to the complement side to halve the scan.
        const Side b = ~a;
        bool kept = false;
        for (const Side& f : family.families())
          if (f.is_subset_of(a) || f.is_subset_of(b)) kept = true;
        if (kept) ++expected;
      }
      CHECK(tau.size() == expected);
      if (m == 5) CHECK(tau.size() == 66);

      for (std::size_t i = 0; i < tau.size(); ++i) {
        CHECK(tau.system().order_of(tau.system().at(i)) < m);
        bool family_inside_big = false;
        for (const Side& f : family.families())
          if (f.is_subset_of(tau.element(i).big)) family_inside_big = true;
        CHECK(family_inside_big);
      }
    }
  }
  SECTION("block variant scales the intersections") {
    const TauMK family = gen_tau_mk(6, 3, 2);
    CHECK(family.ground_size() == 40);
    const Orientation maximal = family.maximal_instance();
    CHECK(min_triple_big_intersection(maximal).value() == 2);
    CHECK(resilience(maximal) == ResilienceValue::finite(3));
    CHECK(std::holds_alternative<NotInduced>(decide_induced(maximal)));
  }
  SECTION("parameter validation and budgets") {
    CHECK_THROWS_AS(gen_tau_mk(6, 2), InputError);
    CHECK_THROWS_AS(gen_tau_mk(4, 5), InputError);
    CHECK_THROWS_AS(materialize_tau_mk(gen_tau_mk(8, 4)), ResourceError);
  }
}

TEST_CASE("grid family") {
  const Orientation tau = gen_grid(5);
  const std::size_t n = 5;
  REQUIRE(tau.width() == 25);

  SECTION("every element is a genuine graph separation with a light small side") {
    for (std::size_t i = 0; i < tau.size(); ++i) {
      const OrientedSeparation e = tau.element(i);
      CHECK(e.separator().count() <= 4);
      CHECK(e.small.count() <= 10);
      CHECK(e.small.count() < e.big.count());  // tie-free, majority-oriented
      CHECK_FALSE(grid_edge_crosses(n, e.small - e.big, e.big - e.small));
    }
  }
  SECTION("low-order counts match the union-find component formula") {
    // Separations with separator Z are the component two-colorings of G - Z.
    for (std::size_t z = 0; z <= 2; ++z) {
      std::size_t expected = 0;
      for_each_combination(25, z, [&](const std::vector<std::size_t>& removed) {
        const std::size_t c = uf_components(n, side_from_indices(25, removed));
        expected += std::size_t{1} << (c - 1);
        return true;
      });
      std::size_t actual = 0;
      for (std::size_t i = 0; i < tau.size(); ++i)
        if (tau.element(i).separator().count() == z) ++actual;
      CHECK(actual == expected);
    }
  }
  SECTION("hand-picked separations are present") {
    // The corner cut, a plus-shaped cut around an interior cell, and the
    // trivial separation at one removed vertex.
    const Side corner_cut = side_from_indices(25, {1, 5});
    Side corner(25);
    corner.set(0);
    CHECK(tau.system().find(Separation(OrientedSeparation(corner | corner_cut, ~corner))).has_value());

    const std::size_t center = 12;
    const Side plus = side_from_indices(25, {center - 5, center - 1, center + 1, center + 5});
    Side middle(25);
    middle.set(center);
    CHECK(tau.system().find(Separation(OrientedSeparation(middle | plus, ~middle))).has_value());

    Side zee(25);
    zee.set(7);
    CHECK(tau.system().find(Separation(OrientedSeparation(zee, full_side(25)))).has_value());
  }
  SECTION("generation is deterministic") {
    CHECK(gen_grid(5) == tau);
  }
  CHECK_THROWS_AS(gen_grid(4), InputError);
}
