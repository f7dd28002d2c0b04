#include <catch_amalgamated.hpp>

#include <random>

#include "sepsys/documents.hpp"
#include "sepsys/duality.hpp"
#include "sepsys/generators.hpp"

using namespace sepsys;

namespace {

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

TEST_CASE("rational strings") {
  CHECK(format_rational(Rational(5)) == "5/1");
  CHECK(format_rational(Rational(2, 4)) == "1/2");
  CHECK(format_rational(Rational(-3, 9)) == "-1/3");
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
  CHECK_THROWS_AS(parse_rational("banana"), InputError);
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational r(int(rng() % 2000) - 1000, 1 + int(rng() % 50));
    CHECK(parse_rational(format_rational(r)) == r);
  }
}

TEST_CASE("instance documents round-trip") {
  std::mt19937_64 rng(2023);
  for (int trial = 0; trial < 60; ++trial) {
    const Orientation tau = random_orientation(rng, 2 + rng() % 5, 1 + rng() % 6);
    const Provenance prov{"random", Json{{"trial", trial}}};
    const Json doc = instance_to_json(tau.system(), &tau, &prov);

    const ParsedInstance parsed = instance_from_json(doc);
    REQUIRE(parsed.orientation.has_value());
    CHECK(*parsed.system == tau.system());
    CHECK(*parsed.orientation == tau);
    REQUIRE(parsed.provenance.has_value());
    CHECK(parsed.provenance->generator == "random");

    // Canonical documents re-emit byte-identically.
    const Json again = instance_to_json(*parsed.system, &*parsed.orientation, &*parsed.provenance);
    CHECK(emit_document(doc) == emit_document(again));
    CHECK(instance_digest(doc) == instance_digest(again));
  }
}

TEST_CASE("order specifications survive the round trip") {
  SECTION("crossing") {
    const TauMK family = gen_tau_mk(5, 3);
    const Orientation tau = family.maximal_instance();
    const Json doc = instance_to_json(tau.system(), &tau);
    const ParsedInstance parsed = instance_from_json(doc);
    CHECK(*parsed.system == tau.system());
    CHECK(parsed.system->order_of(parsed.system->at(0)) ==
          tau.system().order_of(tau.system().at(0)));
  }
  SECTION("explicit tables") {
    const auto s1 = Separation(OrientedSeparation(side_from_indices(2, {}), full_side(2)));
    const auto s2 = Separation(OrientedSeparation(side_from_indices(2, {0}),
                                                  side_from_indices(2, {1})));
    std::map<Separation, std::size_t, SepLess> table;
    table.emplace(s1, 5);
    table.emplace(s2, 7);
    auto sys = make_system(GroundSet(2), {s1, s2}, OrderSpec::explicit_table(table));
    const Json doc = instance_to_json(*sys);
    const ParsedInstance parsed = instance_from_json(doc);
    CHECK(parsed.system->order_of(s1) == 5);
    CHECK(parsed.system->order_of(s2) == 7);
  }
}

TEST_CASE("non-canonical documents are normalized") {
  // Sides written in the reverse orientation with the direction flag flipped
  // parse to the same orientation.
  Json doc;
  doc["format"] = kInstanceFormat;
  doc["ground"]["size"] = 3;
  doc["order"]["kind"] = "standard";
  doc["separations"] = Json::array({Json{{"a", {1, 2}}, {"b", {0}}}});
  doc["orientation"] = Json::array({Json{{"index", 0}, {"direction", "reverse"}}});
  const ParsedInstance parsed = instance_from_json(doc);
  REQUIRE(parsed.orientation.has_value());
  CHECK(parsed.orientation->element(0) ==
        OrientedSeparation(side_from_indices(3, {0}), side_from_indices(3, {1, 2})));
}

TEST_CASE("malformed documents are rejected") {
  Json good;
  good["format"] = kInstanceFormat;
  good["ground"]["size"] = 2;
  good["order"]["kind"] = "standard";
  good["separations"] = Json::array({Json{{"a", {0}}, {"b", {1}}}});
  CHECK_NOTHROW(instance_from_json(good));

  Json bad = good;
  bad["format"] = "something-else";
  CHECK_THROWS_AS(instance_from_json(bad), InputError);

  bad = good;
  bad["separations"].push_back(Json{{"a", {1}}, {"b", {0}}});  // duplicate, flipped
  CHECK_THROWS_AS(instance_from_json(bad), InputError);

  bad = good;
  bad["separations"][0]["b"] = Json::array();  // does not cover
  CHECK_THROWS_AS(instance_from_json(bad), InputError);

  bad = good;
  bad["separations"][0]["a"] = Json::array({5});  // out of range
  CHECK_THROWS_AS(instance_from_json(bad), InputError);

  bad = good;
  bad["orientation"] = Json::array();  // does not cover the separations
  CHECK_THROWS_AS(instance_from_json(bad), InputError);

  bad = good;
  bad["order"]["kind"] = "unheard-of";
  CHECK_THROWS_AS(instance_from_json(bad), InputError);

  bad = good;
  bad.erase("ground");
  CHECK_THROWS_AS(instance_from_json(bad), InputError);
}

TEST_CASE("certificates verify against their instance") {
  const Orientation tau = gen_principal(4, 1);
  const Json instance_doc = instance_to_json(tau.system(), &tau);
  const std::string digest = instance_digest(instance_doc);
  const ParsedInstance parsed = instance_from_json(instance_doc);

  SECTION("inducer certificates") {
    const InduceOutcome out = decide_induced(tau);
    REQUIRE(std::holds_alternative<Induced>(out));
    const Json cert =
        certificate_to_json(InducerCertificate{std::get<Induced>(out).weights}, digest);
    CHECK(verify_certificate_document(parsed, instance_doc, cert));

    Json tampered = cert;
    tampered["weights"][1] = "0/1";
    tampered["weights"][3] = "0/1";
    CHECK_FALSE(verify_certificate_document(parsed, instance_doc, tampered));

    Json rebound = cert;
    rebound["instance"] = "fnv1a:0000000000000000";
    CHECK_FALSE(verify_certificate_document(parsed, instance_doc, rebound));
  }
  SECTION("inducing-set certificates") {
    const Json cert = certificate_to_json(SetCertificate{{1}}, digest);
    CHECK(verify_certificate_document(parsed, instance_doc, cert));
    const Json wrong = certificate_to_json(SetCertificate{{0, 2}}, digest);
    CHECK_FALSE(verify_certificate_document(parsed, instance_doc, wrong));
  }
  SECTION("farkas certificates") {
    const Orientation hard = materialize_tau_mk(gen_tau_mk(6, 3));
    const Json hard_doc = instance_to_json(hard.system(), &hard);
    const ParsedInstance hard_parsed = instance_from_json(hard_doc);
    const InduceOutcome out = decide_induced(hard);
    REQUIRE(std::holds_alternative<NotInduced>(out));
    const NotInduced& witness = std::get<NotInduced>(out);
    const Json cert = certificate_to_json(FarkasCertificate{witness.columns, witness.witness},
                                          instance_digest(hard_doc));
    CHECK(verify_certificate_document(hard_parsed, hard_doc, cert));

    Json tampered = cert;
    tampered["weights"][0] = "1000000/1";
    CHECK_FALSE(verify_certificate_document(hard_parsed, hard_doc, tampered));
  }
  SECTION("local witness certificates") {
    const Orientation family = gen_tau_mk(6, 3).maximal_instance();
    const Json family_doc = instance_to_json(family.system(), &family);
    const LocalInducedResult result = is_locally_induced(family, 3, Rational(1));
    REQUIRE(std::holds_alternative<LocalWitnessSet>(result));
    const Json cert = certificate_to_json(
        LocalWitnessCertificate{std::get<LocalWitnessSet>(result)}, instance_digest(family_doc));
    CHECK(verify_certificate_document(instance_from_json(family_doc), family_doc, cert));
  }
}
