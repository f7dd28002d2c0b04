#pragma once

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"
#include "exactlp.hpp"
#include "inducers.hpp"
#include "orientations.hpp"
#include "rational.hpp"
#include "resilience.hpp"
#include "util.hpp"

namespace sepsys {

using Json = nlohmann::json;

constexpr const char* kInstanceFormat = "sepsys.instance/1";
constexpr const char* kCertificateFormat = "sepsys.certificate/1";

struct Provenance {
  std::string generator;
  Json params = Json::object();
};

struct ParsedInstance {
  SystemPtr system;
  std::optional<Orientation> orientation;
  std::optional<Provenance> provenance;
};

namespace detail {

inline Json side_to_array(const Side& s) {
  Json arr = Json::array();
  for (std::size_t i : side_indices(s)) arr.push_back(i);
  return arr;
}

inline Side side_from_array(std::size_t width, const Json& arr) {
  std::vector<std::size_t> indices;
  for (const auto& v : arr) indices.push_back(v.get<std::size_t>());
  return side_from_indices(width, indices);
}

inline Json weights_to_array(const WeightFunction& w) {
  Json arr = Json::array();
  for (const Rational& v : w) arr.push_back(format_rational(v));
  return arr;
}

inline WeightFunction weights_from_array(const Json& arr) {
  WeightFunction w;
  for (const auto& v : arr) w.push_back(parse_rational(v.get<std::string>()));
  return w;
}

}  // namespace detail

inline Json instance_to_json(const SeparationSystem& sys, const Orientation* tau = nullptr,
                             const Provenance* provenance = nullptr) {
  Json doc;
  doc["format"] = kInstanceFormat;
  doc["ground"]["size"] = sys.width();
  if (!sys.ground().labels().empty()) doc["ground"]["labels"] = sys.ground().labels();

  Json seps = Json::array();
  for (const Separation& s : sys.separations()) {
    Json item;
    item["a"] = detail::side_to_array(s.canonical().small);
    item["b"] = detail::side_to_array(s.canonical().big);
    seps.push_back(std::move(item));
  }
  doc["separations"] = std::move(seps);

  switch (sys.order_spec().kind()) {
    case OrderSpec::Kind::standard:
      doc["order"]["kind"] = "standard";
      break;
    case OrderSpec::Kind::crossing: {
      doc["order"]["kind"] = "crossing";
      Json families = Json::array();
      for (const Side& f : sys.order_spec().families()) families.push_back(detail::side_to_array(f));
      doc["order"]["families"] = std::move(families);
      break;
    }
    case OrderSpec::Kind::explicit_table: {
      doc["order"]["kind"] = "explicit";
      Json orders = Json::array();
      for (const Separation& s : sys.separations()) orders.push_back(sys.order_of(s));
      doc["order"]["orders"] = std::move(orders);
      break;
    }
  }

  if (tau) {
    if (!(tau->system() == sys)) throw InputError("orientation belongs to a different system");
    Json entries = Json::array();
    for (std::size_t i = 0; i < tau->size(); ++i) {
      Json entry;
      entry["index"] = i;
      entry["direction"] = tau->forward(i) ? "forward" : "reverse";
      entries.push_back(std::move(entry));
    }
    doc["orientation"] = std::move(entries);
  }
  if (provenance) {
    doc["provenance"]["generator"] = provenance->generator;
    doc["provenance"]["params"] = provenance->params;
  }
  return doc;
}

inline ParsedInstance instance_from_json(const Json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kInstanceFormat)
      throw InputError("unknown instance format");
    const std::size_t width = doc.at("ground").at("size").get<std::size_t>();
    std::vector<std::string> labels;
    if (doc.at("ground").contains("labels"))
      labels = doc.at("ground").at("labels").get<std::vector<std::string>>();
    GroundSet ground(width, std::move(labels));

    // Written orientations are remembered side by side with the canonical
    // separations so that direction flags survive both canonicalization and
    // the system's sort.
    std::vector<Separation> seps;
    std::vector<OrientedSeparation> written;
    for (const auto& item : doc.at("separations")) {
      OrientedSeparation o(detail::side_from_array(width, item.at("a")),
                           detail::side_from_array(width, item.at("b")));
      seps.emplace_back(o);
      written.push_back(std::move(o));
    }
    for (std::size_t i = 0; i < seps.size(); ++i)
      for (std::size_t j = i + 1; j < seps.size(); ++j)
        if (seps[i] == seps[j])
          throw InputError("duplicate separation at positions " + std::to_string(i) + " and " +
                           std::to_string(j));

    const Json& order = doc.at("order");
    const std::string kind = order.at("kind").get<std::string>();
    std::optional<OrderSpec> spec;
    if (kind == "standard") {
      spec = OrderSpec::standard();
    } else if (kind == "crossing") {
      std::vector<Side> families;
      for (const auto& f : order.at("families")) families.push_back(detail::side_from_array(width, f));
      spec = OrderSpec::crossing(std::move(families));
    } else if (kind == "explicit") {
      const auto& orders = order.at("orders");
      if (orders.size() != seps.size())
        throw InputError("explicit order table must list one order per separation");
      std::map<Separation, std::size_t, SepLess> table;
      for (std::size_t i = 0; i < seps.size(); ++i)
        table.emplace(seps[i], orders.at(i).get<std::size_t>());
      spec = OrderSpec::explicit_table(std::move(table));
    } else {
      throw InputError("unknown order kind: " + kind);
    }

    ParsedInstance out;
    out.system = make_system(std::move(ground), seps, std::move(*spec));

    if (doc.contains("orientation")) {
      const auto& entries = doc.at("orientation");
      if (entries.size() != seps.size())
        throw InputError("orientation must cover exactly the listed separations");
      std::vector<std::uint8_t> flags(out.system->size(), 2);
      for (const auto& entry : entries) {
        const std::size_t pos = entry.at("index").get<std::size_t>();
        if (pos >= seps.size()) throw InputError("orientation index out of range");
        const std::string dir = entry.at("direction").get<std::string>();
        if (dir != "forward" && dir != "reverse") throw InputError("unknown direction: " + dir);
        const OrientedSeparation chosen =
            (dir == "forward") ? written[pos] : written[pos].inverse();
        const std::size_t idx = *out.system->find(seps[pos]);
        const std::uint8_t flag = (chosen == out.system->at(idx).canonical()) ? 1 : 0;
        if (flags[idx] != 2 && flags[idx] != flag)
          throw InputError("conflicting orientation entries for one separation");
        flags[idx] = flag;
      }
      for (std::uint8_t f : flags)
        if (f == 2) throw InputError("orientation must cover exactly the listed separations");
      out.orientation = Orientation(out.system, std::move(flags));
    }

    if (doc.contains("provenance")) {
      Provenance prov;
      prov.generator = doc.at("provenance").at("generator").get<std::string>();
      if (doc.at("provenance").contains("params")) prov.params = doc.at("provenance").at("params");
      out.provenance = std::move(prov);
    }
    return out;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance document: ") + e.what());
  }
}

inline std::string emit_document(const Json& doc) { return doc.dump(2) + "\n"; }

inline std::string instance_digest(const Json& instance_doc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(instance_doc.dump())));
  return std::string("fnv1a:") + buf;
}

struct InducerCertificate {
  WeightFunction weights;
};
struct FarkasCertificate {
  std::vector<std::size_t> columns;
  WeightFunction weights;
};
struct SetCertificate {
  std::vector<std::size_t> members;
};
struct LocalWitnessCertificate {
  LocalWitnessSet witnesses;
};

using Certificate =
    std::variant<InducerCertificate, FarkasCertificate, SetCertificate, LocalWitnessCertificate>;

inline Json certificate_to_json(const Certificate& cert, const std::string& digest) {
  Json doc;
  doc["format"] = kCertificateFormat;
  doc["instance"] = digest;
  if (const auto* c = std::get_if<InducerCertificate>(&cert)) {
    doc["kind"] = "inducer";
    doc["weights"] = detail::weights_to_array(c->weights);
  } else if (const auto* c = std::get_if<FarkasCertificate>(&cert)) {
    doc["kind"] = "farkas-witness";
    doc["columns"] = c->columns;
    doc["weights"] = detail::weights_to_array(c->weights);
  } else if (const auto* c = std::get_if<SetCertificate>(&cert)) {
    doc["kind"] = "inducing-set";
    doc["members"] = c->members;
  } else if (const auto* c = std::get_if<LocalWitnessCertificate>(&cert)) {
    doc["kind"] = "local-witness-set";
    doc["k"] = c->witnesses.k;
    doc["ell"] = format_rational(c->witnesses.ell);
    doc["maximal"] = c->witnesses.maximal;
    Json entries = Json::array();
    for (const auto& [subset, w] : c->witnesses.witnesses) {
      Json entry;
      entry["subset"] = subset;
      entry["weights"] = detail::weights_to_array(w);
      entries.push_back(std::move(entry));
    }
    doc["witnesses"] = std::move(entries);
  }
  return doc;
}

/// Re-verifies a certificate document against a parsed instance, including the
/// digest binding. Returns false rather than throwing on a failed check.
inline bool verify_certificate_document(const ParsedInstance& instance, const Json& instance_doc,
                                        const Json& cert) {
  try {
    if (cert.at("format").get<std::string>() != kCertificateFormat) return false;
    if (cert.at("instance").get<std::string>() != instance_digest(instance_doc)) return false;
    if (!instance.orientation) return false;
    const Orientation& tau = *instance.orientation;
    const std::string kind = cert.at("kind").get<std::string>();

    if (kind == "inducer") {
      return induces(detail::weights_from_array(cert.at("weights")), tau);
    }
    if (kind == "inducing-set") {
      const Side members =
          side_from_indices(tau.width(), cert.at("members").get<std::vector<std::size_t>>());
      return induces_set(members, tau);
    }
    if (kind == "farkas-witness") {
      const auto columns = cert.at("columns").get<std::vector<std::size_t>>();
      const WeightFunction y = detail::weights_from_array(cert.at("weights"));
      if (y.size() != columns.size() || !is_nonzero(y)) return false;
      std::vector<OrientedSeparation> col_elems;
      for (std::size_t idx : columns) {
        if (idx >= tau.size()) return false;
        col_elems.push_back(tau.element(idx));
      }
      const RationalMatrix q = build_matrix(tau.width(), col_elems);
      const std::vector<Rational> ones(columns.size(), Rational(1));
      return verify_certificate(q, ones, Infeasible{y});
    }
    if (kind == "local-witness-set") {
      const auto maximal = cert.at("maximal").get<std::vector<std::size_t>>();
      const Rational ell = parse_rational(cert.at("ell").get<std::string>());
      std::vector<OrientedSeparation> mu;
      for (std::size_t idx : maximal) {
        if (idx >= tau.size()) return false;
        mu.push_back(tau.element(idx));
      }
      for (const auto& entry : cert.at("witnesses")) {
        const WeightFunction w = detail::weights_from_array(entry.at("weights"));
        if (w.size() != tau.width()) return false;
        for (const Rational& v : w)
          if (v < 0) return false;
        for (const auto& pos : entry.at("subset")) {
          const std::size_t p = pos.get<std::size_t>();
          if (p >= mu.size()) return false;
          if (weight_of(w, mu[p].big) - weight_of(w, mu[p].small) < 1) return false;
        }
        for (const OrientedSeparation& e : mu)
          if (weight_of(w, e.small) - weight_of(w, e.big) > ell) return false;
      }
      return true;
    }
    return false;
  } catch (const Json::exception&) {
    return false;
  } catch (const InputError&) {
    return false;
  }
}

}  // namespace sepsys
