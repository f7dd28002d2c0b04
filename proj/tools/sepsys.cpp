// Command-line front end: generators, axiom checks, inducibility decisions,
// resilience, duality and the acceptance-suite reproduction, all speaking the
// JSON instance/certificate formats on standard streams.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sepsys/documents.hpp"
#include "sepsys/duality.hpp"
#include "sepsys/generators.hpp"
#include "sepsys/reproduce.hpp"
#include "sepsys/resilience.hpp"

namespace {

using namespace sepsys;

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  const char* value = std::getenv(name);
  if (!value) return fallback;
  try {
    return std::stoull(value);
  } catch (...) {
    throw InputError(std::string("malformed budget in ") + name);
  }
}

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json load_json(const std::string& path) {
  try {
    if (path.empty() || path == "-") return Json::parse(read_stream(std::cin));
    std::ifstream file(path);
    if (!file) throw InputError("cannot open " + path);
    return Json::parse(read_stream(file));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

struct LoadedInstance {
  Json doc;
  ParsedInstance parsed;
};

LoadedInstance load_instance(const std::string& path) {
  LoadedInstance loaded;
  loaded.doc = load_json(path);
  loaded.parsed = instance_from_json(loaded.doc);
  return loaded;
}

const Orientation& require_orientation(const LoadedInstance& instance) {
  if (!instance.parsed.orientation)
    throw InputError("this command needs an instance with an orientation");
  return *instance.parsed.orientation;
}

void emit(const Json& doc) { std::cout << emit_document(doc); }

// generate ------------------------------------------------------------------

struct GenerateOptions {
  std::size_t n = 0, m = 0, k = 0, x = 0;
  std::optional<std::size_t> ell;
  bool full = false;
};

int run_generate(const std::string& family, const GenerateOptions& opt) {
  const std::uint64_t budget = env_budget("SEPSYS_ENUM_BUDGET", 1u << 22);
  Provenance prov;
  prov.generator = family;
  std::optional<Orientation> tau;
  if (family == "principal") {
    tau = gen_principal(opt.n, opt.x, budget);
    prov.params = Json{{"n", opt.n}, {"x", opt.x}};
  } else if (family == "intro") {
    tau = gen_intro(opt.m);
    prov.params = Json{{"m", opt.m}};
  } else if (family == "thirds") {
    tau = gen_thirds(opt.n);
    prov.params = Json{{"n", opt.n}};
  } else if (family == "grid") {
    tau = gen_grid(opt.n, budget);
    prov.params = Json{{"n", opt.n}};
  } else if (family == "tau-mk") {
    const TauMK tmk = gen_tau_mk(opt.m, opt.k, opt.ell);
    tau = opt.full ? materialize_tau_mk(tmk, budget) : tmk.maximal_instance();
    prov.params = Json{{"m", opt.m}, {"k", opt.k}, {"full", opt.full}};
    if (opt.ell) prov.params["ell"] = *opt.ell;
    if (!opt.full) prov.params["scope"] = "maximal-elements";
  }
  emit(instance_to_json(tau->system(), &*tau, &prov));
  return 0;
}

// verify ----------------------------------------------------------------------

int run_verify(const std::string& input, std::vector<std::string> axioms,
               const std::string& certificate_path, bool submodular, const std::string& format) {
  const LoadedInstance instance = load_instance(input);
  int status = 0;
  Json report = Json::object();
  const bool as_json = format == "json";

  if (!certificate_path.empty()) {
    const Json cert = load_json(certificate_path);
    const bool ok = verify_certificate_document(instance.parsed, instance.doc, cert);
    report["certificate"] = ok ? "valid" : "invalid";
    if (!as_json) std::cout << "certificate: " << (ok ? "valid" : "INVALID") << "\n";
    if (!ok) status = 1;
  }
  if (submodular) {
    const SubmodularityReport sub = check_submodular(*instance.parsed.system);
    report["submodular"] = sub.submodular;
    if (!as_json) std::cout << "submodular: " << (sub.submodular ? "yes" : "NO") << "\n";
    if (!sub.submodular) {
      const std::string pair =
          to_string(sub.violation->first) + " , " + to_string(sub.violation->second);
      report["submodular_violation"] = pair;
      if (!as_json) std::cout << "  violating pair: " << pair << "\n";
      status = 1;
    }
  }
  if (axioms.size() == 1 && axioms[0] == "all")
    axioms = {"consistent", "profile", "regular", "tangle"};
  if (!axioms.empty()) {
    const Orientation& tau = require_orientation(instance);
    const auto emit_axiom = [&](const std::string& name, bool ok, const std::string& witness_label,
                                const std::string& witness) {
      report[name] = ok;
      if (!as_json) std::cout << name << ": " << (ok ? "yes" : "NO") << "\n";
      if (!ok) {
        status = 1;
        if (!witness.empty()) {
          report[name + "_witness"] = witness;
          if (!as_json) std::cout << "  " << witness_label << ": " << witness << "\n";
        }
      }
    };
    for (const std::string& axiom : axioms) {
      if (axiom == "consistent") {
        const auto check = is_consistent(tau);
        emit_axiom("consistent", check.ok, "witness pair",
                   check.witness ? to_string(tau.element((*check.witness)[0])) + " , " +
                                       to_string(tau.element((*check.witness)[1]))
                                 : "");
      } else if (axiom == "profile") {
        const auto check = is_profile(tau);
        emit_axiom("profile", check.ok, "witness pair",
                   check.witness ? to_string(tau.element((*check.witness)[0])) + " , " +
                                       to_string(tau.element((*check.witness)[1]))
                                 : "");
      } else if (axiom == "regular") {
        const auto check = is_regular(tau);
        emit_axiom("regular", check.ok, "co-small element",
                   check.witness ? to_string(tau.element(*check.witness)) : "");
      } else if (axiom == "tangle") {
        const auto check = is_tangle(tau);
        std::string triple;
        if (check.witness)
          for (std::size_t idx : *check.witness)
            triple += (triple.empty() ? "" : " ") + to_string(tau.element(idx));
        emit_axiom("tangle", check.ok, "covering triple", triple);
      } else {
        throw InputError("unknown axiom: " + axiom);
      }
    }
  }
  if (as_json) emit(report);
  return status;
}

// decide ----------------------------------------------------------------------

int run_decide(const std::string& input, bool use_all, const std::string& expectation) {
  const LoadedInstance instance = load_instance(input);
  const Orientation& tau = require_orientation(instance);
  const InduceOutcome outcome = decide_induced(tau, !use_all);
  const std::string digest = instance_digest(instance.doc);

  std::string tag;
  if (const Induced* induced = std::get_if<Induced>(&outcome)) {
    tag = "induced";
    emit(certificate_to_json(InducerCertificate{induced->weights}, digest));
  } else {
    tag = "not-induced";
    const NotInduced& witness = std::get<NotInduced>(outcome);
    emit(certificate_to_json(FarkasCertificate{witness.columns, witness.witness}, digest));
  }
  if (!expectation.empty() && expectation != tag) {
    std::cerr << "expected " << expectation << ", decided " << tag << "\n";
    return 1;
  }
  return 0;
}

// resilience ------------------------------------------------------------------

int run_resilience(const std::string& input, std::optional<std::size_t> cap,
                   const std::string& format) {
  const LoadedInstance instance = load_instance(input);
  const ResilienceValue value = resilience(require_orientation(instance), cap);
  if (format == "json") {
    Json out;
    switch (value.kind) {
      case ResilienceValue::Kind::finite: out = {{"kind", "finite"}, {"value", value.value}}; break;
      case ResilienceValue::Kind::at_least:
        out = {{"kind", "at-least"}, {"value", value.value}};
        break;
      case ResilienceValue::Kind::infinite: out = {{"kind", "infinite"}}; break;
    }
    emit(out);
  } else {
    switch (value.kind) {
      case ResilienceValue::Kind::finite:
        std::cout << "resilience: finite " << value.value << "\n";
        break;
      case ResilienceValue::Kind::at_least:
        std::cout << "resilience: at least " << value.value << "\n";
        break;
      case ResilienceValue::Kind::infinite: std::cout << "resilience: infinite\n"; break;
    }
  }
  return 0;
}

// locally-induced -------------------------------------------------------------

int run_locally_induced(const std::string& input, std::size_t k, const std::string& ell_text) {
  const LoadedInstance instance = load_instance(input);
  const Orientation& tau = require_orientation(instance);
  const Rational ell = parse_rational(ell_text);
  const std::uint64_t budget = env_budget("SEPSYS_LP_BUDGET", 100000);
  const LocalInducedResult result = is_locally_induced(tau, k, ell, budget);
  const std::string digest = instance_digest(instance.doc);
  if (const LocalWitnessSet* ws = std::get_if<LocalWitnessSet>(&result)) {
    emit(certificate_to_json(LocalWitnessCertificate{*ws}, digest));
  } else {
    const LocalCounterexample& cx = std::get<LocalCounterexample>(result);
    Json out;
    out["kind"] = "local-counterexample";
    out["instance"] = digest;
    out["k"] = k;
    out["ell"] = format_rational(ell);
    out["subset"] = cx.subset;
    Json farkas = Json::array();
    for (const Rational& v : cx.farkas) farkas.push_back(format_rational(v));
    out["farkas"] = std::move(farkas);
    emit(out);
  }
  return 0;
}

// dualize -----------------------------------------------------------------------

int run_dualize(const std::string& input) {
  const LoadedInstance instance = load_instance(input);
  const DualSystem dual = dualize(require_orientation(instance));
  Provenance prov;
  prov.generator = "dualize";
  prov.params["instance"] = instance_digest(instance.doc);
  prov.params["injective"] = dual.injective;
  Json classes = Json::array();
  for (const auto& cls : dual.collision_classes)
    if (cls.size() > 1) classes.push_back(cls);
  prov.params["collisions"] = std::move(classes);
  const Orientation* orientation =
      dual.default_orientation ? &*dual.default_orientation : nullptr;
  emit(instance_to_json(*dual.base, orientation, &prov));
  return 0;
}

// oracle ------------------------------------------------------------------------

int run_oracle_set_inducer(const std::string& input) {
  const LoadedInstance instance = load_instance(input);
  const Orientation& tau = require_orientation(instance);
  const std::uint64_t budget = env_budget("SEPSYS_ENUM_BUDGET", 1u << 22);
  const auto found = brute_force_set_inducer(tau, budget);
  if (found) {
    emit(certificate_to_json(SetCertificate{side_indices(*found)},
                             instance_digest(instance.doc)));
  } else {
    emit(Json{{"kind", "none"}, {"instance", instance_digest(instance.doc)}});
  }
  return 0;
}

int run_oracle_enumerate(const std::string& input, const std::string& filter) {
  const LoadedInstance instance = load_instance(input);
  const std::uint64_t budget = env_budget("SEPSYS_ENUM_BUDGET", 1u << 22);
  OrientationFilter predicate;
  if (filter == "none")
    predicate = nullptr;
  else if (filter == "consistent")
    predicate = [](const Orientation& t) { return is_consistent(t).ok; };
  else if (filter == "profile")
    predicate = [](const Orientation& t) { return is_profile(t).ok; };
  else if (filter == "regular")
    predicate = [](const Orientation& t) { return is_regular(t).ok; };
  else if (filter == "regular-profile")
    predicate = [](const Orientation& t) { return is_regular(t).ok && is_profile(t).ok; };
  else if (filter == "tangle")
    predicate = [](const Orientation& t) { return is_tangle(t).ok; };
  else
    throw InputError("unknown filter: " + filter);

  const auto results = enumerate_orientations(instance.parsed.system, predicate, budget);
  Json out;
  out["count"] = results.size();
  out["filter"] = filter;
  Json list = Json::array();
  for (const Orientation& tau : results) {
    Json dirs = Json::array();
    for (std::size_t i = 0; i < tau.size(); ++i)
      dirs.push_back(tau.forward(i) ? "forward" : "reverse");
    list.push_back(std::move(dirs));
  }
  out["orientations"] = std::move(list);
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-separation systems: orientations, tangles, inducers, duality"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "emit a named instance family");
  generate->require_subcommand(1);
  GenerateOptions gopt;
  auto* principal = generate->add_subcommand("principal", "all bipartitions, toward a point");
  principal->add_option("--n", gopt.n, "ground-set size")->required();
  principal->add_option("--x", gopt.x, "the fixed point")->required();
  auto* intro = generate->add_subcommand("intro", "one point per separation triple");
  intro->add_option("--m", gopt.m, "number of separations")->required();
  auto* tau_mk = generate->add_subcommand("tau-mk", "the sharpness family");
  tau_mk->add_option("--m", gopt.m, "number of membership families")->required();
  tau_mk->add_option("--k", gopt.k, "subset size")->required();
  std::size_t ell_value = 0;
  auto* ell_opt = tau_mk->add_option("--ell", ell_value, "block size per subset");
  tau_mk->add_flag("--full", gopt.full, "materialize the full low-order system");
  auto* thirds = generate->add_subcommand("thirds", "bipartitions with a light side");
  thirds->add_option("--n", gopt.n, "ground-set size")->required();
  auto* grid = generate->add_subcommand("grid", "low-order grid separations");
  grid->add_option("--n", gopt.n, "grid side length")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "check axioms or a certificate");
  std::string verify_input;
  std::vector<std::string> axioms;
  std::string certificate_path;
  bool submodular = false;
  verify->add_option("--input", verify_input, "instance file (default: stdin)");
  verify->add_option("--axioms", axioms, "consistent, profile, regular, tangle, or all")
      ->delimiter(',');
  verify->add_option("--certificate", certificate_path, "certificate file to re-verify");
  verify->add_flag("--submodular", submodular, "check order-function submodularity");
  std::string verify_format = "text";
  verify->add_option("--format", verify_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // decide
  auto* decide = app.add_subcommand("decide", "decide inducibility, emit a certificate");
  std::string decide_input, expectation;
  bool use_all = false;
  decide->add_option("--input", decide_input, "instance file (default: stdin)");
  decide->add_flag("--use-all", use_all, "use every element as an LP column");
  decide->add_option("--expect", expectation, "induced or not-induced; mismatches exit 1")
      ->check(CLI::IsMember({"induced", "not-induced"}));

  // resilience
  auto* resilience_cmd = app.add_subcommand("resilience", "resilience of the orientation");
  std::string resilience_input, resilience_format = "text";
  std::size_t cap_value = 0;
  resilience_cmd->add_option("--input", resilience_input, "instance file (default: stdin)");
  auto* cap_opt = resilience_cmd->add_option("--cap", cap_value, "search cap");
  resilience_cmd->add_option("--format", resilience_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // locally-induced
  auto* locally = app.add_subcommand("locally-induced", "local witness sets by exact LP");
  std::string locally_input, ell_text = "1";
  std::size_t locally_k = 1;
  locally->add_option("--input", locally_input, "instance file (default: stdin)");
  locally->add_option("--k", locally_k, "subset size")->required();
  locally->add_option("--ell", ell_text, "deficit bound, as p/q")->required();

  // dualize
  auto* dualize_cmd = app.add_subcommand("dualize", "emit the dual system");
  std::string dualize_input;
  dualize_cmd->add_option("--input", dualize_input, "instance file (default: stdin)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force ground truths");
  oracle->require_subcommand(1);
  auto* set_inducer = oracle->add_subcommand("set-inducer", "first inducing subset, if any");
  std::string oracle_input;
  set_inducer->add_option("--input", oracle_input, "instance file (default: stdin)");
  auto* enumerate = oracle->add_subcommand("enumerate", "filtered orientation enumeration");
  std::string enumerate_input, filter = "none";
  enumerate->add_option("--input", enumerate_input, "instance file (default: stdin)");
  enumerate->add_option("--filter", filter,
                        "none, consistent, profile, regular, regular-profile, tangle");

  // reproduce
  app.add_subcommand("reproduce", "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (principal->parsed()) return run_generate("principal", gopt);
    if (intro->parsed()) return run_generate("intro", gopt);
    if (tau_mk->parsed()) {
      if (ell_opt->count() > 0) gopt.ell = ell_value;
      return run_generate("tau-mk", gopt);
    }
    if (thirds->parsed()) return run_generate("thirds", gopt);
    if (grid->parsed()) return run_generate("grid", gopt);
    if (verify->parsed())
      return run_verify(verify_input, axioms, certificate_path, submodular, verify_format);
    if (decide->parsed()) return run_decide(decide_input, use_all, expectation);
    if (resilience_cmd->parsed()) {
      std::optional<std::size_t> cap;
      if (cap_opt->count() > 0) cap = cap_value;
      return run_resilience(resilience_input, cap, resilience_format);
    }
    if (locally->parsed()) return run_locally_induced(locally_input, locally_k, ell_text);
    if (dualize_cmd->parsed()) return run_dualize(dualize_input);
    if (set_inducer->parsed()) return run_oracle_set_inducer(oracle_input);
    if (enumerate->parsed()) return run_oracle_enumerate(enumerate_input, filter);
    if (app.got_subcommand("reproduce"))
      return sepsys::run_acceptance_suite(std::cout) ? 0 : 1;
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  }
}
