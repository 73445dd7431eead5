// bellcert: command-line front end.
//
// Exit codes: 0 feasible / pass / none-found, 1 witness verify fail, 2 usage or input
// error, 3 infeasible with certificate (membership) or violation found (search),
// 4 marginal verdict.

#include "bellcert/certify.hpp"
#include "bellcert/io.hpp"
#include "bellcert/registry.hpp"
#include "bellcert/states.hpp"
#include "bellcert/witness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <thread>

#ifndef BELLCERT_VERSION
#define BELLCERT_VERSION "0.0.0"
#endif

namespace {

using bellcert::io::json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitMarginal = 4;

struct Globals {
  double tol = bellcert::kDefaultTol;
  std::uint64_t seed = 1;
  std::string out;
  bool json = false;
};

unsigned thread_cap() {
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const char* env = std::getenv("BELLCERT_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) throw std::invalid_argument("BELLCERT_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

class Run {
 public:
  Run(const Globals& g, std::string command) : g_(g), command_(std::move(command)), start_(Clock::now()) {}

  void input(const std::string& key, json value) { inputs_[key] = std::move(value); }
  void tolerance(const std::string& key, double value) { tolerances_[key] = value; }

  // Writes the document to --out, prints it with --json, else prints the summary.
  void emit(json doc, const std::string& summary) {
    const double duration = std::chrono::duration<double>(Clock::now() - start_).count();
    doc["manifest"] = {{"command", command_},   {"inputs", inputs_},         {"seed", g_.seed},
                       {"tolerances", tolerances_}, {"version", BELLCERT_VERSION}, {"duration_s", duration}};
    if (!g_.out.empty()) bellcert::io::write_json_file(g_.out, doc);
    if (g_.json) {
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << summary;
      if (!g_.out.empty()) std::cout << "written: " << g_.out << "\n";
    }
  }

 private:
  const Globals& g_;
  std::string command_;
  Clock::time_point start_;
  json inputs_ = json::object();
  json tolerances_ = json::object();
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

int cmd_event_vector(const Globals& g, const std::string& state, const std::string& config_name) {
  Run run(g, "event-vector");
  run.input("state", state);
  run.input("config", config_name);
  const auto rho = bellcert::registry::resolve_state(state);
  const auto config = bellcert::registry::resolve_config(config_name);
  const auto p = bellcert::event_vector(rho, config);
  const auto& l = p.layout;
  std::ostringstream s;
  s << "event vector: " << l.size() << " entries (joint " << l.joint_size() << ", alice " << l.bits_a() << ", bob "
    << l.bits_b() << ")\n";
  run.emit({{"event_vector", bellcert::io::to_json(p)}}, s.str());
  return kExitOk;
}

int cmd_membership(const Globals& g, const std::string& state, const std::string& config_name) {
  Run run(g, "membership");
  run.input("state", state);
  run.input("config", config_name);
  run.tolerance("tol", g.tol);
  run.tolerance("certificate_margin", bellcert::kCertificateMargin);
  const auto rho = bellcert::registry::resolve_state(state);
  const auto config = bellcert::registry::resolve_config(config_name);
  const auto gens = bellcert::build_generators(config);
  const auto p = bellcert::event_vector(rho, config);
  const auto r = bellcert::cone_membership(p, gens, g.tol);

  json doc = {{"status", bellcert::to_string(r.status)},
              {"slack", r.slack},
              {"threshold", r.threshold},
              {"iterations", r.iterations}};
  std::ostringstream s;
  s << "status: " << bellcert::to_string(r.status) << "\nslack: " << fmt(r.slack) << " (threshold " << fmt(r.threshold)
    << ")\n";
  if (!r.note.empty()) {
    doc["note"] = r.note;
    s << "note: " << r.note << "\n";
  }
  switch (r.status) {
    case bellcert::MembershipStatus::feasible: {
      json weights = json::array();
      for (const auto& [lambda, q] : r.weights) weights.push_back({{"lambda", lambda}, {"q", q}});
      doc["weights"] = weights;
      doc["residual"] = r.residual;
      s << "local model with " << r.weights.size() << " deterministic assignments, residual " << fmt(r.residual)
        << "\n";
      run.emit(doc, s.str());
      return kExitOk;
    }
    case bellcert::MembershipStatus::infeasible:
      doc["certificate"] = bellcert::io::to_json(*r.certificate, &config);
      s << "Bell inequality violated: F.P = " << fmt(r.certificate->violation)
        << ", min F.B = " << fmt(r.certificate->min_generator_value) << "\n";
      run.emit(doc, s.str());
      return kExitInfeasible;
    case bellcert::MembershipStatus::marginal:
      run.emit(doc, s.str());
      return kExitMarginal;
  }
  return kExitError;
}

json witness_document(const bellcert::Witness& w) { return bellcert::io::to_json(w); }

int cmd_witness_build(const Globals& g, const std::string& certificate_path, const std::string& config_name,
                      bool chsh) {
  Run run(g, "witness build");
  bellcert::Witness w = [&] {
    if (chsh) {
      if (!certificate_path.empty()) throw std::invalid_argument("--chsh and --certificate are exclusive");
      run.input("chsh", "canonical");
      return bellcert::chsh_witness(bellcert::ChshSettings::canonical());
    }
    if (certificate_path.empty()) throw std::invalid_argument("witness build needs --certificate or --chsh");
    run.input("certificate", certificate_path);
    const json j = bellcert::io::read_json_file(certificate_path);
    const auto doc = bellcert::io::certificate_from_json(j);
    std::optional<bellcert::MeasurementConfig> config = doc.config;
    if (!config_name.empty()) {
      run.input("config", config_name);
      config = bellcert::registry::resolve_config(config_name);
    }
    if (!config) throw std::invalid_argument("certificate carries no configuration; pass --config");
    if (!(config->layout() == doc.certificate.layout)) {
      throw bellcert::DimensionMismatch("configuration layout does not match the certificate");
    }
    auto built = bellcert::witness_from_farkas(doc.certificate.f, *config);
    const json& src = j.contains("certificate") ? j.at("certificate") : j;
    built.offset = src.value("c", 0.0);
    return built;
  }();
  std::ostringstream s;
  s << "witness on " << w.dims.a << "x" << w.dims.b << ", offset c = " << fmt(w.offset) << "\n";
  run.emit({{"witness", witness_document(w)}}, s.str());
  return kExitOk;
}

bellcert::Witness load_witness(const std::string& path) {
  const json j = bellcert::io::read_json_file(path);
  return bellcert::io::witness_from_json(j.contains("witness") ? j.at("witness") : j);
}

int cmd_witness_verify(const Globals& g, const std::string& witness_path, const std::string& state,
                       std::size_t restarts) {
  Run run(g, "witness verify");
  run.input("witness", witness_path);
  run.input("state", state);
  run.input("restarts", restarts);
  run.tolerance("detect", 1e-9);
  run.tolerance("product_minimum", 1e-6);
  const auto w = load_witness(witness_path);
  const auto rho = bellcert::registry::resolve_state(state);
  bellcert::ProductMinimumOptions opt;
  opt.restarts = restarts;
  opt.seed = g.seed;
  opt.threads = thread_cap();
  const auto r = bellcert::verify_witness(w, rho, opt);
  json doc = {{"value", r.value},
              {"product_minimum", r.product_minimum.value},
              {"certification", r.product_minimum.certification},
              {"detects", r.detects},
              {"valid", r.valid},
              {"pass", r.pass}};
  if (r.product_minimum.grid_value) doc["grid_minimum"] = *r.product_minimum.grid_value;
  std::ostringstream s;
  s << "Tr(H rho) = " << fmt(r.value) << "\nmin over products = " << fmt(r.product_minimum.value) << " ("
    << r.product_minimum.certification << ")\n"
    << (r.pass ? "pass" : "fail") << "\n";
  run.emit(doc, s.str());
  return r.pass ? kExitOk : kExitFail;
}

int cmd_witness_decompose(const Globals& g, const std::string& witness_path) {
  Run run(g, "witness decompose");
  run.input("witness", witness_path);
  const auto w = load_witness(witness_path);
  const auto config = bellcert::complete_config(w.dims.a, w.dims.b);
  const auto d = bellcert::witness_to_farkas(w, config);
  const auto rebuilt = bellcert::witness_from_farkas(d.f, config);
  const auto n = static_cast<Eigen::Index>(w.dims.total());
  const double deviation =
      bellcert::max_abs(bellcert::ComplexMatrix(rebuilt.h.matrix() + d.c * bellcert::ComplexMatrix::Identity(n, n) - w.h.matrix()));
  json doc = {{"F", bellcert::io::real_vector_to_json(d.f)},
              {"c", d.c},
              {"layout", bellcert::io::to_json(config.layout())},
              {"config", bellcert::io::to_json(config)},
              {"max_deviation", deviation}};
  std::ostringstream s;
  s << "decomposed over complete:" << w.dims.a << "," << w.dims.b << " (" << d.f.size() << " coefficients), c = "
    << fmt(d.c) << "\nroundtrip max deviation = " << fmt(deviation) << "\n";
  run.emit(doc, s.str());
  return kExitOk;
}

int cmd_search(const Globals& g, const std::string& state, const std::string& shape_spec, std::size_t restarts,
               std::size_t evaluations) {
  Run run(g, "search");
  run.input("state", state);
  run.input("shape", shape_spec);
  run.input("restarts", restarts);
  run.input("evaluations", evaluations);
  run.tolerance("tol", bellcert::kDefaultTol);
  run.tolerance("certificate_margin", bellcert::kCertificateMargin);
  const auto rho = bellcert::registry::resolve_state(state);
  const auto shape = bellcert::registry::parse_shape(shape_spec);
  const auto r = bellcert::violation_search(rho, shape, {restarts, evaluations}, g.seed, thread_cap());
  json doc = {{"found", r.found},
              {"best_slack", r.best_slack},
              {"best_restart", r.best_restart},
              {"evaluations", r.evaluations},
              {"parameters", r.parameters}};
  std::ostringstream s;
  if (r.found) {
    doc["certificate"] = bellcert::io::to_json(*r.certificate, &*r.config);
    s << "violation found: F.P = " << fmt(r.certificate->violation) << " (restart " << r.best_restart << ")\n";
  } else {
    if (r.config) doc["config"] = bellcert::io::to_json(*r.config);
    s << "none found; best slack " << fmt(r.best_slack) << "\n";
  }
  run.emit(doc, s.str());
  return r.found ? kExitInfeasible : kExitOk;
}

int cmd_tomography(const Globals& g, const std::string& state, const std::string& dims_spec) {
  Run run(g, "tomography");
  run.input("state", state);
  const auto rho = bellcert::registry::resolve_state(state);
  const auto dims = rho.dims();
  if (!dims_spec.empty()) {
    run.input("dims", dims_spec);
    const auto comma = dims_spec.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--dims expects '<dA>,<dB>'");
    if (std::stoul(dims_spec.substr(0, comma)) != dims.a || std::stoul(dims_spec.substr(comma + 1)) != dims.b) {
      throw bellcert::DimensionMismatch("--dims does not match the state");
    }
  }
  const bool supported = (dims.a == 2 && (dims.b == 2 || dims.b == 3)) || (dims.a == 3 && dims.b == 3);
  if (!supported) throw std::invalid_argument("tomography supports dims 2,2 / 2,3 / 3,3");
  const auto config = bellcert::complete_config(dims.a, dims.b);
  const auto p = bellcert::event_vector(rho, config);
  const auto rec = bellcert::reconstruct_state(p, config);
  const double deviation = bellcert::max_abs(bellcert::ComplexMatrix(rec.matrix() - rho.matrix()));
  json doc = {{"dimA", dims.a}, {"dimB", dims.b}, {"event_vector_size", p.layout.size()},
              {"max_deviation", deviation}, {"reconstruction", bellcert::io::to_json(rec)}};
  std::ostringstream s;
  s << "reconstructed " << dims.a << "x" << dims.b << " state from " << p.layout.size()
    << " probabilities; max deviation " << fmt(deviation) << "\n";
  run.emit(doc, s.str());
  return kExitOk;
}

int cmd_state_show(const Globals& g, const std::string& state) {
  Run run(g, "state show");
  run.input("state", state);
  const auto rho = bellcert::registry::resolve_state(state);
  const auto ppt = bellcert::ppt_test(rho, g.tol);
  std::ostringstream s;
  s << rho.dims().a << "x" << rho.dims().b << " state, PPT " << (ppt.is_ppt ? "yes" : "no")
    << " (min PT eigenvalue " << fmt(ppt.min_eigenvalue) << ")\n"
    << rho.matrix() << "\n";
  run.emit({{"state", bellcert::io::to_json(rho)}, {"ppt", ppt.is_ppt}, {"min_pt_eigenvalue", ppt.min_eigenvalue}},
           s.str());
  return kExitOk;
}

int cmd_config_show(const Globals& g, const std::string& config_name) {
  Run run(g, "config show");
  run.input("config", config_name);
  const auto config = bellcert::registry::resolve_config(config_name);
  const auto l = config.layout();
  std::ostringstream s;
  s << "alice: " << l.alice_outcomes.size() << " measurements, bob: " << l.bob_outcomes.size()
    << " measurements, event vector size " << l.size() << "\n";
  run.emit({{"config", bellcert::io::to_json(config)}, {"layout", bellcert::io::to_json(l)}}, s.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-inequality certificates and entanglement witnesses", "bellcert"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", BELLCERT_VERSION);

  Globals g;
  app.add_option("--tol", g.tol, "Relative membership tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Write the result document to this file");
  app.add_flag("--json", g.json, "Print the result document instead of a summary");

  std::string state;
  std::string config;
  std::function<int()> action;

  auto* ev = app.add_subcommand("event-vector", "Outcome probabilities of a state under a configuration");
  ev->add_option("--state", state, "State name or JSON file")->required();
  ev->add_option("--config", config, "Configuration name or JSON file")->required();
  ev->callback([&] { action = [&] { return cmd_event_vector(g, state, config); }; });

  auto* mem = app.add_subcommand("membership", "Decide LHV-cone membership; extract a certificate if outside");
  mem->add_option("--state", state)->required();
  mem->add_option("--config", config)->required();
  mem->callback([&] { action = [&] { return cmd_membership(g, state, config); }; });

  auto* wit = app.add_subcommand("witness", "Build, verify or decompose entanglement witnesses");
  wit->require_subcommand(1);
  std::string certificate_path;
  std::string witness_path;
  bool chsh = false;
  std::size_t restarts = 16;
  auto* build = wit->add_subcommand("build", "Witness from a certificate (or the canonical CHSH witness)");
  build->add_option("--certificate", certificate_path, "Certificate, membership, search or decompose document");
  build->add_option("--config", config, "Configuration, if the document carries none");
  build->add_flag("--chsh", chsh, "Canonical CHSH witness");
  build->callback([&] { action = [&] { return cmd_witness_build(g, certificate_path, config, chsh); }; });
  auto* verify = wit->add_subcommand("verify", "Check Tr(H rho) < 0 and the product-state minimum");
  verify->add_option("--witness", witness_path)->required();
  verify->add_option("--state", state)->required();
  verify->add_option("--restarts", restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  verify->callback([&] { action = [&] { return cmd_witness_verify(g, witness_path, state, restarts); }; });
  auto* decompose = wit->add_subcommand("decompose", "Express a witness as (F, c) over the complete configuration");
  decompose->add_option("--witness", witness_path)->required();
  decompose->callback([&] { action = [&] { return cmd_witness_decompose(g, witness_path); }; });

  auto* search = app.add_subcommand("search", "Multi-start search for a violated Bell inequality");
  std::string shape = "2x2,2x2";
  std::size_t search_restarts = 32;
  std::size_t evaluations = 1500;
  search->add_option("--state", state)->required();
  search->add_option("--shape", shape, "<nA>x<kA>,<nB>x<kB>")->capture_default_str();
  search->add_option("--restarts", search_restarts)->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--evaluations", evaluations, "Objective evaluations per restart")->capture_default_str();
  search->callback([&] { action = [&] { return cmd_search(g, state, shape, search_restarts, evaluations); }; });

  auto* tomo = app.add_subcommand("tomography", "Reconstruct a state from its complete-configuration statistics");
  std::string dims;
  tomo->add_option("--state", state)->required();
  tomo->add_option("--dims", dims, "<dA>,<dB>; checked against the state");
  tomo->callback([&] { action = [&] { return cmd_tomography(g, state, dims); }; });

  auto* st = app.add_subcommand("state", "Inspect registry states");
  st->require_subcommand(1);
  auto* st_show = st->add_subcommand("show", "Print a state");
  st_show->add_option("name", state)->required();
  st_show->callback([&] { action = [&] { return cmd_state_show(g, state); }; });

  auto* cf = app.add_subcommand("config", "Inspect registry configurations");
  cf->require_subcommand(1);
  auto* cf_show = cf->add_subcommand("show", "Print a configuration");
  cf_show->add_option("name", config)->required();
  cf_show->callback([&] { action = [&] { return cmd_config_show(g, config); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
