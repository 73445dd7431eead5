// Acceptance gate. Prints one PASS/FAIL line per criterion; with an argument N runs only
// criterion N. Exit status is non-zero iff a criterion fails.

#include "bellcert/witness.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace bellcert;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

ChshSettings random_settings(Rng& rng) {
  return {oracle::random_direction(rng), oracle::random_direction(rng), oracle::random_direction(rng),
          oracle::random_direction(rng)};
}

Verdict chsh_pipeline() {
  Verdict v;
  Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ChshSettings s = random_settings(rng);
    const ComplexMatrix closed = (2.0 * ComplexMatrix::Identity(4, 4) - chsh_bell_operator(s).matrix()) / 4.0;
    worst = std::max(worst, oracle::max_dev(witness_from_farkas(chsh_farkas_vector(), chsh_config(s)).h.matrix(), closed));
  }
  const auto s = ChshSettings::canonical();
  const double value = witness_value(witness_from_farkas(chsh_farkas_vector(), chsh_config(s)), singlet());
  const double target = (1.0 - std::sqrt(2.0)) / 2.0;
  v.require(worst <= 1e-12, "elementwise identity");
  v.require(std::abs(value - target) <= 1e-9, "singlet value");
  v.detail << "max deviation " << worst << ", Tr(H singlet) = " << value;
  return v;
}

Verdict cone_generators() {
  Verdict v;
  const ConeGenerators gens(chsh_layout());
  const RealVector f = chsh_farkas_vector();
  // Integer arithmetic on the 0/1 generators and integer F entries.
  std::vector<long> fi(static_cast<std::size_t>(f.size()));
  for (Eigen::Index r = 0; r < f.size(); ++r) {
    v.require(f[r] == std::round(f[r]), "integer F entries");
    fi[static_cast<std::size_t>(r)] = std::lround(f[r]);
  }
  long lowest = std::numeric_limits<long>::max();
  std::uint64_t count = 0;
  for (const auto& a : enumerate_assignments(chsh_layout())) {
    const RealVector b = generator_vector(a, chsh_layout());
    long dot = 0;
    for (Eigen::Index r = 0; r < b.size(); ++r) dot += fi[static_cast<std::size_t>(r)] * std::lround(b[r]);
    lowest = std::min(lowest, dot);
    ++count;
  }
  v.require(count == 256 && gens.count() == 256, "256 generators");
  v.require(lowest >= 0, "F.B >= 0");
  v.detail << count << " generators, min F.B = " << lowest;
  return v;
}

Verdict membership_soundness() {
  Verdict v;
  Rng rng(1003);
  int feasible = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rho = random_separable({2, 2}, 1 + seed % 5, 3000 + seed).first;
    for (int c = 0; c < 5; ++c) {
      const auto config = oracle::random_qubit_config(rng, 2, 2);
      const auto ev = event_vector(rho, config);
      const auto r = cone_membership(ev, build_generators(config));
      const double residual = oracle::weights_residual(r, ev);
      if (r.status == MembershipStatus::feasible && residual <= 1e-9) ++feasible;
      worst = std::max(worst, r.status == MembershipStatus::feasible ? residual : 1.0);
    }
  }
  v.require(feasible == 500, "all feasible");
  v.detail << feasible << "/500 feasible, worst residual " << worst;
  return v;
}

Verdict certificate_soundness() {
  Verdict v;
  std::vector<std::pair<DensityMatrix, MeasurementConfig>> cases;
  const auto canonical = chsh_config(ChshSettings::canonical());
  for (double p : {0.72, 0.75, 0.8, 0.9, 1.0}) cases.emplace_back(werner(p), canonical);
  Rng rng(1004);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    cases.emplace_back(random_density({2, 2}, 4000 + seed), oracle::random_qubit_config(rng, 2, 2));
    cases.emplace_back(singlet(), oracle::random_qubit_config(rng, 2 + seed % 2, 2 + (seed / 2) % 2));
  }
  const auto found = violation_search(singlet(), {}, {8, 800}, 1004, 1);
  if (found.found) cases.emplace_back(singlet(), *found.config);

  int infeasible = 0;
  int sound = 0;
  double worst_gap = 0.0;
  double worst_min = std::numeric_limits<double>::infinity();
  for (const auto& [rho, config] : cases) {
    const auto ev = event_vector(rho, config);
    const auto r = cone_membership(ev, build_generators(config));
    if (r.status != MembershipStatus::infeasible) continue;
    ++infeasible;
    const RealVector& f = r.certificate->f;
    const bool verified = f.dot(ev.values) < -1e-9 && oracle::brute_min_generator(f, ev.layout) >= -1e-9;
    const Witness w = witness_from_farkas(*r.certificate, config);
    const double gap = std::abs(witness_value(w, rho) - r.certificate->violation);
    const double pmin = min_over_products(w).value;
    worst_gap = std::max(worst_gap, gap);
    worst_min = std::min(worst_min, pmin);
    if (verified && gap <= 1e-10 && pmin >= -1e-6) ++sound;
  }
  v.require(infeasible > 10, "enough infeasible verdicts");
  v.require(sound == infeasible, "all certificates sound");
  v.detail << sound << "/" << infeasible << " infeasible verdicts sound, worst |Tr(H rho) - F.P| " << worst_gap
           << ", lowest product minimum " << worst_min;
  return v;
}

Verdict werner_thresholds() {
  Verdict v;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-9) {
    const double mid = (lo + hi) / 2.0;
    (ppt_test(werner(mid), 0.0).is_ppt ? lo : hi) = mid;
  }
  const double ppt_flip = (lo + hi) / 2.0;

  const auto config = chsh_config(ChshSettings::canonical());
  const auto gens = build_generators(config);
  lo = 0.0;
  hi = 1.0;
  bool monotone = cone_membership(event_vector(werner(lo), config), gens).status == MembershipStatus::feasible &&
                  cone_membership(event_vector(werner(hi), config), gens).status == MembershipStatus::infeasible;
  while (hi - lo > 1e-4) {
    const double mid = (lo + hi) / 2.0;
    const auto s = cone_membership(event_vector(werner(mid), config), gens).status;
    if (s == MembershipStatus::marginal) {
      lo = hi = mid;
      break;
    }
    (s == MembershipStatus::feasible ? lo : hi) = mid;
  }
  const double lp_flip = (lo + hi) / 2.0;
  v.require(std::abs(ppt_flip - 1.0 / 3.0) <= 1e-6, "PPT flip");
  v.require(monotone, "endpoints");
  v.require(std::abs(lp_flip - 1.0 / std::sqrt(2.0)) <= 0.005, "LP flip");
  v.detail << "PPT flip " << ppt_flip << ", LP flip " << lp_flip;
  return v;
}

Verdict tomography() {
  Verdict v;
  double worst = 0.0;
  double worst_product = 0.0;
  for (auto dims : {BipartiteDims{2, 2}, BipartiteDims{2, 3}}) {
    const auto config = complete_config(dims.a, dims.b);
    const auto da = static_cast<Eigen::Index>(dims.a);
    const auto db = static_cast<Eigen::Index>(dims.b);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto rho = random_density(dims, 6000 + seed);
      const EventVector p = event_vector(rho, config);
      worst = std::max(worst, oracle::max_dev(reconstruct_state(p, config).matrix(), rho.matrix()));
      const auto product = reconstruct_state(product_event_vector(p.marg_a(), p.marg_b(), config.layout()), config);
      const ComplexMatrix expected =
          oracle::kron(oracle::trace_b(rho.matrix(), da, db), oracle::trace_a(rho.matrix(), da, db));
      worst_product = std::max(worst_product, oracle::max_dev(product.matrix(), expected));
    }
  }
  v.require(worst <= 1e-10, "roundtrip");
  v.require(worst_product <= 1e-10, "product marginals");
  v.detail << "max roundtrip deviation " << worst << ", product-marginal deviation " << worst_product;
  return v;
}

Verdict witness_bridge() {
  Verdict v;
  Rng rng(1007);
  double worst_op = 0.0;
  double worst_value = 0.0;
  for (auto dims : {BipartiteDims{2, 2}, BipartiteDims{2, 3}}) {
    const auto n = static_cast<Eigen::Index>(dims.total());
    const auto config = complete_config(dims.a, dims.b);
    for (int trial = 0; trial < 5; ++trial) {
      const Witness w{HermitianOperator(oracle::random_hermitian(rng, n)), dims, 0.0, ExternalProvenance{}};
      const auto d = witness_to_farkas(w, config);
      const ComplexMatrix h_prime = w.h.matrix() - d.c * ComplexMatrix::Identity(n, n);
      worst_op = std::max(worst_op, oracle::max_dev(witness_from_farkas(d.f, config).h.matrix(), h_prime));
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto rho = random_density(dims, 7000 + seed);
        const double lhs = d.f.dot(event_vector(rho, config).values);
        worst_value = std::max(worst_value, std::abs(lhs - (rho.matrix() * h_prime).trace().real()));
      }
    }
  }
  v.require(worst_op <= 1e-10, "operator roundtrip");
  v.require(worst_value <= 1e-10, "F.P = Tr(H' rho)");
  v.detail << "operator deviation " << worst_op << ", value deviation " << worst_value;
  return v;
}

Verdict search_efficacy() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto s = violation_search(singlet(), {}, {32, 1500}, 2024, 1);
  bool verified = false;
  double violation = 0.0;
  if (s.found) {
    const auto ev = event_vector(singlet(), *s.config);
    violation = s.certificate->f.dot(ev.values);
    verified = violation < -1e-9 && oracle::brute_min_generator(s.certificate->f, ev.layout) >= -1e-9;
  }
  const auto w = violation_search(werner(0.2), {}, {32, 1500}, 2024, 1);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(s.found && verified, "singlet certificate verified");
  v.require(violation <= -0.20, "violation <= -0.20");
  v.require(!w.found, "werner(0.2) none found");
  v.require(seconds < 120.0, "runtime");
  v.detail << "singlet violation " << violation << ", werner(0.2) " << (w.found ? "found" : "none-found") << ", "
           << seconds << " s single-threaded";
  return v;
}

Verdict fixture_sanity() {
  Verdict v;
  const DensityMatrix rho = tiles_upb_state();
  const auto pt = hermitian_eigensystem(oracle::transpose_b(rho.matrix(), 3, 3));
  double residual = 0.0;
  for (const auto& u : tiles_upb_vectors()) residual = std::max(residual, (rho.matrix() * u).norm());
  v.require(pt.values.minCoeff() >= -1e-12, "PPT");
  v.require(ppt_test(rho).is_ppt, "ppt_test agrees");
  v.require(residual <= 1e-12, "annihilates UPB");
  v.detail << "min PT eigenvalue " << pt.values.minCoeff() << ", UPB residual " << residual;
  return v;
}

struct Criterion {
  const char* name;
  std::function<Verdict()> run;
  double budget_s;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"CHSH witness pipeline", chsh_pipeline, 1.0},
      {"LHV cone generators", cone_generators, 1.0},
      {"membership soundness on separable states", membership_soundness, 60.0},
      {"certificate soundness", certificate_soundness, 600.0},
      {"Werner PPT and LP thresholds", werner_thresholds, 60.0},
      {"tomographic reconstruction", tomography, 600.0},
      {"witness to Farkas bridge", witness_bridge, 600.0},
      {"violation search", search_efficacy, 120.0},
      {"Tiles UPB fixture", fixture_sanity, 600.0},
  };
  std::size_t only = 0;
  if (argc > 1) only = std::stoul(argv[1]);
  if (only > criteria.size()) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criteria[i].budget_s) v.require(false, "time budget");
    all &= v.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].name << "): " << (v.pass ? "PASS" : "FAIL") << " - "
              << v.detail.str() << " [" << seconds << " s]\n";
  }
  return all ? 0 : 1;
}
