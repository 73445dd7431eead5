#include "bellcert/certify.hpp"

#include "bellcert/nelder_mead.hpp"
#include "bellcert/rng.hpp"
#include "bellcert/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace bellcert {

std::string to_string(MembershipStatus status) {
  switch (status) {
    case MembershipStatus::feasible:
      return "feasible";
    case MembershipStatus::infeasible:
      return "infeasible";
    case MembershipStatus::marginal:
      return "marginal";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kExplicitVerifyLimit = std::uint64_t{1} << 22;

double weights_residual(const EventVector& p, const ConeGenerators& gens,
                        const std::vector<std::pair<std::uint64_t, double>>& weights) {
  RealVector r = p.values;
  for (const auto& [lambda, q] : weights) r -= q * gens.column(lambda);
  return max_abs(r);
}

}  // namespace

MembershipResult cone_membership(const EventVector& p, const ConeGenerators& gens, double tol) {
  if (!(p.layout == gens.layout())) throw DimensionMismatch("cone_membership: event vector and generators differ in layout");
  MembershipResult out;
  const double norm1 = p.values.cwiseAbs().sum();
  out.threshold = tol * (norm1 > 0.0 ? norm1 : 1.0);

  const ConeLpSolution lp = solve_cone_lp(gens, p.values);
  out.slack = lp.slack;
  out.iterations = lp.iterations;
  if (!lp.converged) {
    out.note = "simplex iteration limit reached";
    return out;
  }

  if (lp.slack <= out.threshold) {
    out.residual = weights_residual(p, gens, lp.weights);
    if (out.residual <= out.threshold) {
      out.status = MembershipStatus::feasible;
      out.weights = lp.weights;
    } else {
      out.note = "weights do not reproduce the event vector within tolerance";
    }
    return out;
  }
  if (lp.slack <= 10.0 * out.threshold) {
    out.note = "slack lies inside the marginal band";
    return out;
  }

  const double scale = max_abs(lp.dual);
  if (!(scale > 0.0)) {
    out.note = "degenerate dual solution";
    return out;
  }
  FarkasCertificate cert{p.layout, RealVector(-lp.dual / scale), 0.0, 0.0};
  const CertificateCheck check = verify_certificate(cert.f, gens, p);
  cert.violation = check.violation;
  cert.min_generator_value = check.min_generator_value;
  if (!check.valid) {
    out.note = "extracted certificate failed re-verification";
    return out;
  }
  out.status = MembershipStatus::infeasible;
  out.certificate = std::move(cert);
  return out;
}

CertificateCheck verify_certificate(const RealVector& f, const ConeGenerators& gens, const EventVector& p) {
  if (!(p.layout == gens.layout()) || static_cast<std::size_t>(f.size()) != gens.rows()) {
    throw DimensionMismatch("verify_certificate: layout mismatch");
  }
  CertificateCheck out;
  out.violation = f.dot(p.values);
  if (gens.count() <= kExplicitVerifyLimit) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& a : enumerate_assignments(gens.layout())) {
      lowest = std::min(lowest, f.dot(generator_vector(a, gens.layout())));
    }
    out.min_generator_value = lowest;
  } else {
    out.min_generator_value = gens.minimize(f).value;
  }
  out.valid = out.violation < -kCertificateMargin && out.min_generator_value >= -kCertificateMargin;
  return out;
}

CertificateCheck verify_certificate(const FarkasCertificate& cert, const ConeGenerators& gens,
                                    const EventVector& p) {
  if (!(cert.layout == gens.layout())) throw DimensionMismatch("verify_certificate: layout mismatch");
  return verify_certificate(cert.f, gens, p);
}

std::size_t parameter_count(std::size_t dim, std::size_t measurements) {
  return dim == 2 ? 2 * measurements : measurements * dim * (dim - 1);
}

std::vector<POVM> measurements_from_parameters(std::size_t dim, std::size_t measurements, std::size_t outcomes,
                                               const double* params) {
  std::vector<POVM> out;
  const auto d = static_cast<Eigen::Index>(dim);
  for (std::size_t m = 0; m < measurements; ++m) {
    if (dim == 2) {
      const double theta = params[2 * m];
      const double phi = params[2 * m + 1];
      const Eigen::Vector3d a(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
      out.push_back(projective_from_bloch(a / a.norm()));
      continue;
    }
    const double* p = params + m * dim * (dim - 1);
    ComplexMatrix u = ComplexMatrix::Identity(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = r + 1; c < d; ++c) {
        const double theta = *p++;
        const double phi = *p++;
        ComplexMatrix g = ComplexMatrix::Identity(d, d);
        const Complex e = std::polar(1.0, phi);
        g(r, r) = std::cos(theta);
        g(c, c) = std::cos(theta);
        g(r, c) = -std::conj(e) * std::sin(theta);
        g(c, r) = e * std::sin(theta);
        u = u * g;
      }
    }
    std::vector<HermitianOperator> elements;
    for (std::size_t k = 0; k + 1 < outcomes; ++k) elements.emplace_back(outer(u.col(static_cast<Eigen::Index>(k))));
    ComplexMatrix rest = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = static_cast<Eigen::Index>(outcomes) - 1; k < d; ++k) rest += outer(u.col(k));
    elements.emplace_back(rest);
    out.push_back(validate_povm(std::move(elements), 1e-9));
  }
  return out;
}

MeasurementConfig config_from_parameters(BipartiteDims dims, const SearchShape& shape,
                                         const std::vector<double>& params) {
  const std::size_t na = parameter_count(dims.a, shape.alice_measurements);
  if (params.size() != na + parameter_count(dims.b, shape.bob_measurements)) {
    throw std::invalid_argument("config_from_parameters: wrong number of parameters");
  }
  return MeasurementConfig(
      measurements_from_parameters(dims.a, shape.alice_measurements, shape.alice_outcomes, params.data()),
      measurements_from_parameters(dims.b, shape.bob_measurements, shape.bob_outcomes, params.data() + na));
}

void validate_shape(BipartiteDims dims, const SearchShape& shape) {
  if (shape.alice_measurements == 0 || shape.bob_measurements == 0) {
    throw std::invalid_argument("search shape needs at least one measurement per side");
  }
  if (shape.alice_outcomes < 2 || shape.alice_outcomes > dims.a || shape.bob_outcomes < 2 ||
      shape.bob_outcomes > dims.b) {
    throw std::invalid_argument("search shape: outcomes per measurement must lie in [2, local dimension]");
  }
  const std::size_t bits = shape.alice_measurements * shape.alice_outcomes + shape.bob_measurements * shape.bob_outcomes;
  if (bits > kMaxAssignmentBits) throw ScenarioTooLarge("search shape exceeds the enumeration guard");
}

namespace {

struct RestartOutcome {
  std::vector<double> params;
  double slack = 0.0;
  std::size_t evaluations = 0;
  std::optional<FarkasCertificate> certificate;
};

std::vector<double> random_start(BipartiteDims dims, const SearchShape& shape, Rng& rng) {
  std::vector<double> x;
  auto side = [&](std::size_t dim, std::size_t measurements) {
    for (std::size_t m = 0; m < measurements; ++m) {
      if (dim == 2) {
        x.push_back(std::acos(1.0 - 2.0 * rng.uniform()));
        x.push_back(2.0 * std::numbers::pi * rng.uniform());
      } else {
        for (std::size_t t = 0; t < dim * (dim - 1); ++t) x.push_back(2.0 * std::numbers::pi * rng.uniform());
      }
    }
  };
  side(dims.a, shape.alice_measurements);
  side(dims.b, shape.bob_measurements);
  return x;
}

RestartOutcome run_restart(const DensityMatrix& rho, const SearchShape& shape, const ConeGenerators& gens,
                           const SearchBudget& budget, std::uint64_t seed, std::size_t restart) {
  Rng rng(seed, restart);
  const BipartiteDims dims = rho.dims();
  auto objective = [&](const std::vector<double>& x) {
    const EventVector p = event_vector(rho, config_from_parameters(dims, shape, x));
    return -solve_cone_lp(gens, p.values).slack;
  };
  NelderMeadOptions opt;
  opt.initial_step = 0.4;
  opt.max_evaluations = budget.evaluations_per_restart;
  opt.f_tol = 1e-12;
  const NelderMeadResult nm = nelder_mead(objective, random_start(dims, shape, rng), opt);

  RestartOutcome out;
  out.params = nm.x;
  out.slack = -nm.value;
  out.evaluations = nm.evaluations;
  const EventVector p = event_vector(rho, config_from_parameters(dims, shape, nm.x));
  const MembershipResult verdict = cone_membership(p, gens);
  if (verdict.status == MembershipStatus::infeasible) out.certificate = verdict.certificate;
  return out;
}

}  // namespace

SearchResult violation_search(const DensityMatrix& rho, const SearchShape& shape, const SearchBudget& budget,
                              std::uint64_t seed, unsigned threads) {
  validate_shape(rho.dims(), shape);
  if (budget.restarts == 0) throw std::invalid_argument("violation_search: need at least one restart");
  EventLayout layout;
  layout.alice_outcomes.assign(shape.alice_measurements, shape.alice_outcomes);
  layout.bob_outcomes.assign(shape.bob_measurements, shape.bob_outcomes);
  const ConeGenerators gens(layout);

  std::vector<RestartOutcome> outcomes(budget.restarts);
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(budget.restarts)));
  auto work = [&](unsigned w) {
    for (std::size_t r = w; r < budget.restarts; r += workers) {
      outcomes[r] = run_restart(rho, shape, gens, budget, seed, r);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  SearchResult result;
  std::optional<std::size_t> best_cert;
  std::size_t best_any = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const auto& o = outcomes[r];
    result.evaluations += o.evaluations;
    if (o.slack > outcomes[best_any].slack) best_any = r;
    if (o.certificate && (!best_cert || o.certificate->violation < outcomes[*best_cert].certificate->violation)) {
      best_cert = r;
    }
  }
  result.best_slack = outcomes[best_any].slack;
  const std::size_t chosen = best_cert.value_or(best_any);
  result.best_restart = chosen;
  result.parameters = outcomes[chosen].params;
  result.config = config_from_parameters(rho.dims(), shape, outcomes[chosen].params);
  if (best_cert) {
    result.found = true;
    result.certificate = outcomes[chosen].certificate;
  }
  return result;
}

}  // namespace bellcert
