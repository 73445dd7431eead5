#include "bellcert/witness.hpp"

#include "bellcert/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace bellcert {

ChshSettings ChshSettings::canonical() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Eigen::Vector3d(-r, 0.0, -r), Eigen::Vector3d(r, 0.0, -r), Eigen::Vector3d(1.0, 0.0, 0.0),
          Eigen::Vector3d(0.0, 0.0, 1.0)};
}

Witness witness_from_farkas(const RealVector& f, const MeasurementConfig& config) {
  const EventLayout& layout = config.layout();
  if (static_cast<std::size_t>(f.size()) != layout.size()) {
    throw DimensionMismatch("witness_from_farkas: F has " + std::to_string(f.size()) + " entries, layout needs " +
                            std::to_string(layout.size()));
  }
  const BipartiteDims dims = config.dims();
  const ComplexMatrix id_a = ComplexMatrix::Identity(static_cast<Eigen::Index>(dims.a), static_cast<Eigen::Index>(dims.a));
  const ComplexMatrix id_b = ComplexMatrix::Identity(static_cast<Eigen::Index>(dims.b), static_cast<Eigen::Index>(dims.b));

  // Collapse the joint block into sum_x E^A_x (x) (sum_y F_xy E^B_y) to save products.
  std::vector<const ComplexMatrix*> alice_ops;
  std::vector<const ComplexMatrix*> bob_ops;
  for (const auto& m : config.alice())
    for (const auto& e : m.elements()) alice_ops.push_back(&e.matrix());
  for (const auto& m : config.bob())
    for (const auto& e : m.elements()) bob_ops.push_back(&e.matrix());
  const std::size_t na = alice_ops.size();
  const std::size_t nb = bob_ops.size();

  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(dims.total()), static_cast<Eigen::Index>(dims.total()));
  for (std::size_t x = 0; x < na; ++x) {
    ComplexMatrix bob_side = f[static_cast<Eigen::Index>(na * nb + x)] * id_b;
    for (std::size_t y = 0; y < nb; ++y) bob_side += f[static_cast<Eigen::Index>(x * nb + y)] * *bob_ops[y];
    h += tensor_product(*alice_ops[x], bob_side);
  }
  ComplexMatrix bob_marg = ComplexMatrix::Zero(static_cast<Eigen::Index>(dims.b), static_cast<Eigen::Index>(dims.b));
  for (std::size_t y = 0; y < nb; ++y) bob_marg += f[static_cast<Eigen::Index>(na * nb + na + y)] * *bob_ops[y];
  h += tensor_product(id_a, bob_marg);
  return Witness{HermitianOperator(h), dims, 0.0, FarkasProvenance{f, config}};
}

Witness witness_from_farkas(const FarkasCertificate& cert, const MeasurementConfig& config) {
  if (!(cert.layout == config.layout())) throw DimensionMismatch("witness_from_farkas: certificate layout mismatch");
  return witness_from_farkas(cert.f, config);
}

double witness_value(const Witness& w, const DensityMatrix& rho) {
  if (!(w.dims == rho.dims())) throw DimensionMismatch("witness_value: witness and state dims differ");
  const Complex v = trace_of_product(w.h.matrix(), rho.matrix());
  if (std::abs(v.imag()) > 1e-12) throw NumericalError("witness_value: trace has imaginary part");
  return v.real();
}

EventLayout chsh_layout() { return EventLayout{{2, 2}, {2, 2}}; }

RealVector chsh_farkas_vector() {
  const EventLayout layout = chsh_layout();
  RealVector f = RealVector::Zero(static_cast<Eigen::Index>(layout.size()));
  // measurement 0 is a (Alice) / b (Bob), measurement 1 is a' / b'; outcome 0 is +1.
  auto joint = [&](std::size_t i, std::size_t j) { return static_cast<Eigen::Index>(layout.joint_index(i, 0, j, 0)); };
  f[joint(0, 0)] = -1.0;  // p_ab
  f[joint(1, 1)] = -1.0;  // p_a'b'
  f[joint(1, 0)] = 1.0;   // p_a'b
  f[joint(0, 1)] = -1.0;  // p_ab'
  f[static_cast<Eigen::Index>(layout.marg_a_index(0, 0))] = 1.0;  // p_a
  f[static_cast<Eigen::Index>(layout.marg_b_index(1, 0))] = 1.0;  // p_b'
  return f;
}

MeasurementConfig chsh_config(const ChshSettings& s) {
  return MeasurementConfig({projective_from_bloch(s.a), projective_from_bloch(s.a_prime)},
                           {projective_from_bloch(s.b), projective_from_bloch(s.b_prime)});
}

HermitianOperator chsh_bell_operator(const ChshSettings& s) {
  for (const auto* v : {&s.a, &s.a_prime, &s.b, &s.b_prime}) {
    if (std::abs(v->norm() - 1.0) > kDefaultTol) throw std::invalid_argument("chsh_bell_operator: directions must be unit vectors");
  }
  const ComplexMatrix m = tensor_product(bloch_operator(s.a), bloch_operator(s.b + s.b_prime)) +
                          tensor_product(bloch_operator(s.a_prime), bloch_operator(s.b_prime - s.b));
  return HermitianOperator(m);
}

Witness chsh_witness(const ChshSettings& s) {
  const HermitianOperator bell = chsh_bell_operator(s);
  const ComplexMatrix h = (2.0 * ComplexMatrix::Identity(4, 4) - bell.matrix()) / 4.0;
  return Witness{HermitianOperator(h), {2, 2}, 0.0, s};
}

namespace {

ComplexMatrix contract_b(const ComplexMatrix& h, BipartiteDims dims, const ComplexVector& b) {
  const auto da = static_cast<Eigen::Index>(dims.a);
  const auto db = static_cast<Eigen::Index>(dims.b);
  ComplexMatrix out(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) out(i, j) = b.dot(h.block(i * db, j * db, db, db) * b);
  return (out + out.adjoint()) * 0.5;
}

ComplexMatrix contract_a(const ComplexMatrix& h, BipartiteDims dims, const ComplexVector& a) {
  const auto da = static_cast<Eigen::Index>(dims.a);
  const auto db = static_cast<Eigen::Index>(dims.b);
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) out += std::conj(a[i]) * a[j] * h.block(i * db, j * db, db, db);
  return (out + out.adjoint()) * 0.5;
}

std::pair<double, ComplexVector> lowest(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

struct SeeSawRun {
  double value = std::numeric_limits<double>::infinity();
  ComplexVector a;
  ComplexVector b;
};

SeeSawRun see_saw(const ComplexMatrix& h, BipartiteDims dims, const ProductMinimumOptions& opt, std::size_t restart) {
  Rng rng(opt.seed, restart);
  SeeSawRun run;
  run.b = rng.haar_vector(dims.b);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    run.a = lowest(contract_b(h, dims, run.b)).second;
    auto [value, b] = lowest(contract_a(h, dims, run.a));
    run.b = b;
    run.value = value;
    if (std::abs(previous - value) < opt.convergence_tol) break;
    previous = value;
  }
  return run;
}

ComplexVector qubit_from_bloch(double z, double phi) {
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  ComplexVector v(2);
  v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  return v;
}

double lowest_2x2(const ComplexMatrix& m) {
  const double p = m(0, 0).real();
  const double q = m(1, 1).real();
  return 0.5 * (p + q - std::sqrt((p - q) * (p - q) + 4.0 * std::norm(m(0, 1))));
}

// Fibonacci-sphere grid over one qubit, the other qubit minimized exactly.
std::pair<double, std::pair<ComplexVector, ComplexVector>> qubit_grid(const ComplexMatrix& h, std::size_t n) {
  const BipartiteDims dims{2, 2};
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = std::numeric_limits<double>::infinity();
  std::pair<ComplexVector, ComplexVector> arg;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const ComplexVector v = qubit_from_bloch(z, golden * static_cast<double>(i));
    const double va = lowest_2x2(contract_a(h, dims, v));
    if (va < best) {
      best = va;
      arg = {v, lowest(contract_a(h, dims, v)).second};
    }
    const double vb = lowest_2x2(contract_b(h, dims, v));
    if (vb < best) {
      best = vb;
      arg = {lowest(contract_b(h, dims, v)).second, v};
    }
  }
  return {best, arg};
}

}  // namespace

ProductMinimum min_over_products(const Witness& w, const ProductMinimumOptions& options) {
  if (w.h.dim() != w.dims.total()) throw DimensionMismatch("min_over_products: witness dims inconsistent");
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  std::vector<SeeSawRun> runs(restarts);
  const unsigned workers = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(restarts)));
  auto work = [&](unsigned k) {
    for (std::size_t r = k; r < restarts; r += workers) runs[r] = see_saw(w.h.matrix(), w.dims, options, r);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work, k);
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (runs[r].value < runs[best].value) best = r;

  ProductMinimum out{runs[best].value, runs[best].a, runs[best].b, std::nullopt, "see-saw"};
  if (w.dims == BipartiteDims{2, 2} && options.grid_points > 0) {
    auto [grid, arg] = qubit_grid(w.h.matrix(), options.grid_points);
    out.grid_value = grid;
    out.certification = "see-saw+grid";
    if (grid < out.value) {
      out.value = grid;
      out.a = arg.first;
      out.b = arg.second;
    }
  }
  return out;
}

namespace {

// Eigenvalue weights lambda_ik with sigma_i = sum_k lambda_ik pi_ik for every non-identity
// basis operator sigma_i, read off the configuration's projectors.
std::vector<std::vector<double>> spectral_weights(const HermitianBasis& basis, const std::vector<POVM>& side) {
  if (side.size() + 1 != basis.size()) {
    throw NumericalError("witness_to_farkas: configuration is not a complete measurement set");
  }
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < side.size(); ++i) {
    const ComplexMatrix& sigma = basis.operators[i].matrix();
    ComplexMatrix rebuilt = ComplexMatrix::Zero(sigma.rows(), sigma.cols());
    std::vector<double> weights;
    for (const auto& pi : side[i].elements()) {
      const double rank = pi.trace();
      const double lambda = rank > 0.0 ? hs_inner(pi.matrix(), sigma).real() / rank : 0.0;
      weights.push_back(lambda);
      rebuilt += lambda * pi.matrix();
    }
    if (max_abs(ComplexMatrix(rebuilt - sigma)) > 1e-10) {
      throw NumericalError("witness_to_farkas: measurement " + std::to_string(i) +
                           " does not resolve its basis operator");
    }
    out.push_back(std::move(weights));
  }
  return out;
}

}  // namespace

FarkasDecomposition witness_to_farkas(const Witness& w, const MeasurementConfig& complete) {
  if (!(w.dims == complete.dims())) throw DimensionMismatch("witness_to_farkas: dims differ");
  const HermitianBasis ba = hermitian_basis(w.dims.a);
  const HermitianBasis bb = hermitian_basis(w.dims.b);
  const auto la = spectral_weights(ba, complete.alice());
  const auto lb = spectral_weights(bb, complete.bob());
  const BasisExpansion mu = expand_in_basis(w.h, ba, bb);
  const EventLayout& layout = complete.layout();

  FarkasDecomposition out{RealVector::Zero(static_cast<Eigen::Index>(layout.size())), mu.c};
  for (std::size_t i = 0; i < la.size(); ++i) {
    for (std::size_t k = 0; k < la[i].size(); ++k) {
      out.f[static_cast<Eigen::Index>(layout.marg_a_index(i, k))] = mu.alice[static_cast<Eigen::Index>(i)] * la[i][k];
      for (std::size_t j = 0; j < lb.size(); ++j)
        for (std::size_t l = 0; l < lb[j].size(); ++l)
          out.f[static_cast<Eigen::Index>(layout.joint_index(i, k, j, l))] =
              mu.joint(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * la[i][k] * lb[j][l];
    }
  }
  for (std::size_t j = 0; j < lb.size(); ++j)
    for (std::size_t l = 0; l < lb[j].size(); ++l)
      out.f[static_cast<Eigen::Index>(layout.marg_b_index(j, l))] = mu.bob[static_cast<Eigen::Index>(j)] * lb[j][l];
  return out;
}

WitnessReport verify_witness(const Witness& w, const DensityMatrix& rho, const ProductMinimumOptions& options) {
  WitnessReport report;
  report.value = witness_value(w, rho);
  report.product_minimum = min_over_products(w, options);
  report.detects = report.value < -1e-9;
  report.valid = report.product_minimum.value >= -1e-6;
  report.pass = report.detects && report.valid;
  return report;
}

}  // namespace bellcert
