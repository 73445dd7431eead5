#ifndef BELLCERT_TESTS_ORACLES_HPP
#define BELLCERT_TESTS_ORACLES_HPP

// Reference computations for the tests. Everything here is written from index
// formulas with plain loops so it shares no code path with the library.

#include "bellcert/certify.hpp"
#include "bellcert/rng.hpp"
#include "bellcert/states.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

using namespace bellcert;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < b.rows(); ++k)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// (Tr_B m)_{ij} = sum_k m_{ik, jk};  (Tr_A m)_{kl} = sum_i m_{ik, il}.
inline ComplexMatrix trace_b(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline ComplexMatrix trace_a(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index k = 0; k < db; ++k)
    for (Eigen::Index l = 0; l < db; ++l)
      for (Eigen::Index i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

// m^{T_B}_{ik, jl} = m_{il, jk}.
inline ComplexMatrix transpose_b(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = 0; l < db; ++l) out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
  return out;
}

inline double max_dev(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline ComplexMatrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, Eigen::Index d) {
  const ComplexMatrix g = random_matrix(rng, d, d);
  return (g + g.adjoint()) / 2.0;
}

inline Eigen::Vector3d random_direction(Rng& rng) {
  const double z = 1.0 - 2.0 * rng.uniform();
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double s = std::sqrt(1.0 - z * z);
  return {s * std::cos(phi), s * std::sin(phi), z};
}

// (1 + a.sigma)/2 written out entrywise.
inline ComplexMatrix bloch_projector(const Eigen::Vector3d& a) {
  ComplexMatrix m(2, 2);
  m(0, 0) = (1.0 + a.z()) / 2.0;
  m(1, 1) = (1.0 - a.z()) / 2.0;
  m(0, 1) = Complex(a.x(), -a.y()) / 2.0;
  m(1, 0) = Complex(a.x(), a.y()) / 2.0;
  return m;
}

inline MeasurementConfig random_qubit_config(Rng& rng, std::size_t na, std::size_t nb) {
  std::vector<POVM> alice;
  std::vector<POVM> bob;
  for (std::size_t i = 0; i < na; ++i) alice.push_back(projective_from_bloch(random_direction(rng)));
  for (std::size_t j = 0; j < nb; ++j) bob.push_back(projective_from_bloch(random_direction(rng)));
  return MeasurementConfig(std::move(alice), std::move(bob));
}

// Event vector from the definition: joint block (i,k,j,l) lexicographic, then marginals.
inline std::vector<double> event_vector(const DensityMatrix& rho, const MeasurementConfig& c) {
  const auto ia = ComplexMatrix::Identity(static_cast<Eigen::Index>(rho.dims().a), static_cast<Eigen::Index>(rho.dims().a));
  const auto ib = ComplexMatrix::Identity(static_cast<Eigen::Index>(rho.dims().b), static_cast<Eigen::Index>(rho.dims().b));
  auto prob = [&](const ComplexMatrix& op) { return (rho.matrix() * op).trace().real(); };
  std::vector<double> v;
  for (const auto& ma : c.alice())
    for (const auto& ea : ma.elements())
      for (const auto& mb : c.bob())
        for (const auto& eb : mb.elements()) v.push_back(prob(kron(ea.matrix(), eb.matrix())));
  for (const auto& ma : c.alice())
    for (const auto& ea : ma.elements()) v.push_back(prob(kron(ea.matrix(), ib)));
  for (const auto& mb : c.bob())
    for (const auto& eb : mb.elements()) v.push_back(prob(kron(ia, eb.matrix())));
  return v;
}

// min over all 0/1 assignments of f . B, by explicit construction of every B.
inline double brute_min_generator(const RealVector& f, const EventLayout& layout) {
  const std::size_t na = layout.bits_a();
  const std::size_t nb = layout.bits_b();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (na + nb)); ++m) {
    std::vector<int> a(na);
    std::vector<int> b(nb);
    for (std::size_t x = 0; x < na; ++x) a[x] = static_cast<int>((m >> (na + nb - 1 - x)) & 1U);
    for (std::size_t y = 0; y < nb; ++y) b[y] = static_cast<int>((m >> (nb - 1 - y)) & 1U);
    double s = 0.0;
    Eigen::Index r = 0;
    for (std::size_t x = 0; x < na; ++x)
      for (std::size_t y = 0; y < nb; ++y) s += f[r++] * a[x] * b[y];
    for (std::size_t x = 0; x < na; ++x) s += f[r++] * a[x];
    for (std::size_t y = 0; y < nb; ++y) s += f[r++] * b[y];
    best = std::min(best, s);
  }
  return best;
}

// ||sum q_lambda B_lambda - p||_inf, and whether all weights are non-negative.
inline double weights_residual(const MembershipResult& r, const EventVector& p) {
  RealVector acc = RealVector::Zero(p.values.size());
  const ConeGenerators gens(p.layout);
  for (const auto& [lambda, q] : r.weights) {
    if (q < 0.0) return std::numeric_limits<double>::infinity();
    acc += q * gens.column(lambda);
  }
  return (acc - p.values).cwiseAbs().maxCoeff();
}

// The singlet as a vector, written out.
inline ComplexVector singlet_vector() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace oracle

#endif  // BELLCERT_TESTS_ORACLES_HPP
