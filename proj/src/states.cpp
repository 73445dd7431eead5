#include "bellcert/states.hpp"

#include "bellcert/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bellcert {

namespace {

ComplexVector basis_ket(std::size_t d, std::size_t i) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  v[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

ComplexVector ket3(double x0, double x1, double x2) {
  ComplexVector v(3);
  v << x0, x1, x2;
  return v;
}

}  // namespace

DensityMatrix SeparableEnsemble::density(BipartiteDims dims) const {
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(dims.total()),
                                          static_cast<Eigen::Index>(dims.total()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    rho += weights[i] * tensor_product(outer(factors[i].first), outer(factors[i].second));
  }
  rho /= rho.trace().real();
  return DensityMatrix(dims, rho);
}

DensityMatrix singlet() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[1] = 1.0 / std::sqrt(2.0);
  psi[2] = -1.0 / std::sqrt(2.0);
  return DensityMatrix({2, 2}, outer(psi));
}

DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner: p must lie in [0, 1]");
  const ComplexMatrix m = p * singlet().matrix() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix({2, 2}, m);
}

DensityMatrix maximally_mixed(BipartiteDims dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  if (n == 0) throw std::invalid_argument("maximally_mixed: empty dimension");
  return DensityMatrix(dims, ComplexMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n)));
}

DensityMatrix product_state(const ComplexVector& a, const ComplexVector& b) {
  const ComplexMatrix m = tensor_product(outer(a / a.norm()), outer(b / b.norm()));
  return DensityMatrix({static_cast<std::size_t>(a.size()), static_cast<std::size_t>(b.size())}, m);
}

std::pair<DensityMatrix, SeparableEnsemble> random_separable(BipartiteDims dims, std::size_t terms,
                                                             std::uint64_t seed) {
  if (terms == 0) throw std::invalid_argument("random_separable: need at least one term");
  if (dims.a == 0 || dims.b == 0) throw std::invalid_argument("random_separable: empty dimension");
  Rng rng(seed);
  SeparableEnsemble ens;
  for (std::size_t i = 0; i < terms; ++i) {
    ComplexVector a = rng.haar_vector(dims.a);
    ComplexVector b = rng.haar_vector(dims.b);
    ens.factors.emplace_back(std::move(a), std::move(b));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < terms; ++i) {
    ens.weights.push_back(rng.exponential());
    total += ens.weights.back();
  }
  for (double& w : ens.weights) w /= total;
  DensityMatrix rho = ens.density(dims);
  return {std::move(rho), std::move(ens)};
}

DensityMatrix random_density(BipartiteDims dims, std::uint64_t seed) {
  if (dims.a < 2 || dims.b < 2) throw std::invalid_argument("random_density: dims must be >= 2");
  Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(dims.total());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(dims, rho);
}

std::array<ComplexVector, 5> tiles_upb_vectors() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const ComplexVector e0 = basis_ket(3, 0);
  const ComplexVector e2 = basis_ket(3, 2);
  const ComplexVector s = ket3(1.0, 1.0, 1.0) / std::sqrt(3.0);
  return {
      tensor_product(e0, ComplexVector(ket3(r2, -r2, 0.0))),
      tensor_product(ComplexVector(ket3(r2, -r2, 0.0)), e2),
      tensor_product(e2, ComplexVector(ket3(0.0, r2, -r2))),
      tensor_product(ComplexVector(ket3(0.0, r2, -r2)), e0),
      tensor_product(s, s),
  };
}

DensityMatrix tiles_upb_state() {
  ComplexMatrix m = ComplexMatrix::Identity(9, 9);
  for (const auto& v : tiles_upb_vectors()) m -= outer(v);
  return DensityMatrix({3, 3}, ComplexMatrix(m / 4.0));
}

PptResult ppt_test(const DensityMatrix& rho, double tol) {
  const HermitianOperator pt(partial_transpose(rho.matrix(), rho.dims(), Side::B));
  const PsdCheck psd = is_positive_semidefinite(pt, tol);
  return {psd.is_psd, psd.min_eigenvalue};
}

}  // namespace bellcert
