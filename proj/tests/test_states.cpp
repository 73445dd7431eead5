#include "oracles.hpp"

#include <doctest.h>

using namespace bellcert;

TEST_CASE("named states") {
  const ComplexMatrix psi = oracle::singlet_vector() * oracle::singlet_vector().adjoint();
  CHECK(oracle::max_dev(singlet().matrix(), psi) < 1e-15);

  const double p = 0.37;
  const ComplexMatrix w = p * psi + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  CHECK(oracle::max_dev(werner(p).matrix(), w) < 1e-15);
  CHECK(oracle::max_dev(werner(1.0).matrix(), psi) < 1e-15);
  CHECK_THROWS_AS(werner(1.1), std::invalid_argument);
  CHECK_THROWS_AS(werner(-0.1), std::invalid_argument);

  const DensityMatrix mm = maximally_mixed({2, 3});
  CHECK(oracle::max_dev(mm.matrix(), ComplexMatrix::Identity(6, 6) / 6.0) < 1e-15);
}

TEST_CASE("product states are normalized") {
  ComplexVector a(2);
  a << 1.0, Complex(0.0, 1.0);
  ComplexVector b(3);
  b << 2.0, 0.0, 0.0;
  const DensityMatrix rho = product_state(a, b);
  CHECK(rho.dims() == BipartiteDims{2, 3});
  const ComplexVector ab = oracle::kron(a, b) / std::sqrt(8.0);
  CHECK(oracle::max_dev(rho.matrix(), ab * ab.adjoint()) < 1e-15);
}

TEST_CASE("random separable states") {
  const auto [rho, ens] = random_separable({2, 3}, 5, 99);
  double total = 0.0;
  ComplexMatrix sum = ComplexMatrix::Zero(6, 6);
  REQUIRE(ens.weights.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(ens.weights[i] >= 0.0);
    total += ens.weights[i];
    const auto& [a, b] = ens.factors[i];
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-14));
    const ComplexVector ab = oracle::kron(a, b);
    sum += ens.weights[i] * ab * ab.adjoint();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(oracle::max_dev(rho.matrix(), sum) < 1e-14);

  const auto again = random_separable({2, 3}, 5, 99).first;
  CHECK(oracle::max_dev(rho.matrix(), again.matrix()) == 0.0);
  CHECK(oracle::max_dev(rho.matrix(), random_separable({2, 3}, 5, 100).first.matrix()) > 1e-3);
}

TEST_CASE("random separable states are PPT") {
  for (auto dims : {BipartiteDims{2, 2}, BipartiteDims{2, 3}}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto rho = random_separable(dims, 1 + seed % 6, seed).first;
      const auto r = ppt_test(rho);
      CHECK(r.is_ppt);
      // Independent check of the partial transpose.
      const auto es = hermitian_eigensystem(oracle::transpose_b(rho.matrix(), static_cast<Eigen::Index>(dims.a),
                                                                static_cast<Eigen::Index>(dims.b)));
      CHECK(r.min_eigenvalue == doctest::Approx(es.values.minCoeff()).epsilon(1e-9));
    }
  }
}

TEST_CASE("random density matrices") {
  const DensityMatrix r = random_density({3, 3}, 4);
  CHECK(r.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(is_positive_semidefinite(r.op()).is_psd);
  CHECK(oracle::max_dev(r.matrix(), random_density({3, 3}, 4).matrix()) == 0.0);
}

TEST_CASE("singlet fails the PPT test") {
  const auto r = ppt_test(singlet());
  CHECK_FALSE(r.is_ppt);
  CHECK(std::abs(r.min_eigenvalue + 0.5) <= 1e-12);
}

TEST_CASE("Werner PPT flip at one third") {
  CHECK(ppt_test(werner(0.33)).is_ppt);
  CHECK_FALSE(ppt_test(werner(0.34)).is_ppt);
  // min PT eigenvalue is (1 - 3p)/4: linear, so the bisection boundary is sharp.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-9) {
    const double mid = (lo + hi) / 2.0;
    (ppt_test(werner(mid), 0.0).is_ppt ? lo : hi) = mid;
  }
  CHECK(std::abs(lo - 1.0 / 3.0) <= 1e-6);
  CHECK(ppt_test(werner(0.2)).min_eigenvalue == doctest::Approx((1.0 - 0.6) / 4.0).epsilon(1e-12));
}

TEST_CASE("Tiles UPB") {
  const auto v = tiles_upb_vectors();
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(v[i].norm() == doctest::Approx(1.0).epsilon(1e-15));
    for (std::size_t j = i + 1; j < 5; ++j) CHECK(std::abs(v[i].dot(v[j])) < 1e-15);
  }
  const DensityMatrix rho = tiles_upb_state();
  for (const auto& u : v) CHECK((rho.matrix() * u).norm() <= 1e-12);
  const auto ppt = ppt_test(rho);
  CHECK(ppt.is_ppt);
  CHECK(ppt.min_eigenvalue >= -1e-12);
  // Rank four, eigenvalues 1/4.
  const auto es = hermitian_eigensystem(rho.op());
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(es.values[k] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(std::abs(es.values[4]) < 1e-14);
}
