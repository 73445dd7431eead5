#include "oracles.hpp"

#include <doctest.h>

using namespace bellcert;

TEST_CASE("tensor product matches the index formula") {
  Rng rng(11);
  const ComplexMatrix a = oracle::random_matrix(rng, 2, 3);
  const ComplexMatrix b = oracle::random_matrix(rng, 3, 2);
  CHECK(oracle::max_dev(tensor_product(a, b), oracle::kron(a, b)) == 0.0);

  const ComplexVector u = rng.haar_vector(2);
  const ComplexVector v = rng.haar_vector(3);
  CHECK(oracle::max_dev(tensor_product(u, v), oracle::kron(u, v)) == 0.0);
}

TEST_CASE("partial trace and transpose match the index formulas") {
  Rng rng(12);
  for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
    const ComplexMatrix m = oracle::random_matrix(rng, da * db, da * db);
    const BipartiteDims dims{static_cast<std::size_t>(da), static_cast<std::size_t>(db)};
    CHECK(oracle::max_dev(partial_trace(m, dims, Side::B), oracle::trace_b(m, da, db)) < 1e-13);
    CHECK(oracle::max_dev(partial_trace(m, dims, Side::A), oracle::trace_a(m, da, db)) < 1e-13);
    CHECK(oracle::max_dev(partial_transpose(m, dims, Side::B), oracle::transpose_b(m, da, db)) == 0.0);
    // T_A is the full transpose composed with T_B.
    CHECK(oracle::max_dev(partial_transpose(m, dims, Side::A), oracle::transpose_b(m, da, db).transpose()) == 0.0);
    CHECK(oracle::max_dev(partial_transpose(partial_transpose(m, dims, Side::B), dims, Side::B), m) == 0.0);
  }
}

TEST_CASE("partial trace of a product") {
  Rng rng(13);
  const ComplexMatrix a = oracle::random_matrix(rng, 2, 2);
  const ComplexMatrix b = oracle::random_matrix(rng, 3, 3);
  const ComplexMatrix ab = tensor_product(a, b);
  CHECK(oracle::max_dev(partial_trace(ab, {2, 3}, Side::B), a * b.trace()) < 1e-13);
  CHECK(oracle::max_dev(partial_trace(ab, {2, 3}, Side::A), b * a.trace()) < 1e-13);
  CHECK_THROWS_AS(partial_trace(ab, {2, 2}, Side::A), DimensionMismatch);
}

TEST_CASE("singlet reduced states and partial transpose spectrum") {
  const ComplexMatrix s = singlet().matrix();
  CHECK(oracle::max_dev(partial_trace(s, {2, 2}, Side::B), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  const Eigensystem es = hermitian_eigensystem(partial_transpose(s, {2, 2}, Side::B));
  CHECK(es.values[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(es.values[3] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("HermitianOperator validation") {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 0.0;
  CHECK_THROWS_AS(HermitianOperator{m}, NumericalError);
  CHECK_THROWS_AS(HermitianOperator{ComplexMatrix::Zero(2, 3)}, DimensionMismatch);

  // Rounding-level asymmetry is repaired exactly.
  m << 1.0, Complex(0.5, 1e-14), Complex(0.5, 0.0), 2.0;
  const HermitianOperator h(m);
  CHECK(h.matrix() == h.matrix().adjoint());

  const auto sum = HermitianOperator::identity(2) + h * 2.0 - h;
  CHECK(oracle::max_dev(sum.matrix(), ComplexMatrix::Identity(2, 2) + h.matrix()) < 1e-15);
  CHECK(HermitianOperator::zero(3).trace() == 0.0);
}

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix({2, 2}, ComplexMatrix::Identity(4, 4) / 4.0));
  CHECK_THROWS_AS(DensityMatrix({2, 2}, ComplexMatrix::Identity(4, 4) / 2.0), NumericalError);
  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix({2, 2}, neg), NumericalError);
  CHECK_THROWS_AS(DensityMatrix({2, 3}, ComplexMatrix::Identity(4, 4) / 4.0), DimensionMismatch);
}

TEST_CASE("eigensystem reconstructs and is canonical") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianOperator h(oracle::random_hermitian(rng, 5));
    const Eigensystem es = hermitian_eigensystem(h);
    const ComplexMatrix& v = es.vectors;
    CHECK(oracle::max_dev(v * es.values.cast<Complex>().asDiagonal() * v.adjoint(), h.matrix()) < 1e-12);
    CHECK(oracle::max_dev(v.adjoint() * v, ComplexMatrix::Identity(5, 5)) < 1e-12);
    for (Eigen::Index k = 0; k + 1 < 5; ++k) CHECK(es.values[k] >= es.values[k + 1]);
    for (Eigen::Index k = 0; k < 5; ++k) {
      Eigen::Index arg = 0;
      v.col(k).cwiseAbs().maxCoeff(&arg);
      CHECK(v(arg, k).imag() == 0.0);
      CHECK(v(arg, k).real() > 0.0);
    }
  }
}

TEST_CASE("degenerate eigenspaces get a deterministic basis") {
  // A unitary conjugate of diag(1, 1, 0) has a two-dimensional top eigenspace.
  Rng rng(15);
  const ComplexMatrix q = oracle::random_matrix(rng, 3, 3).householderQr().householderQ();
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  const HermitianOperator h(ComplexMatrix(q * d * q.adjoint()));
  const Eigensystem first = hermitian_eigensystem(h);
  const Eigensystem second = hermitian_eigensystem(HermitianOperator(h.matrix() * 1.0));
  CHECK(oracle::max_dev(first.vectors, second.vectors) == 0.0);
  CHECK(oracle::max_dev(first.vectors * first.values.cast<Complex>().asDiagonal() * first.vectors.adjoint(),
                        h.matrix()) < 1e-12);

  // The identity keeps the standard basis.
  const Eigensystem id = hermitian_eigensystem(HermitianOperator::identity(4));
  CHECK(oracle::max_dev(id.vectors, ComplexMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("positive semidefinite check") {
  CHECK(is_positive_semidefinite(HermitianOperator::identity(3)).is_psd);
  const auto pz = is_positive_semidefinite(HermitianOperator(pauli_z()));
  CHECK_FALSE(pz.is_psd);
  CHECK(pz.min_eigenvalue == doctest::Approx(-1.0));
}

TEST_CASE("Gell-Mann basis") {
  for (std::size_t d : {2, 3, 4}) {
    const HermitianBasis basis = hermitian_basis(d);
    REQUIRE(basis.size() == d * d);
    CHECK(oracle::max_dev(basis.identity().matrix(), ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))) == 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const double expected = i != j ? 0.0 : (i + 1 == basis.size() ? static_cast<double>(d) : 2.0);
        CHECK(std::abs(hs_inner(basis.operators[i].matrix(), basis.operators[j].matrix()) - expected) < 1e-13);
      }
      if (i + 1 < basis.size()) CHECK(std::abs(basis.operators[i].trace()) < 1e-14);
    }
  }
  // Qubit ordering: symmetric, antisymmetric, diagonal.
  const HermitianBasis q = hermitian_basis(2);
  CHECK(oracle::max_dev(q.operators[0].matrix(), pauli_x()) == 0.0);
  CHECK(oracle::max_dev(q.operators[1].matrix(), pauli_y()) == 0.0);
  CHECK(oracle::max_dev(q.operators[2].matrix(), pauli_z()) < 1e-15);
  CHECK_THROWS(hermitian_basis(1));
}

TEST_CASE("Bloch operators") {
  const Eigen::Vector3d a(0.6, 0.0, 0.8);
  CHECK(oracle::max_dev(bloch_operator(a), 0.6 * pauli_x() + 0.8 * pauli_z()) < 1e-15);
  CHECK(oracle::max_dev(pauli_x() * pauli_y(), Complex(0.0, 1.0) * pauli_z()) == 0.0);
  CHECK(oracle::max_dev((ComplexMatrix::Identity(2, 2) + bloch_operator(a)) / 2.0, oracle::bloch_projector(a)) < 1e-15);
}

TEST_CASE("Rng is reproducible and stream-separated") {
  // Reference value of the splitmix64 finalizer on zero.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  Rng a(42, 3);
  Rng b(42, 3);
  Rng c(42, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs |= x != c.uniform();
  }
  CHECK(differs);

  Rng h(7);
  CHECK(h.haar_vector(6).norm() == doctest::Approx(1.0).epsilon(1e-15));

  Rng n(8);
  double mean = 0.0;
  double sq = 0.0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double x = n.normal();
    mean += x;
    sq += x * x;
  }
  mean /= kDraws;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(sq / kDraws - 1.0) < 0.02);
}
