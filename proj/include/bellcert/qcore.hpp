#ifndef BELLCERT_QCORE_HPP
#define BELLCERT_QCORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-10;

/// Thrown when operand shapes do not agree.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input fails a numerical invariant (Hermiticity, trace, positivity,
/// consistency of a linear system).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { A, B };

struct BipartiteDims {
  std::size_t a = 0;
  std::size_t b = 0;

  std::size_t total() const { return a * b; }
  bool operator==(const BipartiteDims&) const = default;
};

/// Square Hermitian matrix. Inputs within tolerance of Hermitian are symmetrized as
/// (M + M^dagger)/2, so the stored matrix is exactly Hermitian.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& m, double tol = kDefaultTol);

  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  ComplexMatrix m_;
};

/// Bipartite state on C^dimA (x) C^dimB: unit trace, positive semidefinite.
class DensityMatrix {
 public:
  DensityMatrix(BipartiteDims dims, HermitianOperator op, double psd_tol = kDefaultTol);
  DensityMatrix(BipartiteDims dims, const ComplexMatrix& m, double psd_tol = kDefaultTol);

  BipartiteDims dims() const { return dims_; }
  std::size_t dim() const { return dims_.total(); }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }

 private:
  BipartiteDims dims_;
  HermitianOperator op_;
};

/// d^2 Hermitian operators: the d^2 - 1 generalized Gell-Mann matrices followed by
/// the identity. Members are pairwise orthogonal under Tr(A^dagger B).
struct HermitianBasis {
  std::size_t dim = 0;
  std::vector<HermitianOperator> operators;

  std::size_t size() const { return operators.size(); }
  const HermitianOperator& identity() const { return operators.back(); }
};

struct Eigensystem {
  RealVector values;       // descending
  ComplexMatrix vectors;   // orthonormal columns, paired with values
};

struct PsdCheck {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// Traces out `traced` and returns the operator on the remaining factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Side traced);

/// Transposes the indices of factor `side` only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Side side);

/// Eigen-decomposition with a canonical output:
///  - eigenvalues descending;
///  - within a degenerate cluster (gap below tol * max(1, ||H||)) the eigenspace basis is
///    rebuilt by ordered Gram-Schmidt of the projected standard basis vectors, then
///    sorted lexicographically;
///  - each eigenvector's largest-magnitude entry (first one on ties) is real positive.
Eigensystem hermitian_eigensystem(const HermitianOperator& h, double tol = kDefaultTol);

/// Validates Hermiticity of a raw matrix first; throws NumericalError otherwise.
Eigensystem hermitian_eigensystem(const ComplexMatrix& h, double tol = kDefaultTol);

PsdCheck is_positive_semidefinite(const HermitianOperator& h, double tol = kDefaultTol);

HermitianBasis hermitian_basis(std::size_t d);

/// Tr(A^dagger B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest absolute entry; used as the scale for relative tolerances.
double max_abs(const ComplexMatrix& m);
double max_abs(const RealVector& v);

/// Projector |v><v| (v is not normalized here).
ComplexMatrix outer(const ComplexVector& v);

/// Pauli matrices and a.sigma for real 3-vectors.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix bloch_operator(const Eigen::Vector3d& a);

}  // namespace bellcert

#endif  // BELLCERT_QCORE_HPP
