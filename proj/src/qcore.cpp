#include "bellcert/qcore.hpp"

#include <algorithm>
#include <cmath>

namespace bellcert {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
  }
}

void require_bipartite(const ComplexMatrix& m, BipartiteDims dims, const char* what) {
  require_square(m, what);
  if (dims.a == 0 || dims.b == 0 || static_cast<std::size_t>(m.rows()) != dims.total()) {
    throw DimensionMismatch(std::string(what) + ": matrix size " + std::to_string(m.rows()) +
                            " does not match dims " + std::to_string(dims.a) + "x" +
                            std::to_string(dims.b));
  }
}

// Lexicographic comparison on (re, im) of each entry, with a tolerance so rounding noise
// does not reorder vectors that agree to working precision.
bool lex_greater(const ComplexVector& u, const ComplexVector& v) {
  constexpr double eps = 1e-9;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i].real() - v[i].real()) > eps) return u[i].real() > v[i].real();
    if (std::abs(u[i].imag() - v[i].imag()) > eps) return u[i].imag() > v[i].imag();
  }
  return false;
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
  double biggest = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) biggest = std::max(biggest, std::abs(v[i]));
  if (biggest == 0.0) return;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= biggest - 1e-9) {
      pivot = i;
      break;
    }
  }
  const Complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  v *= phase;
  v[pivot] = Complex(v[pivot].real(), 0.0);
}

// Replaces the columns of `cluster` by a canonical orthonormal basis of their span.
ComplexMatrix canonical_cluster_basis(const ComplexMatrix& cluster) {
  const Eigen::Index n = cluster.rows();
  const Eigen::Index s = cluster.cols();
  const ComplexMatrix projector = cluster * cluster.adjoint();
  std::vector<ComplexVector> accepted;
  for (Eigen::Index j = 0; j < n && static_cast<Eigen::Index>(accepted.size()) < s; ++j) {
    ComplexVector v = projector.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : accepted) v -= u * u.dot(v);
    }
    const double norm = v.norm();
    if (norm > 1e-4) accepted.push_back(v / norm);
  }
  // Fallback for ill-conditioned spans: complete with the solver's own vectors.
  for (Eigen::Index j = 0; j < s && static_cast<Eigen::Index>(accepted.size()) < s; ++j) {
    ComplexVector v = cluster.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : accepted) v -= u * u.dot(v);
    }
    const double norm = v.norm();
    if (norm > 1e-8) accepted.push_back(v / norm);
  }
  for (auto& v : accepted) fix_phase(v);
  std::stable_sort(accepted.begin(), accepted.end(), lex_greater);
  ComplexMatrix out(n, s);
  for (Eigen::Index j = 0; j < s; ++j) out.col(j) = accepted[static_cast<std::size_t>(j)];
  return out;
}

ComplexMatrix unit(std::size_t d, std::size_t row, std::size_t col) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return m;
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const RealVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m, double tol) {
  require_square(m, "HermitianOperator");
  if (!m.allFinite()) throw NumericalError("HermitianOperator: non-finite entry");
  const double scale = std::max(1.0, max_abs(m));
  const double asym = max_abs(ComplexMatrix(m - m.adjoint()));
  if (asym > tol * scale) {
    throw NumericalError("HermitianOperator: matrix is not Hermitian (deviation " +
                         std::to_string(asym) + ")");
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return HermitianOperator(ComplexMatrix::Identity(d, d));
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return HermitianOperator(ComplexMatrix::Zero(d, d));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("HermitianOperator +: dims differ");
  return HermitianOperator(ComplexMatrix(m_ + o.m_));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("HermitianOperator -: dims differ");
  return HermitianOperator(ComplexMatrix(m_ - o.m_));
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(ComplexMatrix(m_ * s));
}

DensityMatrix::DensityMatrix(BipartiteDims dims, HermitianOperator op, double psd_tol)
    : dims_(dims), op_(std::move(op)) {
  require_bipartite(op_.matrix(), dims_, "DensityMatrix");
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw NumericalError("DensityMatrix: trace is " + std::to_string(tr) + ", expected 1");
  }
  const PsdCheck psd = is_positive_semidefinite(op_, psd_tol);
  if (!psd.is_psd) {
    throw NumericalError("DensityMatrix: negative eigenvalue " +
                         std::to_string(psd.min_eigenvalue));
  }
}

DensityMatrix::DensityMatrix(BipartiteDims dims, const ComplexMatrix& m, double psd_tol)
    : DensityMatrix(dims, HermitianOperator(m), psd_tol) {}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(tensor_product(a.matrix(), b.matrix()));
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Side traced) {
  require_bipartite(m, dims, "partial_trace");
  const auto da = static_cast<Eigen::Index>(dims.a);
  const auto db = static_cast<Eigen::Index>(dims.b);
  if (traced == Side::B) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Side side) {
  require_bipartite(m, dims, "partial_transpose");
  const auto da = static_cast<Eigen::Index>(dims.a);
  const auto db = static_cast<Eigen::Index>(dims.b);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index ia = 0; ia < da; ++ia)
    for (Eigen::Index ib = 0; ib < db; ++ib)
      for (Eigen::Index ja = 0; ja < da; ++ja)
        for (Eigen::Index jb = 0; jb < db; ++jb) {
          const Eigen::Index row = ia * db + ib;
          const Eigen::Index col = ja * db + jb;
          out(row, col) = side == Side::B ? m(ia * db + jb, ja * db + ib)
                                          : m(ja * db + ib, ia * db + jb);
        }
  return out;
}

Eigensystem hermitian_eigensystem(const HermitianOperator& h, double tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(h.dim());
  Eigensystem out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eigensystem: no convergence");
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double gap = tol * scale;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && out.values[end - 1] - out.values[end] < gap) ++end;
    const Eigen::Index size = end - start;
    if (size > 1) {
      out.vectors.middleCols(start, size) =
          canonical_cluster_basis(out.vectors.middleCols(start, size));
      const double mean = out.values.segment(start, size).mean();
      out.values.segment(start, size).setConstant(mean);
    } else {
      fix_phase(out.vectors.col(start));
    }
    start = end;
  }
  return out;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& h, double tol) {
  return hermitian_eigensystem(HermitianOperator(h, tol), tol);
}

PsdCheck is_positive_semidefinite(const HermitianOperator& h, double tol) {
  PsdCheck out;
  if (h.dim() == 0) {
    out.is_psd = true;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.is_psd = out.min_eigenvalue >= -tol;
  return out;
}

HermitianBasis hermitian_basis(std::size_t d) {
  if (d < 2) throw std::invalid_argument("hermitian_basis: dimension must be at least 2");
  HermitianBasis basis;
  basis.dim = d;
  basis.operators.reserve(d * d);
  const Complex i_unit(0.0, 1.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k)
      basis.operators.emplace_back(ComplexMatrix(unit(d, j, k) + unit(d, k, j)));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k)
      basis.operators.emplace_back(ComplexMatrix(-i_unit * unit(d, j, k) + i_unit * unit(d, k, j)));
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < l; ++j) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0;
    m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = -static_cast<double>(l);
    m *= std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    basis.operators.emplace_back(m);
  }
  basis.operators.push_back(HermitianOperator::identity(d));
  return basis;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("hs_inner: shapes differ");
  return (a.adjoint() * b).trace();
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix bloch_operator(const Eigen::Vector3d& a) {
  return a[0] * pauli_x() + a[1] * pauli_y() + a[2] * pauli_z();
}

}  // namespace bellcert
