#include "bellcert/measurements.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace bellcert {

namespace {

std::size_t sum(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

void check_side(const std::vector<POVM>& side, const char* name) {
  if (side.empty()) throw std::invalid_argument(std::string("MeasurementConfig: ") + name + " has no measurements");
  for (const auto& m : side) {
    if (m.dim() != side.front().dim()) {
      throw DimensionMismatch(std::string("MeasurementConfig: ") + name + " POVMs differ in dimension");
    }
  }
}

// Every outcome operator of the configuration, in the flat event-vector order.
std::vector<ComplexMatrix> event_operators(const MeasurementConfig& config) {
  const auto [da, db] = config.dims();
  const ComplexMatrix id_a = ComplexMatrix::Identity(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  const ComplexMatrix id_b = ComplexMatrix::Identity(static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db));
  std::vector<ComplexMatrix> ops;
  ops.reserve(config.layout().size());
  for (const auto& ma : config.alice())
    for (const auto& ea : ma.elements())
      for (const auto& mb : config.bob())
        for (const auto& eb : mb.elements()) ops.push_back(tensor_product(ea.matrix(), eb.matrix()));
  for (const auto& ma : config.alice())
    for (const auto& ea : ma.elements()) ops.push_back(tensor_product(ea.matrix(), id_b));
  for (const auto& mb : config.bob())
    for (const auto& eb : mb.elements()) ops.push_back(tensor_product(id_a, eb.matrix()));
  return ops;
}

}  // namespace

Complex trace_of_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.cols() || x.cols() != y.rows()) throw DimensionMismatch("trace_of_product: shapes differ");
  return x.cwiseProduct(y.transpose()).sum();
}

POVM validate_povm(std::vector<HermitianOperator> candidate, double tol) {
  if (candidate.empty()) throw InvalidPovm("validate_povm: no elements");
  const std::size_t d = candidate.front().dim();
  if (d == 0) throw InvalidPovm("validate_povm: zero-dimensional element");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  POVM out;
  for (std::size_t k = 0; k < candidate.size(); ++k) {
    const auto& e = candidate[k];
    if (e.dim() != d) throw DimensionMismatch("validate_povm: elements differ in dimension");
    const PsdCheck psd = is_positive_semidefinite(e, tol);
    if (!psd.is_psd) {
      throw InvalidPovm("validate_povm: element " + std::to_string(k) + " has negative eigenvalue " +
                        std::to_string(psd.min_eigenvalue));
    }
    if (max_abs(e.matrix()) <= tol) out.zero_elements_.push_back(k);
    total += e.matrix();
  }
  const double deviation = max_abs(ComplexMatrix(total - ComplexMatrix::Identity(n, n)));
  if (deviation > tol) {
    throw InvalidPovm("validate_povm: elements sum to identity only within " + std::to_string(deviation));
  }
  out.elements_ = std::move(candidate);
  return out;
}

POVM projective_from_bloch(const Eigen::Vector3d& a) {
  if (std::abs(a.norm() - 1.0) > kDefaultTol) {
    throw std::invalid_argument("projective_from_bloch: Bloch vector must have unit norm");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix s = bloch_operator(a);
  return validate_povm({HermitianOperator(ComplexMatrix((id + s) * 0.5)),
                        HermitianOperator(ComplexMatrix((id - s) * 0.5))});
}

std::size_t EventLayout::bits_a() const { return sum(alice_outcomes); }
std::size_t EventLayout::bits_b() const { return sum(bob_outcomes); }

std::size_t EventLayout::a_offset(std::size_t i) const {
  return std::accumulate(alice_outcomes.begin(), alice_outcomes.begin() + static_cast<std::ptrdiff_t>(i),
                         std::size_t{0});
}

std::size_t EventLayout::b_offset(std::size_t j) const {
  return std::accumulate(bob_outcomes.begin(), bob_outcomes.begin() + static_cast<std::ptrdiff_t>(j),
                         std::size_t{0});
}

std::size_t EventLayout::joint_index(std::size_t i, std::size_t k, std::size_t j, std::size_t l) const {
  return (a_offset(i) + k) * bits_b() + b_offset(j) + l;
}

std::size_t EventLayout::marg_a_index(std::size_t i, std::size_t k) const {
  return joint_size() + a_offset(i) + k;
}

std::size_t EventLayout::marg_b_index(std::size_t j, std::size_t l) const {
  return joint_size() + bits_a() + b_offset(j) + l;
}

MeasurementConfig::MeasurementConfig(std::vector<POVM> alice, std::vector<POVM> bob)
    : alice_(std::move(alice)), bob_(std::move(bob)) {
  check_side(alice_, "alice");
  check_side(bob_, "bob");
  for (const auto& m : alice_) layout_.alice_outcomes.push_back(m.outcomes());
  for (const auto& m : bob_) layout_.bob_outcomes.push_back(m.outcomes());
}

EventVector event_vector(const DensityMatrix& rho, const MeasurementConfig& config) {
  if (!(rho.dims() == config.dims())) throw DimensionMismatch("event_vector: state and configuration dims differ");
  const auto ops = event_operators(config);
  EventVector p{config.layout(), RealVector(static_cast<Eigen::Index>(ops.size()))};
  for (std::size_t r = 0; r < ops.size(); ++r) {
    p.values[static_cast<Eigen::Index>(r)] = trace_of_product(ops[r], rho.matrix()).real();
  }
  return p;
}

EventVector product_event_vector(const RealVector& marg_a, const RealVector& marg_b,
                                 const EventLayout& layout) {
  if (static_cast<std::size_t>(marg_a.size()) != layout.bits_a() ||
      static_cast<std::size_t>(marg_b.size()) != layout.bits_b()) {
    throw DimensionMismatch("product_event_vector: marginal sizes do not match layout");
  }
  EventVector p{layout, RealVector(static_cast<Eigen::Index>(layout.size()))};
  Eigen::Index r = 0;
  for (Eigen::Index x = 0; x < marg_a.size(); ++x)
    for (Eigen::Index y = 0; y < marg_b.size(); ++y) p.values[r++] = marg_a[x] * marg_b[y];
  p.values.segment(r, marg_a.size()) = marg_a;
  p.values.tail(marg_b.size()) = marg_b;
  return p;
}

namespace {

std::vector<POVM> complete_side(std::size_t d) {
  const HermitianBasis basis = hermitian_basis(d);
  std::vector<POVM> side;
  for (std::size_t i = 0; i + 1 < basis.size(); ++i) {
    const Eigensystem es = hermitian_eigensystem(basis.operators[i]);
    std::vector<HermitianOperator> projectors;
    for (Eigen::Index k = 0; k < es.vectors.cols(); ++k) {
      projectors.emplace_back(outer(es.vectors.col(k)));
    }
    side.push_back(validate_povm(std::move(projectors)));
  }
  return side;
}

}  // namespace

MeasurementConfig complete_config(std::size_t dim_a, std::size_t dim_b) {
  if (dim_a < 2 || dim_b < 2) throw std::invalid_argument("complete_config: dims must be >= 2");
  return MeasurementConfig(complete_side(dim_a), complete_side(dim_b));
}

DensityMatrix reconstruct_state(const EventVector& p, const MeasurementConfig& config) {
  if (!(p.layout == config.layout())) throw DimensionMismatch("reconstruct_state: layout mismatch");
  const BipartiteDims dims = config.dims();
  const HermitianBasis ba = hermitian_basis(dims.a);
  const HermitianBasis bb = hermitian_basis(dims.b);
  std::vector<ComplexMatrix> unknowns;
  for (const auto& s : ba.operators)
    for (const auto& t : bb.operators) unknowns.push_back(tensor_product(s.matrix(), t.matrix()));

  const auto ops = event_operators(config);
  const auto rows = static_cast<Eigen::Index>(ops.size());
  const auto cols = static_cast<Eigen::Index>(unknowns.size());
  RealMatrix map(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index m = 0; m < cols; ++m)
      map(r, m) = trace_of_product(ops[static_cast<std::size_t>(r)], unknowns[static_cast<std::size_t>(m)]).real();

  Eigen::CompleteOrthogonalDecomposition<RealMatrix> solver(map);
  solver.setThreshold(1e-10);
  if (solver.rank() < cols) {
    throw NumericalError("reconstruct_state: configuration is not tomographically complete (rank " +
                         std::to_string(solver.rank()) + " of " + std::to_string(cols) + ")");
  }
  const RealVector x = solver.solve(p.values);
  const double residual = max_abs(RealVector(map * x - p.values));
  if (residual > 1e-8) {
    throw NumericalError("reconstruct_state: event vector is inconsistent with any operator (residual " +
                         std::to_string(residual) + ")");
  }
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(dims.total()),
                                          static_cast<Eigen::Index>(dims.total()));
  for (Eigen::Index m = 0; m < cols; ++m) {
    const ComplexMatrix& g = unknowns[static_cast<std::size_t>(m)];
    rho += x[m] * g;
  }
  rho = (rho + rho.adjoint()) * 0.5;
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw NumericalError("reconstruct_state: reconstructed trace is not positive");
  rho /= tr;
  const PsdCheck psd = is_positive_semidefinite(HermitianOperator(rho), 1e-8);
  if (!psd.is_psd) {
    throw NumericalError("reconstruct_state: reconstruction has eigenvalue " +
                         std::to_string(psd.min_eigenvalue) + " (not a quantum state)");
  }
  return DensityMatrix(dims, rho, 1e-8);
}

HermitianOperator BasisExpansion::resum() const {
  const std::size_t na = basis_a.size();
  const std::size_t nb = basis_b.size();
  const ComplexMatrix& ia = basis_a.identity().matrix();
  const ComplexMatrix& ib = basis_b.identity().matrix();
  ComplexMatrix h = c * tensor_product(ia, ib);
  for (std::size_t i = 0; i + 1 < na; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    h += alice[ii] * tensor_product(basis_a.operators[i].matrix(), ib);
    for (std::size_t j = 0; j + 1 < nb; ++j) {
      h += joint(ii, static_cast<Eigen::Index>(j)) *
           tensor_product(basis_a.operators[i].matrix(), basis_b.operators[j].matrix());
    }
  }
  for (std::size_t j = 0; j + 1 < nb; ++j) {
    h += bob[static_cast<Eigen::Index>(j)] * tensor_product(ia, basis_b.operators[j].matrix());
  }
  return HermitianOperator(h);
}

BasisExpansion expand_in_basis(const HermitianOperator& h, const HermitianBasis& basis_a,
                               const HermitianBasis& basis_b) {
  if (h.dim() != basis_a.dim * basis_b.dim) throw DimensionMismatch("expand_in_basis: operator size mismatch");
  const auto na = static_cast<Eigen::Index>(basis_a.size());
  const auto nb = static_cast<Eigen::Index>(basis_b.size());
  BasisExpansion out{basis_a, basis_b, RealMatrix(na - 1, nb - 1), RealVector(na - 1), RealVector(nb - 1), 0.0};
  auto coefficient = [&](const ComplexMatrix& g) {
    return hs_inner(g, h.matrix()).real() / hs_inner(g, g).real();
  };
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      const double mu = coefficient(tensor_product(basis_a.operators[static_cast<std::size_t>(i)].matrix(),
                                                   basis_b.operators[static_cast<std::size_t>(j)].matrix()));
      const bool id_a = i == na - 1;
      const bool id_b = j == nb - 1;
      if (id_a && id_b) {
        out.c = mu;
      } else if (id_a) {
        out.bob[j] = mu;
      } else if (id_b) {
        out.alice[i] = mu;
      } else {
        out.joint(i, j) = mu;
      }
    }
  }
  return out;
}

}  // namespace bellcert
