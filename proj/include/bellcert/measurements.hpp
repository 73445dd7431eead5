#ifndef BELLCERT_MEASUREMENTS_HPP
#define BELLCERT_MEASUREMENTS_HPP

#include "bellcert/qcore.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bellcert {

class InvalidPovm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Positive operators summing to the identity, one per outcome.
class POVM {
 public:
  std::size_t dim() const { return elements_.front().dim(); }
  std::size_t outcomes() const { return elements_.size(); }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  const HermitianOperator& operator[](std::size_t k) const { return elements_[k]; }

  /// Outcomes whose operator is (numerically) zero. Allowed, but callers may warn.
  const std::vector<std::size_t>& zero_elements() const { return zero_elements_; }
  bool has_zero_elements() const { return !zero_elements_.empty(); }

 private:
  friend POVM validate_povm(std::vector<HermitianOperator> candidate, double tol);
  POVM() = default;

  std::vector<HermitianOperator> elements_;
  std::vector<std::size_t> zero_elements_;
};

POVM validate_povm(std::vector<HermitianOperator> candidate, double tol = kDefaultTol);

/// {(I + a.sigma)/2, (I - a.sigma)/2}; the +1 outcome comes first.
POVM projective_from_bloch(const Eigen::Vector3d& a);

/// Shape of an event vector: k(i) outcomes for Alice's i-th measurement, l(j) for Bob's.
///
/// Flat layout: the joint block indexed (i,k,j,l) lexicographically (equivalently the
/// Kronecker product of Alice's and Bob's outcome lists), then Alice's marginals in
/// (i,k) order, then Bob's in (j,l) order.
struct EventLayout {
  std::vector<std::size_t> alice_outcomes;
  std::vector<std::size_t> bob_outcomes;

  std::size_t bits_a() const;
  std::size_t bits_b() const;
  std::size_t joint_size() const { return bits_a() * bits_b(); }
  std::size_t size() const { return joint_size() + bits_a() + bits_b(); }

  std::size_t a_offset(std::size_t i) const;
  std::size_t b_offset(std::size_t j) const;
  std::size_t joint_index(std::size_t i, std::size_t k, std::size_t j, std::size_t l) const;
  std::size_t marg_a_index(std::size_t i, std::size_t k) const;
  std::size_t marg_b_index(std::size_t j, std::size_t l) const;

  bool operator==(const EventLayout&) const = default;
};

class MeasurementConfig {
 public:
  MeasurementConfig(std::vector<POVM> alice, std::vector<POVM> bob);

  const std::vector<POVM>& alice() const { return alice_; }
  const std::vector<POVM>& bob() const { return bob_; }
  BipartiteDims dims() const { return {alice_.front().dim(), bob_.front().dim()}; }
  const EventLayout& layout() const { return layout_; }

 private:
  std::vector<POVM> alice_;
  std::vector<POVM> bob_;
  EventLayout layout_;
};

struct EventVector {
  EventLayout layout;
  RealVector values;

  auto joint() const { return values.head(static_cast<Eigen::Index>(layout.joint_size())); }
  auto marg_a() const {
    return values.segment(static_cast<Eigen::Index>(layout.joint_size()),
                          static_cast<Eigen::Index>(layout.bits_a()));
  }
  auto marg_b() const { return values.tail(static_cast<Eigen::Index>(layout.bits_b())); }
};

EventVector event_vector(const DensityMatrix& rho, const MeasurementConfig& config);

/// The vector (pA (x) pB, pA, pB) built from marginal data alone.
EventVector product_event_vector(const RealVector& marg_a, const RealVector& marg_b,
                                 const EventLayout& layout);

/// One von Neumann measurement per non-identity Gell-Mann operator on each side; the
/// outcomes are projectors onto its canonical eigenvectors (descending eigenvalue).
MeasurementConfig complete_config(std::size_t dim_a, std::size_t dim_b);

/// Linear-inversion tomography. Throws NumericalError if the configuration does not
/// determine the state, if the linear system residual exceeds 1e-8, or if the
/// reconstruction has an eigenvalue below -1e-8.
DensityMatrix reconstruct_state(const EventVector& p, const MeasurementConfig& config);

/// H = sum mu_ij s_i (x) t_j + sum mu^A_i s_i (x) 1 + sum mu^B_j 1 (x) t_j + c 1 (x) 1.
struct BasisExpansion {
  HermitianBasis basis_a;
  HermitianBasis basis_b;
  RealMatrix joint;   // (dA^2 - 1) x (dB^2 - 1)
  RealVector alice;   // dA^2 - 1
  RealVector bob;     // dB^2 - 1
  double c = 0.0;

  HermitianOperator resum() const;
};

BasisExpansion expand_in_basis(const HermitianOperator& h, const HermitianBasis& basis_a,
                               const HermitianBasis& basis_b);

/// Tr(X Y) for square matrices of equal size.
Complex trace_of_product(const ComplexMatrix& x, const ComplexMatrix& y);

}  // namespace bellcert

#endif  // BELLCERT_MEASUREMENTS_HPP
