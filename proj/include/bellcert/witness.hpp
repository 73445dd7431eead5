#ifndef BELLCERT_WITNESS_HPP
#define BELLCERT_WITNESS_HPP

#include "bellcert/certify.hpp"
#include "bellcert/measurements.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <variant>

namespace bellcert {

/// Measurement directions a, a' (Alice) and b, b' (Bob).
struct ChshSettings {
  Eigen::Vector3d a;
  Eigen::Vector3d a_prime;
  Eigen::Vector3d b;
  Eigen::Vector3d b_prime;

  /// b = x, b' = z, a = -(x + z)/sqrt2, a' = (x - z)/sqrt2: the singlet reaches the
  /// quantum maximum of the CHSH form below at these directions.
  static ChshSettings canonical();
};

struct FarkasProvenance {
  RealVector f;
  MeasurementConfig config;
};

struct ExternalProvenance {};

using WitnessProvenance = std::variant<ExternalProvenance, FarkasProvenance, ChshSettings>;

struct Witness {
  HermitianOperator h;
  BipartiteDims dims;
  double offset = 0.0;  // c in H' = H - c 1(x)1; carried alongside, never folded into F
  WitnessProvenance provenance;
};

/// H = sum F_joint E^A (x) E^B + sum F_A E^A (x) 1 + sum F_B 1 (x) E^B, so that
/// Tr(H rho) = F . P(rho) for every state.
Witness witness_from_farkas(const RealVector& f, const MeasurementConfig& config);
Witness witness_from_farkas(const FarkasCertificate& cert, const MeasurementConfig& config);

/// Tr(H rho); throws NumericalError if the imaginary part exceeds 1e-12.
double witness_value(const Witness& w, const DensityMatrix& rho);

/// Layout of the two-setting, two-outcome scenario on both sides.
EventLayout chsh_layout();

/// F . P = p_a - p_ab + p_b' - p_a'b' + p_a'b - p_ab' (all "+1" outcomes), which is
/// non-negative on every local deterministic assignment.
RealVector chsh_farkas_vector();

/// Alice measures a, a'; Bob measures b, b'; each as projective_from_bloch.
MeasurementConfig chsh_config(const ChshSettings& s);

/// a.sigma (x) (b + b').sigma + a'.sigma (x) (b' - b).sigma.
HermitianOperator chsh_bell_operator(const ChshSettings& s);

/// (2 * 1(x)1 - Bell operator)/4. Equal to witness_from_farkas(chsh_farkas_vector(),
/// chsh_config(s)).
Witness chsh_witness(const ChshSettings& s);

struct ProductMinimumOptions {
  std::size_t restarts = 16;
  std::size_t max_sweeps = 1000;
  double convergence_tol = 1e-12;
  std::size_t grid_points = 10000;  // per side; qubit-qubit only, 0 disables
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct ProductMinimum {
  double value = 0.0;  // attained by (a, b): an upper bound on the minimum over separable states
  ComplexVector a;
  ComplexVector b;
  std::optional<double> grid_value;  // qubit-qubit grid bracket, when computed
  std::string certification;          // "see-saw" or "see-saw+grid"
};

/// Minimum of <ab|H|ab> over product vectors by see-saw: fix b, take the lowest
/// eigenvector of (1 (x) <b|) H (1 (x) |b>), then swap roles; multi-start from Rng(seed, r).
/// For 2x2 a Fibonacci-sphere grid on each side (the other side solved exactly) is added.
ProductMinimum min_over_products(const Witness& w, const ProductMinimumOptions& options = {});

struct FarkasDecomposition {
  RealVector f;
  double c = 0.0;
};

/// Writes H = sum F pi^A (x) pi^B + sum F_A pi^A (x) 1 + sum F_B 1 (x) pi^B + c 1(x)1 over
/// the projectors of a complete configuration, by expanding H in the Gell-Mann product
/// basis and spreading each coefficient over the eigenprojectors of its basis operator.
/// Throws NumericalError if the configuration's projectors do not resolve the basis.
FarkasDecomposition witness_to_farkas(const Witness& w, const MeasurementConfig& complete);

struct WitnessReport {
  double value = 0.0;
  ProductMinimum product_minimum;
  bool detects = false;  // value < -1e-9
  bool valid = false;    // product minimum >= -1e-6
  bool pass = false;
};

WitnessReport verify_witness(const Witness& w, const DensityMatrix& rho, const ProductMinimumOptions& options = {});

}  // namespace bellcert

#endif  // BELLCERT_WITNESS_HPP
