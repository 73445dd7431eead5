#ifndef BELLCERT_CERTIFY_HPP
#define BELLCERT_CERTIFY_HPP

#include "bellcert/lhvcone.hpp"
#include "bellcert/measurements.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bellcert {

enum class MembershipStatus { feasible, infeasible, marginal };

std::string to_string(MembershipStatus status);

/// Separating vector F with F.P < 0 and F.B_lambda >= 0 for every generator: a Bell
/// inequality together with its violation. Normalized to max |F_i| = 1.
struct FarkasCertificate {
  EventLayout layout;
  RealVector f;
  double violation = 0.0;            // F . P
  double min_generator_value = 0.0;  // min over lambda of F . B_lambda
};

struct MembershipResult {
  MembershipStatus status = MembershipStatus::marginal;
  std::vector<std::pair<std::uint64_t, double>> weights;  // (lambda, q_lambda); set iff feasible
  double slack = 0.0;     // optimal total L1 slack of the phase-I problem
  double threshold = 0.0;  // tol * ||P||_1
  double residual = 0.0;  // ||G q - P||_inf for the returned weights
  std::optional<FarkasCertificate> certificate;  // set iff infeasible
  std::size_t iterations = 0;
  std::string note;  // why a result is marginal
};

/// Decides whether P lies in the cone spanned by the generators.
///
/// With t = tol * ||P||_1: feasible iff the optimal slack is <= t and the weights
/// reproduce P within t; infeasible iff the slack exceeds 10 t and the extracted
/// certificate passes verify_certificate; marginal otherwise (including an exhausted
/// iteration budget).
MembershipResult cone_membership(const EventVector& p, const ConeGenerators& gens, double tol = kDefaultTol);

struct CertificateCheck {
  bool valid = false;
  double violation = 0.0;
  double min_generator_value = 0.0;
};

inline constexpr double kCertificateMargin = 1e-9;

/// Recomputes F.P and min over lambda of F.B_lambda without the LP. Up to 2^22
/// generators every column is visited explicitly; larger cones use the exact
/// per-pattern minimization of ConeGenerators::minimize. Valid iff F.P < -1e-9 and the
/// minimum is >= -1e-9.
CertificateCheck verify_certificate(const RealVector& f, const ConeGenerators& gens, const EventVector& p);
CertificateCheck verify_certificate(const FarkasCertificate& cert, const ConeGenerators& gens,
                                    const EventVector& p);

/// Measurement counts and outcomes per measurement for violation_search.
struct SearchShape {
  std::size_t alice_measurements = 2;
  std::size_t alice_outcomes = 2;
  std::size_t bob_measurements = 2;
  std::size_t bob_outcomes = 2;
};

struct SearchBudget {
  std::size_t restarts = 32;
  std::size_t evaluations_per_restart = 1500;
};

struct SearchResult {
  bool found = false;
  std::optional<FarkasCertificate> certificate;
  std::optional<MeasurementConfig> config;
  std::vector<double> parameters;  // of the best restart
  double best_slack = 0.0;         // largest LP slack seen over all restarts
  std::size_t best_restart = 0;
  std::size_t evaluations = 0;
};

/// Number of real parameters describing one side's measurements: two Bloch angles per
/// measurement for qubits, two angles per Givens rotation (d(d-1)/2 of them) otherwise.
std::size_t parameter_count(std::size_t dim, std::size_t measurements);

/// Projective measurements from angle parameters. For dim 2 the parameters are Bloch
/// angles (theta, phi); for dim >= 3 they define the frame U = prod G_pq(theta, phi) over
/// planes (p, q) in lexicographic order. With k outcomes the first k - 1 frame vectors are
/// separate outcomes and the remaining ones are merged into the last.
std::vector<POVM> measurements_from_parameters(std::size_t dim, std::size_t measurements, std::size_t outcomes,
                                               const double* params);

MeasurementConfig config_from_parameters(BipartiteDims dims, const SearchShape& shape,
                                         const std::vector<double>& params);

/// Throws std::invalid_argument for shapes that cannot be realized on the given dims
/// (outcomes outside [2, d], no measurements) or exceed the enumeration guard.
void validate_shape(BipartiteDims dims, const SearchShape& shape);

/// Seeded multi-start Nelder-Mead over measurement angles maximizing the LP slack of
/// the state's event vector. Restart r draws its start from Rng(seed, r); restarts run on
/// up to `threads` threads and are merged best-by-violation, ties by restart index.
/// Finding nothing is not a proof that a local model exists.
SearchResult violation_search(const DensityMatrix& rho, const SearchShape& shape, const SearchBudget& budget,
                              std::uint64_t seed, unsigned threads = 1);

}  // namespace bellcert

#endif  // BELLCERT_CERTIFY_HPP
