#ifndef BELLCERT_STATES_HPP
#define BELLCERT_STATES_HPP

#include "bellcert/qcore.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace bellcert {

/// rho = sum_i weights[i] |a_i><a_i| (x) |b_i><b_i|.
struct SeparableEnsemble {
  std::vector<double> weights;
  std::vector<std::pair<ComplexVector, ComplexVector>> factors;

  DensityMatrix density(BipartiteDims dims) const;
};

struct PptResult {
  bool is_ppt = false;
  double min_eigenvalue = 0.0;
};

/// Projector onto (|01> - |10>)/sqrt(2).
DensityMatrix singlet();

/// p * singlet + (1 - p) * I/4, for p in [0, 1].
DensityMatrix werner(double p);

DensityMatrix maximally_mixed(BipartiteDims dims);

/// |a><a| (x) |b><b| for (not necessarily normalized) vectors a, b.
DensityMatrix product_state(const ComplexVector& a, const ComplexVector& b);

/// Haar-random product factors with Dirichlet(1) weights.
/// Stream layout (stream 0 of the seed): for each term, the A vector then the B vector
/// (Rng::haar_vector), then one exponential() draw per term for the weights.
std::pair<DensityMatrix, SeparableEnsemble> random_separable(BipartiteDims dims, std::size_t terms,
                                                             std::uint64_t seed);

/// G G^dagger / Tr(G G^dagger) with G a square complex Gaussian matrix, filled row-major
/// from stream 0 of the seed.
DensityMatrix random_density(BipartiteDims dims, std::uint64_t seed);

/// The five members of the Tiles unextendible product basis in C^3 (x) C^3.
std::array<ComplexVector, 5> tiles_upb_vectors();

/// (I_9 - sum of the Tiles projectors) / 4.
DensityMatrix tiles_upb_state();

/// Partial transpose on B; is_ppt iff its minimum eigenvalue >= -tol. At dims 2x2 and
/// 2x3 this is an exact separability test.
PptResult ppt_test(const DensityMatrix& rho, double tol = kDefaultTol);

}  // namespace bellcert

#endif  // BELLCERT_STATES_HPP
