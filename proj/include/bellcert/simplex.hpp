#ifndef BELLCERT_SIMPLEX_HPP
#define BELLCERT_SIMPLEX_HPP

#include "bellcert/lhvcone.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace bellcert {

struct ConeLpOptions {
  std::size_t max_iterations = 0;  // 0: 100 * rows + 1000
  double optimality_tol = 1e-11;
  double pivot_tol = 1e-9;
  std::size_t refactor_every = 32;
  std::size_t degenerate_before_bland = 50;
  double zero_objective_tol = 1e-15;  // relative to max(1, ||p||_1)
};

struct ConeLpSolution {
  bool converged = false;
  double slack = 0.0;
  std::vector<std::pair<std::uint64_t, double>> weights;  // (lambda, q) for basic generators
  RealVector dual;                                         // y with |y_i| <= 1, y . B_lambda <= 0
  std::size_t iterations = 0;
};

/// Phase-I problem  min 1.(s+ + s-)  s.t.  G q + s+ - s- = p,  q, s+, s- >= 0,
/// solved by a revised simplex with an explicit basis inverse. Generator columns are
/// priced through ConeGenerators::minimize (Dantzig rule, smallest index on ties). A run of
/// `degenerate_before_bland` consecutive degenerate pivots switches pricing to Bland's rule
/// until the next non-degenerate pivot, which rules out cycling at a vertex. The solve stops
/// early once the objective reaches zero, in which case `dual` carries no certificate.
/// The optimal dual y is the negated separating vector.
ConeLpSolution solve_cone_lp(const ConeGenerators& gens, const RealVector& p,
                             const ConeLpOptions& options = {});

}  // namespace bellcert

#endif  // BELLCERT_SIMPLEX_HPP
