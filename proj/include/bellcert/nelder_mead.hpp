#ifndef BELLCERT_NELDER_MEAD_HPP
#define BELLCERT_NELDER_MEAD_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace bellcert {

struct NelderMeadOptions {
  double initial_step = 0.5;
  std::size_t max_evaluations = 2000;
  double f_tol = 1e-10;  // stop when the simplex's value spread falls below this
  double x_tol = 1e-8;   // ... or its diameter does
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2) started
/// from an axis-aligned simplex around x0.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace bellcert

#endif  // BELLCERT_NELDER_MEAD_HPP
