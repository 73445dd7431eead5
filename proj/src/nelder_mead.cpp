#include "bellcert/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bellcert {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  NelderMeadResult result;
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += options.initial_step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);
  result.evaluations = n + 1;

  auto affine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c[k] + t * (w[k] - c[k]);
    return out;
  };

  std::vector<std::size_t> order(n + 1);
  while (result.evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(pts[i][k] - pts[best][k]));
      diameter = std::max(diameter, d);
    }
    if (vals[worst] - vals[best] <= options.f_tol || diameter <= options.x_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }

    const auto reflected = affine(centroid, pts[worst], -1.0);
    const double fr = f(reflected);
    ++result.evaluations;
    if (fr < vals[best]) {
      const auto expanded = affine(centroid, pts[worst], -2.0);
      const double fe = f(expanded);
      ++result.evaluations;
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const auto contracted = affine(centroid, outside ? reflected : pts[worst], 0.5);
    const double fc = f(contracted);
    ++result.evaluations;
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = affine(pts[best], pts[i], 0.5);
      vals[i] = f(pts[i]);
      ++result.evaluations;
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  result.value = *it;
  result.x = pts[static_cast<std::size_t>(it - vals.begin())];
  return result;
}

}  // namespace bellcert
