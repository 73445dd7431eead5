#include "bellcert/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bellcert {

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const ConeGenerators& gens, const RealVector& p, const ConeLpOptions& opt)
      : gens_(gens), p_(p), opt_(opt), m_(static_cast<Eigen::Index>(gens.rows())), n_gen_(gens.count()) {
    basis_.resize(static_cast<std::size_t>(m_));
    binv_ = RealMatrix::Zero(m_, m_);
    xb_ = RealVector(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const bool pos = p_[i] >= 0.0;
      basis_[static_cast<std::size_t>(i)] = pos ? plus(i) : minus(i);
      binv_(i, i) = pos ? 1.0 : -1.0;
      xb_[i] = std::abs(p_[i]);
    }
  }

  ConeLpSolution run() {
    ConeLpSolution sol;
    const std::size_t limit = opt_.max_iterations ? opt_.max_iterations : 100 * static_cast<std::size_t>(m_) + 1000;
    const double zero_objective = opt_.zero_objective_tol * std::max(1.0, p_.cwiseAbs().sum());
    std::size_t degenerate_run = 0;
    for (std::size_t iter = 0;; ++iter) {
      if (iter > 0 && iter % opt_.refactor_every == 0) refactor();
      if (objective() <= zero_objective) {
        // The objective is bounded below by zero, so this basis is already optimal.
        sol.converged = true;
        sol.iterations = iter;
        break;
      }
      const RealVector y = dual();
      const bool bland = degenerate_run >= opt_.degenerate_before_bland;
      const auto entering = bland ? price_bland(y) : price_dantzig(y);
      if (!entering) {
        sol.converged = true;
        sol.iterations = iter;
        break;
      }
      if (iter >= limit) {
        sol.iterations = iter;
        break;
      }
      const RealVector d = binv_ * column(*entering);
      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (d[i] <= opt_.pivot_tol) continue;
        const double ratio = std::max(0.0, xb_[i]) / d[i];
        if (ratio < best_ratio - 1e-14 ||
            (std::abs(ratio - best_ratio) <= 1e-14 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) {
        // The objective is bounded below by zero, so this only happens through rounding.
        refactor();
        sol.iterations = iter;
        break;
      }
      degenerate_run = best_ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leave, *entering, d, best_ratio);
    }
    refactor();
    sol.dual = dual();
    sol.slack = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const std::uint64_t var = basis_[static_cast<std::size_t>(i)];
      const double value = std::max(0.0, xb_[i]);
      if (var < n_gen_) {
        if (value > 0.0) sol.weights.emplace_back(var, value);
      } else {
        sol.slack += value;
      }
    }
    std::sort(sol.weights.begin(), sol.weights.end());
    return sol;
  }

 private:
  std::uint64_t plus(Eigen::Index i) const { return n_gen_ + static_cast<std::uint64_t>(i); }
  std::uint64_t minus(Eigen::Index i) const { return n_gen_ + static_cast<std::uint64_t>(m_ + i); }

  double cost(std::uint64_t var) const { return var < n_gen_ ? 0.0 : 1.0; }

  double objective() const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= n_gen_) total += std::max(0.0, xb_[i]);
    return total;
  }

  RealVector column(std::uint64_t var) const {
    if (var < n_gen_) return gens_.column(var);
    RealVector e = RealVector::Zero(m_);
    const auto k = static_cast<Eigen::Index>(var - n_gen_);
    if (k < m_) {
      e[k] = 1.0;
    } else {
      e[k - m_] = -1.0;
    }
    return e;
  }

  RealVector dual() const {
    RealVector cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb[i] = cost(basis_[static_cast<std::size_t>(i)]);
    return binv_.transpose() * cb;
  }

  bool is_basic(std::uint64_t var) const {
    return std::find(basis_.begin(), basis_.end(), var) != basis_.end();
  }

  std::optional<std::uint64_t> price_dantzig(const RealVector& y) const {
    const RealVector neg_y = -y;
    const GeneratorMinimum g = gens_.minimize(neg_y);
    double best = -opt_.optimality_tol;
    std::optional<std::uint64_t> entering;
    if (g.value < best && !is_basic(g.lambda)) {
      best = g.value;
      entering = g.lambda;
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double dp = 1.0 - y[i];
      const double dm = 1.0 + y[i];
      if (dp < best && !is_basic(plus(i))) {
        best = dp;
        entering = plus(i);
      }
      if (dm < best && !is_basic(minus(i))) {
        best = dm;
        entering = minus(i);
      }
    }
    return entering;
  }

  std::optional<std::uint64_t> price_bland(const RealVector& y) const {
    const RealVector neg_y = -y;
    if (auto g = gens_.first_below(neg_y, -opt_.optimality_tol); g && !is_basic(*g)) return g;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (1.0 - y[i] < -opt_.optimality_tol && !is_basic(plus(i))) return plus(i);
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (1.0 + y[i] < -opt_.optimality_tol && !is_basic(minus(i))) return minus(i);
    }
    return std::nullopt;
  }

  void pivot(Eigen::Index r, std::uint64_t entering, const RealVector& d, double theta) {
    xb_ -= theta * d;
    xb_[r] = theta;
    basis_[static_cast<std::size_t>(r)] = entering;
    const RealVector row = binv_.row(r) / d[r];
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i != r && d[i] != 0.0) binv_.row(i) -= d[i] * row.transpose();
    }
    binv_.row(r) = row.transpose();
    for (Eigen::Index i = 0; i < m_; ++i)
      if (xb_[i] < 0.0 && xb_[i] > -1e-12) xb_[i] = 0.0;
  }

  void refactor() {
    RealMatrix b(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) b.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<RealMatrix> lu(b);
    binv_ = lu.inverse();
    xb_ = lu.solve(p_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (xb_[i] < 0.0 && xb_[i] > -1e-12) xb_[i] = 0.0;
  }

  const ConeGenerators& gens_;
  const RealVector& p_;
  ConeLpOptions opt_;
  Eigen::Index m_;
  std::uint64_t n_gen_;
  std::vector<std::uint64_t> basis_;
  RealMatrix binv_;
  RealVector xb_;
};

}  // namespace

ConeLpSolution solve_cone_lp(const ConeGenerators& gens, const RealVector& p, const ConeLpOptions& options) {
  if (static_cast<std::size_t>(p.size()) != gens.rows()) throw DimensionMismatch("solve_cone_lp: size mismatch");
  return RevisedSimplex(gens, p, options).run();
}

}  // namespace bellcert
