#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "werner/singlet.hpp"

namespace werner {

/// Two-uniformity deficit D(psi) on psi = sum_a c_a |member_a>, for any
/// coefficient vector c (normalization is not assumed).
///
/// D = sum_{pairs} ||Delta||_F^2 with Delta = tau - I/d^2 is quartic in c. Its
/// Wirtinger derivative is dD/d conj(psi) = 2 sum_{pairs} (Delta (x) I) psi,
/// pulled back to coefficients through the basis. gradient() returns the real
/// gradient packed as dD/dRe c_a + i dD/dIm c_a = 2 dD/d conj(c_a).
class DeficitObjective {
 public:
  explicit DeficitObjective(const SingletBasis& basis);

  Eigen::Index dimension() const { return basis_.cols(); }
  const SystemShape& shape() const { return shape_; }

  double value(const Eigen::VectorXcd& c) const;
  Eigen::VectorXcd gradient(const Eigen::VectorXcd& c) const;
  double value_and_gradient(const Eigen::VectorXcd& c, Eigen::VectorXcd* gradient) const;

  PureState state(const Eigen::VectorXcd& c) const;

 private:
  // For one site pair: positions[group * d^2 + r] is the support position of
  // the multi-index with pair labels r and complement `group`, or -1.
  struct PairLayout {
    std::vector<Eigen::Index> positions;
    Eigen::Index groups = 0;
  };

  double evaluate(const Eigen::VectorXcd& c, Eigen::VectorXcd* gradient) const;

  SystemShape shape_;
  std::vector<MultiIndex> support_;
  Eigen::MatrixXcd basis_;
  std::vector<PairLayout> pairs_;
};

struct OptimizeOptions {
  int restarts = 16;
  int max_iters = 5000;
  std::uint64_t seed = 0;
  double gradient_tol = 1e-8;
  double armijo = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
};

struct RestartSummary {
  double deficit = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

struct OptimizationResult {
  Eigen::VectorXcd best_coefficients;
  double best_deficit = 0.0;
  /// Deficit floor from the certificate for this shape.
  double floor = 0.0;
  int iterations = 0;
  int restarts = 0;
  int best_restart = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  /// Deficit after every accepted step of the best restart, starting point first.
  std::vector<double> trajectory;
  std::vector<RestartSummary> per_restart;
  std::optional<PureState> best_state;
};

/// Projected gradient descent on the unit sphere of coefficient space with
/// Armijo backtracking; best of `restarts` seeded random starts.
OptimizationResult minimize_deficit(const SingletBasis& basis, const OptimizeOptions& options = {});

/// Tangential component g - Re<c, g> c of a packed real gradient at unit c.
Eigen::VectorXcd tangent_projection(const Eigen::VectorXcd& c, const Eigen::VectorXcd& g);

/// Max relative error between the analytic directional derivative and a
/// central difference (step 1e-5) over 10 random tangent directions at `point`.
double gradient_check(const SingletBasis& basis, const Eigen::VectorXcd& point, std::uint64_t seed);

}  // namespace werner
