#include "werner/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "werner/errors.hpp"
#include "werner/nogo.hpp"
#include "werner/uniformity.hpp"

namespace werner {

DeficitObjective::DeficitObjective(const SingletBasis& basis) : shape_(basis.shape) {
  if (basis.empty()) throw DomainError("deficit objective needs a nonempty basis");
  if (shape_.n() < 2) throw DomainError("pair deficit needs at least two particles");

  std::map<MultiIndex, Eigen::Index> position;
  for (const PureState& member : basis.members)
    for (const auto& kv : member.amplitudes()) position.emplace(kv.first, 0);
  Eigen::Index next = 0;
  for (auto& [index, pos] : position) {
    pos = next++;
    support_.push_back(index);
  }

  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  basis_ = Eigen::MatrixXcd::Zero(next, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (const auto& [index, amp] : basis.members[static_cast<std::size_t>(a)].amplitudes())
      basis_(position.at(index), a) = amp;

  const int n = shape_.n();
  const int d = shape_.d();
  const int block = d * d;
  for (const auto& pair : subsystems_of_size(n, 2)) {
    PairLayout layout;
    std::unordered_map<std::uint64_t, Eigen::Index> group_of;
    for (Eigen::Index s = 0; s < next; ++s) {
      const MultiIndex& index = support_[static_cast<std::size_t>(s)];
      std::uint64_t rest = 0;
      for (int a = 0; a < n; ++a)
        if (a != pair[0] && a != pair[1])
          rest = rest * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(index[static_cast<std::size_t>(a)]);
      auto [it, inserted] = group_of.try_emplace(rest, layout.groups);
      if (inserted) {
        ++layout.groups;
        layout.positions.resize(layout.positions.size() + static_cast<std::size_t>(block), -1);
      }
      const int row = index[static_cast<std::size_t>(pair[0])] * d + index[static_cast<std::size_t>(pair[1])];
      layout.positions[static_cast<std::size_t>(it->second * block + row)] = s;
    }
    pairs_.push_back(std::move(layout));
  }
}

double DeficitObjective::evaluate(const Eigen::VectorXcd& c, Eigen::VectorXcd* gradient) const {
  if (c.size() != dimension()) throw DomainError("coefficient vector does not match basis dimension");
  const int block = shape_.d() * shape_.d();
  const Eigen::VectorXcd psi = basis_ * c;
  Eigen::VectorXcd dpsi;
  if (gradient != nullptr) dpsi = Eigen::VectorXcd::Zero(psi.size());

  const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(block, block) / static_cast<double>(block);
  Eigen::VectorXcd local(block);
  double total = 0.0;
  for (const PairLayout& layout : pairs_) {
    Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(block, block);
    for (Eigen::Index g = 0; g < layout.groups; ++g) {
      for (int r = 0; r < block; ++r) {
        const Eigen::Index p = layout.positions[static_cast<std::size_t>(g * block + r)];
        local[r] = p < 0 ? Complex(0.0, 0.0) : psi[p];
      }
      tau.noalias() += local * local.adjoint();
    }
    const Eigen::MatrixXcd delta = tau - mixed;
    total += delta.squaredNorm();
    if (gradient == nullptr) continue;
    for (Eigen::Index g = 0; g < layout.groups; ++g) {
      for (int r = 0; r < block; ++r) {
        const Eigen::Index p = layout.positions[static_cast<std::size_t>(g * block + r)];
        local[r] = p < 0 ? Complex(0.0, 0.0) : psi[p];
      }
      const Eigen::VectorXcd pushed = delta * local;
      for (int r = 0; r < block; ++r) {
        const Eigen::Index p = layout.positions[static_cast<std::size_t>(g * block + r)];
        if (p >= 0) dpsi[p] += 2.0 * pushed[r];
      }
    }
  }
  // Components of (Delta (x) I) psi off the support are orthogonal to every
  // basis member and drop out of the pull-back.
  if (gradient != nullptr) *gradient = 2.0 * (basis_.adjoint() * dpsi);
  return total;
}

double DeficitObjective::value(const Eigen::VectorXcd& c) const { return evaluate(c, nullptr); }

Eigen::VectorXcd DeficitObjective::gradient(const Eigen::VectorXcd& c) const {
  Eigen::VectorXcd g;
  evaluate(c, &g);
  return g;
}

double DeficitObjective::value_and_gradient(const Eigen::VectorXcd& c, Eigen::VectorXcd* gradient) const {
  return evaluate(c, gradient);
}

PureState DeficitObjective::state(const Eigen::VectorXcd& c) const {
  const Eigen::VectorXcd psi = basis_ * c;
  PureState::AmplitudeMap amps;
  for (Eigen::Index s = 0; s < psi.size(); ++s) amps.emplace(support_[static_cast<std::size_t>(s)], psi[s]);
  return PureState(shape_, std::move(amps));
}

Eigen::VectorXcd tangent_projection(const Eigen::VectorXcd& c, const Eigen::VectorXcd& g) {
  return g - c.dot(g).real() * c;
}

namespace {

RestartSummary descend(const DeficitObjective& objective, Eigen::VectorXcd& c,
                       const OptimizeOptions& options, std::vector<double>& trajectory) {
  RestartSummary summary;
  Eigen::VectorXcd grad;
  double value = objective.value_and_gradient(c, &grad);
  trajectory.push_back(value);

  for (int iter = 0;; ++iter) {
    const Eigen::VectorXcd tangent = tangent_projection(c, grad);
    const double slope = tangent.squaredNorm();
    summary.gradient_norm = std::sqrt(slope);
    summary.iterations = iter;
    if (summary.gradient_norm <= options.gradient_tol) {
      summary.converged = true;
      break;
    }
    if (iter >= options.max_iters) break;

    bool accepted = false;
    for (double step = options.initial_step; step > 1e-20; step *= options.shrink) {
      Eigen::VectorXcd trial = c - step * tangent;
      trial /= trial.norm();
      const double trial_value = objective.value(trial);
      if (trial_value <= value - options.armijo * step * slope) {
        c = std::move(trial);
        value = objective.value_and_gradient(c, &grad);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    trajectory.push_back(value);
  }
  summary.deficit = value;
  return summary;
}

}  // namespace

OptimizationResult minimize_deficit(const SingletBasis& basis, const OptimizeOptions& options) {
  if (basis.empty()) throw DomainError("cannot optimize over an empty basis");
  if (options.restarts < 1) throw DomainError("need at least one restart");
  const DeficitObjective objective(basis);
  const Eigen::Index dim = objective.dimension();

  OptimizationResult result;
  result.floor = to_double(certify(basis.shape).deficit_floor);
  result.restarts = options.restarts;
  result.best_deficit = std::numeric_limits<double>::infinity();

  Rng rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    // A one-dimensional subspace is a single physical state.
    Eigen::VectorXcd c = dim == 1 ? Eigen::VectorXcd::Ones(1) : random_unit_vector(dim, rng);
    std::vector<double> trajectory;
    const RestartSummary summary = descend(objective, c, options, trajectory);
    result.per_restart.push_back(summary);
    if (summary.deficit < result.best_deficit) {
      result.best_deficit = summary.deficit;
      result.best_coefficients = c;
      result.best_restart = r;
      result.iterations = summary.iterations;
      result.converged = summary.converged;
      result.gradient_norm = summary.gradient_norm;
      result.trajectory = std::move(trajectory);
    }
  }
  result.best_state = objective.state(result.best_coefficients);
  return result;
}

double gradient_check(const SingletBasis& basis, const Eigen::VectorXcd& point, std::uint64_t seed) {
  const DeficitObjective objective(basis);
  if (objective.dimension() <= 1) return 0.0;
  if (std::abs(point.norm() - 1.0) > 1e-8) throw DomainError("gradient check point must be a unit vector");

  constexpr double kStep = 1e-5;
  constexpr int kDirections = 10;
  const Eigen::VectorXcd grad = objective.gradient(point);
  const double scale = tangent_projection(point, grad).norm();

  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < kDirections; ++k) {
    Eigen::VectorXcd v = tangent_projection(point, complex_gaussian(objective.dimension(), rng));
    v /= v.norm();
    const double analytic = grad.dot(v).real();
    const double numeric =
        (objective.value(point + kStep * v) - objective.value(point - kStep * v)) / (2.0 * kStep);
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-3 * scale, 1e-12});
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
  }
  return worst;
}

}  // namespace werner
