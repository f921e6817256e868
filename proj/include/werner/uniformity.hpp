#pragma once

#include <vector>

#include "werner/states.hpp"

namespace werner {

struct SubsystemDeviation {
  std::vector<int> sites;
  /// || tau_A - I / d^|A| ||_F^2
  double deviation = 0.0;
};

struct UniformityReport {
  int k = 0;
  std::vector<SubsystemDeviation> per_subsystem;
  std::vector<int> worst_subsystem;
  double deficit = 0.0;
  bool is_k_uniform = false;
};

/// Lexicographically ordered k-subsets of {0, ..., n-1}.
std::vector<std::vector<int>> subsystems_of_size(int n, int k);

/// Checks every subsystem of size exactly k; 1 <= k <= n-1.
UniformityReport is_k_uniform(const PureState& state, int k, double tol = kDefaultTolerance);

/// k-uniformity with k = floor(n/2). For n = 1 the condition is vacuous and
/// the report is empty with is_k_uniform = true.
UniformityReport is_ame(const PureState& state, double tol = kDefaultTolerance);

/// sum over site pairs of || tau_{a,b} - I/d^2 ||_F^2; zero iff two-uniform.
double pair_deficit(const PureState& state);

}  // namespace werner
