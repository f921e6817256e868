#include "werner/uniformity.hpp"

#include <string>

#include "werner/errors.hpp"

namespace werner {

std::vector<std::vector<int>> subsystems_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(current);
    int pos = k - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++current[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j)
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

namespace {

void require_normalized(const PureState& state) {
  if (!state.is_normalized(1e-8)) throw DomainError("state must be normalized");
}

}  // namespace

UniformityReport is_k_uniform(const PureState& state, int k, double tol) {
  const int n = state.shape().n();
  if (k < 1 || k > n - 1)
    throw DomainError("k=" + std::to_string(k) + " outside [1, n-1] for n=" + std::to_string(n));
  require_normalized(state);

  UniformityReport report;
  report.k = k;
  double worst = -1.0;
  for (auto& sites : subsystems_of_size(n, k)) {
    const double dev = partial_trace(state, sites).distance_to_maximally_mixed();
    report.deficit += dev;
    if (dev > worst) {
      worst = dev;
      report.worst_subsystem = sites;
    }
    report.per_subsystem.push_back({std::move(sites), dev});
  }
  report.is_k_uniform = report.deficit <= tol;
  return report;
}

UniformityReport is_ame(const PureState& state, double tol) {
  const int k = state.shape().n() / 2;
  if (k == 0) {
    require_normalized(state);
    UniformityReport vacuous;
    vacuous.is_k_uniform = true;
    return vacuous;
  }
  return is_k_uniform(state, k, tol);
}

double pair_deficit(const PureState& state) {
  const int n = state.shape().n();
  if (n < 2) throw DomainError("pair deficit needs at least two particles");
  require_normalized(state);
  double total = 0.0;
  for (const auto& pair : subsystems_of_size(n, 2))
    total += partial_trace(state, pair).distance_to_maximally_mixed();
  return total;
}

}  // namespace werner
