#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "werner/random.hpp"
#include "werner/states.hpp"

namespace werner {

/// Lemma-1 dichotomy: f(pi) = 1 for all pi, or f(pi) = sgn(pi).
enum class PermutationPhase { Trivial, Signum };

const char* to_string(PermutationPhase phase);
PermutationPhase permutation_phase_from_string(const std::string& name);

/// Orthonormal basis of the U (x) ... (x) U invariant subspace for one shape.
struct SingletBasis {
  SystemShape shape;
  std::vector<PureState> members;
  double tolerance = kDefaultTolerance;
  /// Hook-length count, recorded for the cross-check.
  std::uint64_t expected_dimension = 0;
  /// Empty when the numerical rank agrees with expected_dimension.
  std::string diagnostic;

  std::size_t dimension() const { return members.size(); }
  bool empty() const { return members.empty(); }
  /// sum_a c_a |member_a>
  PureState combine(const Eigen::VectorXcd& coefficients) const;
  /// Gram matrix <member_a | member_b>.
  Eigen::MatrixXcd gram() const;
};

/// Builds the singlet subspace as the common null space of the collective
/// traceless generators restricted to the uniform-profile support.
SingletBasis build_singlet_basis(const SystemShape& shape, double tol = kDefaultTolerance);

/// Number of standard Young tableaux of the d x K rectangle; 0 when d does not divide n.
std::uint64_t expected_dimension(const SystemShape& shape);

/// max over `samples` Haar unitaries of || U^{(x)n} psi - xi psi ||, xi = <psi|U^{(x)n}|psi>.
double verify_invariance(const PureState& state, int samples, std::uint64_t seed);

struct PhaseFunctionReport {
  PermutationPhase permutation_phase = PermutationPhase::Trivial;
  /// Sign f(theta_k) seen for each adjacent transposition (k, k+1).
  std::vector<int> transposition_signs;
  /// Integer m with xi(U) = det(U)^m on all samples.
  int det_power = 0;
  /// max |xi(U) - det(U)^m| over samples, and the worst transposition mismatch.
  double residual = 0.0;
};

PhaseFunctionReport extract_phase_function(const PureState& state, int samples, std::uint64_t seed,
                                           double tol = kDefaultTolerance);

/// Sign of a permutation given by its image list.
int permutation_sign(std::span<const Label> pi);

/// t_{pi(i)} = f(pi) t_i for every stored amplitude.
bool check_sign_relation(const PureState& state, std::span<const Label> pi, PermutationPhase phase,
                         double tol = kDefaultTolerance);

/// Every stored multi-index has N_k = K for all labels (integer check).
bool has_uniform_support(const PureState& state);

/// Random normalized state sum_a c_a |member_a> with complex Gaussian c.
PureState sample_from_basis(const SingletBasis& basis, Rng& rng, Eigen::VectorXcd* coefficients = nullptr);

}  // namespace werner
