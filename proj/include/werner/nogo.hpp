#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "werner/singlet.hpp"
#include "werner/states.hpp"

namespace werner {

using Rational = boost::rational<std::int64_t>;

/// Exact bookkeeping of the pair-diagonal counting argument for one shape.
///
/// Two-uniformity forces sum_{a<b} sum_l tau_{ab}(l,l;l,l) = C(n,2)/d
/// ("required"), while any normalized state supported on multi-indices with
/// every label exactly K times gives d*C(K,2) ("actual"). The difference is
/// gap = K(d-1)/2. The d*C(n,2) diagonal deviations tau_{ab}(l,l;l,l) - 1/d^2
/// therefore sum to -gap, and by Cauchy-Schwarz their squares sum to at least
/// gap^2 / (d*C(n,2)). The squared Frobenius deficit dominates that diagonal
/// part, which gives deficit_floor.
struct NoGoCertificate {
  int n = 0;
  int d = 0;
  /// False when d does not divide n: no state has the required uniform support.
  bool singlets_exist = false;
  int K = 0;
  Rational required{0};
  Rational actual{0};
  Rational gap{0};
  Rational deficit_floor{0};
  /// d >= 2 and n >= 2; d = 1 is the degenerate single product state.
  bool in_scope = false;
  bool two_uniform_impossible = false;
  /// AME means floor(n/2)-uniform; for n <= 3 that is 1-uniformity, which every singlet has.
  bool ame_possible = false;
  std::string verdict;
  std::string derivation;
};

NoGoCertificate certify(const SystemShape& shape);

/// sum_{a<b} sum_l tau_{ab}(l,l;l,l), computed from the pair marginals.
/// Throws DomainError unless every stored multi-index has the uniform profile.
double counting_sum(const PureState& state);

struct NumericalCertificateReport {
  int trials = 0;
  double counting_target = 0.0;
  double deficit_floor = 0.0;
  double min_deficit = 0.0;
  double max_identity_residual = 0.0;
  double max_invariance_residual = 0.0;
};

/// Samples random states from the subspace and checks, per trial, that the
/// state is invariant, that counting_sum = d*C(K,2), and that
/// pair_deficit >= deficit_floor. Throws CertificateViolation on any failure.
NumericalCertificateReport verify_certificate_numerically(const SingletBasis& basis, int trials,
                                                          std::uint64_t seed,
                                                          double tol = kDefaultTolerance);

double to_double(const Rational& r);
std::int64_t binomial2(std::int64_t m);

}  // namespace werner
