#include "werner/nogo.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "werner/errors.hpp"
#include "werner/uniformity.hpp"

namespace werner {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t binomial2(std::int64_t m) { return m * (m - 1) / 2; }

namespace {

std::string render(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

}  // namespace

NoGoCertificate certify(const SystemShape& shape) {
  NoGoCertificate cert;
  cert.n = shape.n();
  cert.d = shape.d();
  cert.singlets_exist = shape.divisible();
  if (!cert.singlets_exist) {
    cert.verdict = "no singlet states: every label must occur the same number of times, "
                   "which needs d | n";
    cert.derivation = "support of a singlet state has N_k = n/d for all labels k";
    return cert;
  }

  const std::int64_t n = shape.n();
  const std::int64_t d = shape.d();
  const std::int64_t k = shape.K();
  cert.K = shape.K();
  const std::int64_t pairs = binomial2(n);
  cert.required = Rational(pairs, d);
  cert.actual = Rational(d * binomial2(k));
  cert.gap = cert.required - cert.actual;
  cert.deficit_floor = pairs == 0 ? Rational(0) : cert.gap * cert.gap / Rational(d * pairs);
  cert.in_scope = d >= 2 && n >= 2;
  cert.two_uniform_impossible = cert.in_scope && cert.gap > Rational(0);
  cert.ame_possible = n <= 3 ? true : !cert.two_uniform_impossible;

  std::ostringstream v;
  if (!cert.in_scope) {
    v << "degenerate shape (d=1 or n<2): the only state is a product state, outside the no-go";
  } else {
    v << "no singlet state is two-uniform (gap " << render(cert.gap) << " > 0)";
    if (n <= 3)
      v << "; AME needs only 1-uniformity for n <= 3, so AME singlet states exist";
    else
      v << "; n >= 4 makes AME imply two-uniformity, so no AME singlet state exists";
  }
  cert.verdict = v.str();

  std::ostringstream why;
  why << "two-uniformity requires sum_{a<b} sum_l tau_ab(l,l;l,l) = C(n,2)/d = "
      << render(cert.required) << "; uniform support with K=" << k << " gives d*C(K,2) = "
      << render(cert.actual) << "; gap = K(d-1)/2 = " << render(cert.gap)
      << "; the d*C(n,2) = " << d * pairs
      << " diagonal deviations sum to -gap, so by Cauchy-Schwarz the pair deficit is at least "
         "gap^2/(d*C(n,2)) = "
      << render(cert.deficit_floor);
  cert.derivation = why.str();
  return cert;
}

double counting_sum(const PureState& state) {
  if (!has_uniform_support(state))
    throw DomainError("counting identity needs every label to occur exactly K times");
  const int n = state.shape().n();
  const int d = state.shape().d();
  double total = 0.0;
  for (const auto& pair : subsystems_of_size(n, 2)) {
    const MarginalMatrix m = partial_trace(state, pair);
    for (int l = 0; l < d; ++l) total += m.entries(l * d + l, l * d + l).real();
  }
  return total;
}

NumericalCertificateReport verify_certificate_numerically(const SingletBasis& basis, int trials,
                                                          std::uint64_t seed, double tol) {
  if (basis.empty()) throw DomainError("numerical certificate needs a nonempty basis");
  if (trials <= 0) throw DomainError("numerical certificate needs at least one trial");
  const NoGoCertificate cert = certify(basis.shape);

  NumericalCertificateReport report;
  report.trials = trials;
  report.counting_target = to_double(cert.actual);
  report.deficit_floor = to_double(cert.deficit_floor);
  report.min_deficit = std::numeric_limits<double>::infinity();

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const PureState state = sample_from_basis(basis, rng);
    const std::uint64_t invariance_seed = rng();
    const double invariance = verify_invariance(state, 2, invariance_seed);
    report.max_invariance_residual = std::max(report.max_invariance_residual, invariance);
    if (invariance > tol)
      throw CertificateViolation("trial " + std::to_string(t) +
                                 ": sampled state is not invariant (residual " +
                                 std::to_string(invariance) + ")");
    if (!has_uniform_support(state))
      throw CertificateViolation("trial " + std::to_string(t) + ": support is not uniform");

    const double residual = std::abs(counting_sum(state) - report.counting_target);
    report.max_identity_residual = std::max(report.max_identity_residual, residual);
    if (residual > tol)
      throw CertificateViolation("trial " + std::to_string(t) + ": counting identity off by " +
                                 std::to_string(residual));

    if (state.shape().n() >= 2) {
      const double deficit = pair_deficit(state);
      report.min_deficit = std::min(report.min_deficit, deficit);
      if (deficit < report.deficit_floor - tol)
        throw CertificateViolation("trial " + std::to_string(t) + ": pair deficit " +
                                   std::to_string(deficit) + " below floor " +
                                   std::to_string(report.deficit_floor));
    }
  }
  if (basis.shape.n() < 2) report.min_deficit = 0.0;
  return report;
}

}  // namespace werner
