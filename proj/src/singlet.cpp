#include "werner/singlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "werner/errors.hpp"

namespace werner {

const char* to_string(PermutationPhase phase) {
  return phase == PermutationPhase::Signum ? "signum" : "trivial";
}

PermutationPhase permutation_phase_from_string(const std::string& name) {
  if (name == "signum") return PermutationPhase::Signum;
  if (name == "trivial") return PermutationPhase::Trivial;
  throw DomainError("unknown permutation phase '" + name + "'");
}

PureState SingletBasis::combine(const Eigen::VectorXcd& coefficients) const {
  if (static_cast<std::size_t>(coefficients.size()) != members.size())
    throw DomainError("coefficient vector does not match basis dimension");
  PureState::AmplitudeMap amps;
  for (std::size_t a = 0; a < members.size(); ++a) {
    const Complex c = coefficients[static_cast<Eigen::Index>(a)];
    for (const auto& [index, amp] : members[a].amplitudes()) amps[index] += c * amp;
  }
  return PureState(shape, std::move(amps));
}

Eigen::MatrixXcd SingletBasis::gram() const {
  const auto dim = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      g(a, b) = members[static_cast<std::size_t>(a)].inner(members[static_cast<std::size_t>(b)]);
  return g;
}

namespace {

// Real spanning set of the traceless local algebra. The imaginary off-diagonal
// generator -i(E_ab - E_ba) is replaced by E_ab - E_ba, which has the same kernel.
std::vector<Eigen::MatrixXd> traceless_generators(int d) {
  std::vector<Eigen::MatrixXd> gens;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(d, d);
      sym(a, b) = sym(b, a) = 1.0;
      Eigen::MatrixXd anti = Eigen::MatrixXd::Zero(d, d);
      anti(a, b) = 1.0;
      anti(b, a) = -1.0;
      gens.push_back(std::move(sym));
      gens.push_back(std::move(anti));
    }
  }
  for (int a = 0; a + 1 < d; ++a) {
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(d, d);
    diag(a, a) = 1.0;
    diag(a + 1, a + 1) = -1.0;
    gens.push_back(std::move(diag));
  }
  return gens;
}

// Stacks sum_alpha g^(alpha) for every generator, columns = support, rows =
// (generator, output multi-index).
Eigen::MatrixXd collective_generator_matrix(const SystemShape& shape,
                                            const std::vector<MultiIndex>& support) {
  const int n = shape.n();
  const int d = shape.d();
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    double value;
  };
  std::vector<Entry> entries;
  Eigen::Index rows = 0;

  for (const Eigen::MatrixXd& g : traceless_generators(d)) {
    std::unordered_map<std::uint64_t, Eigen::Index> row_of;
    for (std::size_t col = 0; col < support.size(); ++col) {
      std::vector<Label> labels = support[col].labels();
      for (int site = 0; site < n; ++site) {
        const Label in = labels[static_cast<std::size_t>(site)];
        for (Label out = 0; out < d; ++out) {
          const double v = g(out, in);
          if (v == 0.0) continue;
          labels[static_cast<std::size_t>(site)] = out;
          const std::uint64_t code = MultiIndex(labels).code(d);
          labels[static_cast<std::size_t>(site)] = in;
          auto [it, inserted] = row_of.try_emplace(code, rows);
          if (inserted) ++rows;
          entries.push_back({it->second, static_cast<Eigen::Index>(col), v});
        }
      }
    }
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(support.size()));
  for (const Entry& e : entries) a(e.row, e.col) += e.value;
  return a;
}

// Columns span the null space of `a`: singular values below tol * sigma_max are zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double tol) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double sigma_max = s.size() > 0 ? s[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol * sigma_max) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

// Deterministic orthonormal basis of span(q): project the support vectors in
// lexicographic order and keep those with a substantial new component.
std::vector<Eigen::VectorXd> lexicographic_orthonormalize(const Eigen::MatrixXd& q) {
  const Eigen::Index dim = q.cols();
  const Eigen::Index size = q.rows();
  std::vector<Eigen::VectorXd> accepted;
  if (dim == 0) return accepted;
  const Eigen::MatrixXd projector = q * q.transpose();

  auto orthogonalize = [&](Eigen::VectorXd v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Eigen::VectorXd& u : accepted) v -= u.dot(v) * u;
    return v;
  };

  for (double threshold : {1e-3, 1e-6}) {
    for (Eigen::Index s = 0; s < size && static_cast<Eigen::Index>(accepted.size()) < dim; ++s) {
      Eigen::VectorXd v = orthogonalize(projector.col(s));
      const double nrm = v.norm();
      if (nrm > threshold) accepted.push_back(v / nrm);
    }
  }
  for (Eigen::Index c = 0; c < dim && static_cast<Eigen::Index>(accepted.size()) < dim; ++c) {
    Eigen::VectorXd v = orthogonalize(q.col(c));
    const double nrm = v.norm();
    if (nrm > 1e-8) accepted.push_back(v / nrm);
  }
  return accepted;
}

// Entries below this magnitude in a unit basis vector are numerical zeros.
constexpr double kBasisCutoff = 1e-13;

}  // namespace

SingletBasis build_singlet_basis(const SystemShape& shape, double tol) {
  SingletBasis basis{shape, {}, tol, expected_dimension(shape), {}};
  if (!shape.divisible()) return basis;

  const std::vector<MultiIndex> support = enumerate_support(shape, SupportProfile::uniform(shape));
  const Eigen::MatrixXd generators = collective_generator_matrix(shape, support);
  const Eigen::MatrixXd kernel = null_space(generators, tol);

  for (const Eigen::VectorXd& v : lexicographic_orthonormalize(kernel)) {
    PureState::AmplitudeMap amps;
    for (std::size_t s = 0; s < support.size(); ++s) {
      const double x = v[static_cast<Eigen::Index>(s)];
      if (std::abs(x) > kBasisCutoff) amps.emplace(support[s], Complex(x, 0.0));
    }
    basis.members.push_back(PureState(shape, std::move(amps)).normalized().canonicalized());
  }

  if (basis.members.size() != basis.expected_dimension)
    basis.diagnostic = "numerical rank " + std::to_string(basis.members.size()) +
                       " differs from hook-length count " +
                       std::to_string(basis.expected_dimension);
  return basis;
}

std::uint64_t expected_dimension(const SystemShape& shape) {
  if (!shape.divisible()) return 0;
  using boost::multiprecision::cpp_int;
  const int rows = shape.d();
  const int cols = shape.K();
  cpp_int numerator = 1;
  for (int k = 2; k <= shape.n(); ++k) numerator *= k;
  cpp_int hooks = 1;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) hooks *= (cols - c - 1) + (rows - r - 1) + 1;
  const cpp_int count = numerator / hooks;
  if (count > std::numeric_limits<std::uint64_t>::max())
    throw DomainError("tableaux count exceeds 64 bits");
  return count.convert_to<std::uint64_t>();
}

namespace {

void require_normalized(const PureState& state) {
  if (!state.is_normalized(1e-8)) throw DomainError("state must be normalized");
}

// || a - xi b || over the union of supports.
double residual_norm(const PureState& a, const PureState& b, Complex xi) {
  double s = 0.0;
  for (const auto& [index, amp] : a.amplitudes()) s += std::norm(amp - xi * b.amplitude(index));
  for (const auto& [index, amp] : b.amplitudes())
    if (a.amplitudes().find(index) == a.amplitudes().end()) s += std::norm(xi * amp);
  return std::sqrt(s);
}

}  // namespace

double verify_invariance(const PureState& state, int samples, std::uint64_t seed) {
  if (samples <= 0) throw DomainError("verify_invariance needs at least one sample");
  require_normalized(state);
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const LocalOperator u = LocalOperator::unitary(haar_unitary(state.shape().d(), rng), 1e-8);
    const PureState moved = apply_local(state, u);
    const Complex xi = state.inner(moved);
    worst = std::max(worst, residual_norm(moved, state, xi));
  }
  return worst;
}

int permutation_sign(std::span<const Label> pi) {
  int inversions = 0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    for (std::size_t j = i + 1; j < pi.size(); ++j)
      if (pi[i] > pi[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

PhaseFunctionReport extract_phase_function(const PureState& state, int samples, std::uint64_t seed,
                                           double tol) {
  if (samples <= 0) throw DomainError("extract_phase_function needs at least one sample");
  require_normalized(state);
  const int d = state.shape().d();
  const int n = state.shape().n();
  PhaseFunctionReport report;

  for (int k = 0; k + 1 < d; ++k) {
    std::vector<Label> theta(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) theta[static_cast<std::size_t>(l)] = l;
    std::swap(theta[static_cast<std::size_t>(k)], theta[static_cast<std::size_t>(k + 1)]);
    const PureState moved = apply_local(state, LocalOperator::permutation(theta));
    const double plus = moved.distance_max(state);
    const double minus = moved.distance_max(state.scaled(-1.0));
    const int sign = plus <= minus ? 1 : -1;
    const double mismatch = std::min(plus, minus);
    if (mismatch > tol)
      throw InconsistencyError("transposition (" + std::to_string(k) + "," + std::to_string(k + 1) +
                               ") does not map the state to +/- itself");
    report.transposition_signs.push_back(sign);
    report.residual = std::max(report.residual, mismatch);
  }
  const auto& signs = report.transposition_signs;
  if (std::adjacent_find(signs.begin(), signs.end(), std::not_equal_to<>()) != signs.end())
    throw InconsistencyError("adjacent transpositions disagree in sign");
  report.permutation_phase =
      (!signs.empty() && signs.front() < 0) ? PermutationPhase::Signum : PermutationPhase::Trivial;

  Rng rng(seed);
  std::vector<std::pair<Complex, Complex>> observed;  // (xi, det U)
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXcd u = haar_unitary(d, rng);
    const Complex xi = state.inner(apply_local(state, LocalOperator::unitary(u, 1e-8)));
    observed.emplace_back(xi, u.determinant());
  }
  // xi and det U live on the unit circle, so arg-ratio rounding is branch
  // ambiguous; scan the admissible powers instead.
  double best_residual = std::numeric_limits<double>::infinity();
  for (int m = -n; m <= n; ++m) {
    double worst = 0.0;
    for (const auto& [xi, det] : observed) worst = std::max(worst, std::abs(xi - std::pow(det, m)));
    if (worst < best_residual) {
      best_residual = worst;
      report.det_power = m;
    }
  }
  if (best_residual > tol)
    throw InconsistencyError("no integer power of det(U) matches the measured phase (best residual " +
                             std::to_string(best_residual) + ")");
  report.residual = std::max(report.residual, best_residual);

  if (d >= 2) {
    const bool odd = report.det_power % 2 != 0;
    if (odd != (report.permutation_phase == PermutationPhase::Signum))
      throw InconsistencyError("permutation phase disagrees with parity of det power");
  }
  return report;
}

bool check_sign_relation(const PureState& state, std::span<const Label> pi, PermutationPhase phase,
                         double tol) {
  if (static_cast<int>(pi.size()) != state.shape().d())
    throw DomainError("label permutation has wrong length");
  const double f = phase == PermutationPhase::Signum ? permutation_sign(pi) : 1.0;
  std::vector<Label> inverse(pi.size());
  for (std::size_t k = 0; k < pi.size(); ++k) inverse[static_cast<std::size_t>(pi[k])] = static_cast<Label>(k);
  for (const auto& [index, amp] : state.amplitudes()) {
    if (std::abs(state.amplitude(relabel(index, pi)) - f * amp) > tol) return false;
    if (std::abs(amp - f * state.amplitude(relabel(index, inverse))) > tol) return false;
  }
  return true;
}

bool has_uniform_support(const PureState& state) {
  const SystemShape& shape = state.shape();
  if (!shape.divisible()) return false;
  return std::all_of(state.amplitudes().begin(), state.amplitudes().end(),
                     [&](const auto& kv) { return kv.first.profile(shape.d()).is_uniform(); });
}

PureState sample_from_basis(const SingletBasis& basis, Rng& rng, Eigen::VectorXcd* coefficients) {
  if (basis.empty()) throw DomainError("cannot sample from an empty basis");
  Eigen::VectorXcd c = random_unit_vector(static_cast<Eigen::Index>(basis.dimension()), rng);
  PureState state = basis.combine(c).normalized();
  if (coefficients != nullptr) *coefficients = c;
  return state;
}

}  // namespace werner
