#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace werner {

using Complex = std::complex<double>;
using Label = int;

/// Default for every approximate predicate (normalized, Hermitian, unitary, rank).
inline constexpr double kDefaultTolerance = 1e-9;

/// n particles with local dimension d.
class SystemShape {
 public:
  SystemShape(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }

  /// True when d divides n, i.e. when K = n / d is defined.
  bool divisible() const { return n_ % d_ == 0; }
  /// n / d; throws DomainError unless divisible().
  int K() const;
  /// d^n; throws DomainError if it does not fit in 64 bits.
  std::uint64_t hilbert_dimension() const;

  friend bool operator==(const SystemShape&, const SystemShape&) = default;

 private:
  int n_;
  int d_;
};

/// Occurrence count N_k of every label k in a multi-index.
struct SupportProfile {
  std::vector<int> counts;

  int total() const;
  bool is_uniform() const;
  /// N_k = K for all k.
  static SupportProfile uniform(const SystemShape& shape);

  friend bool operator==(const SupportProfile&, const SupportProfile&) = default;
};

/// One computational basis vector |i_1 ... i_n>. Ordered lexicographically.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<Label> labels) : labels_(std::move(labels)) {}
  MultiIndex(std::initializer_list<Label> labels) : labels_(labels) {}

  std::size_t size() const { return labels_.size(); }
  Label operator[](std::size_t site) const { return labels_[site]; }
  const std::vector<Label>& labels() const { return labels_; }

  bool valid_for(const SystemShape& shape) const;
  SupportProfile profile(int d) const;

  /// Mixed-radix code with site 0 most significant; preserves lexicographic order.
  std::uint64_t code(int d) const;
  static MultiIndex from_code(std::uint64_t code, const SystemShape& shape);

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<Label> labels_;
};

/// Sparse pure state sum_i t_i |i>. Immutable; only nonzero amplitudes are stored.
class PureState {
 public:
  using AmplitudeMap = std::map<MultiIndex, Complex>;

  /// Takes amplitudes as given (exact zeros dropped). No phase change.
  PureState(SystemShape shape, AmplitudeMap amplitudes);

  /// Product state |labels>.
  static PureState basis_state(SystemShape shape, const MultiIndex& index);
  /// Builds a state from a dense vector indexed by MultiIndex::code.
  static PureState from_dense(SystemShape shape, const Eigen::VectorXcd& dense,
                              double cutoff = 0.0);

  const SystemShape& shape() const { return shape_; }
  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  std::size_t support_size() const { return amplitudes_.size(); }
  Complex amplitude(const MultiIndex& index) const;

  double norm() const;
  bool is_normalized(double tol = kDefaultTolerance) const;
  PureState normalized() const;
  /// Global phase fixed so that the lexicographically smallest stored amplitude is real positive.
  PureState canonicalized() const;
  PureState scaled(Complex factor) const;

  Eigen::VectorXcd to_dense() const;

  /// <this|other>
  Complex inner(const PureState& other) const;
  /// max_i |t_i - s_i| over the union of supports.
  double distance_max(const PureState& other) const;
  bool approx_equal(const PureState& other, double tol = kDefaultTolerance) const;

 private:
  SystemShape shape_;
  AmplitudeMap amplitudes_;
};

enum class OperatorKind { GeneralUnitary, BasisPermutation, DiagonalPhase, LieGenerator };

/// A d x d single-site operator, applied identically on every site.
class LocalOperator {
 public:
  static LocalOperator unitary(Eigen::MatrixXcd matrix, double tol = kDefaultTolerance);
  /// Permutation matrix V(pi) with V |k> = |pi(k)>.
  static LocalOperator permutation(std::vector<Label> image);
  static LocalOperator diagonal_phase(std::span<const double> angles);
  static LocalOperator generator(Eigen::MatrixXcd matrix);
  static LocalOperator identity(int d);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  OperatorKind kind() const { return kind_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  /// Label image of a basis permutation; empty for other kinds.
  const std::vector<Label>& image() const { return image_; }

  bool is_unitary(double tol = kDefaultTolerance) const;

 private:
  LocalOperator(Eigen::MatrixXcd matrix, OperatorKind kind, std::vector<Label> image = {})
      : matrix_(std::move(matrix)), kind_(kind), image_(std::move(image)) {}

  Eigen::MatrixXcd matrix_;
  OperatorKind kind_;
  std::vector<Label> image_;
};

/// Reduced density matrix over `sites` (ascending), rows indexed by the truncated
/// multi-index i_A in lexicographic order.
struct MarginalMatrix {
  std::vector<int> sites;
  int d = 0;
  Eigen::MatrixXcd entries;

  double trace() const { return entries.trace().real(); }
  bool is_hermitian(double tol = kDefaultTolerance) const;
  bool is_psd(double tol = kDefaultTolerance) const;
  /// Squared Frobenius distance to the maximally mixed state I / d^|A|.
  double distance_to_maximally_mixed() const;
};

/// All multi-indices with the given label counts, lexicographically ordered.
std::vector<MultiIndex> enumerate_support(const SystemShape& shape, const SupportProfile& profile);
/// n! / prod_k N_k!
std::uint64_t multinomial(const SupportProfile& profile);

/// U (x) ... (x) U |psi>. Basis permutations act by exact relabeling.
PureState apply_local(const PureState& state, const LocalOperator& op);

/// Site relabeling: output amplitude at (i_{omega(0)}, ..., i_{omega(n-1)}) equals input at i.
/// Sites are 0-based.
PureState permute_particles(const PureState& state, std::span<const int> omega);

/// tau_A(i_A; j_A) = sum_{i_B} t_{i_A,i_B} conj(t_{j_A,i_B}). Sites are 0-based.
MarginalMatrix partial_trace(const PureState& state, std::span<const int> subsystem);

/// pi applied entrywise to a multi-index.
MultiIndex relabel(const MultiIndex& index, std::span<const Label> pi);

}  // namespace werner
