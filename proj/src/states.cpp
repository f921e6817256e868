#include "werner/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "werner/errors.hpp"

namespace werner {

SystemShape::SystemShape(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 1)
    throw DomainError("shape requires n >= 1 and d >= 1, got n=" + std::to_string(n) +
                      " d=" + std::to_string(d));
}

int SystemShape::K() const {
  if (!divisible())
    throw DomainError("K = n/d undefined: d=" + std::to_string(d_) +
                      " does not divide n=" + std::to_string(n_));
  return n_ / d_;
}

std::uint64_t SystemShape::hilbert_dimension() const {
  std::uint64_t dim = 1;
  for (int i = 0; i < n_; ++i) {
    if (dim > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d_))
      throw DomainError("d^n does not fit in 64 bits");
    dim *= static_cast<std::uint64_t>(d_);
  }
  return dim;
}

int SupportProfile::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

bool SupportProfile::is_uniform() const {
  return std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
}

SupportProfile SupportProfile::uniform(const SystemShape& shape) {
  return SupportProfile{std::vector<int>(static_cast<std::size_t>(shape.d()), shape.K())};
}

bool MultiIndex::valid_for(const SystemShape& shape) const {
  if (static_cast<int>(labels_.size()) != shape.n()) return false;
  return std::all_of(labels_.begin(), labels_.end(),
                     [&](Label l) { return l >= 0 && l < shape.d(); });
}

SupportProfile MultiIndex::profile(int d) const {
  SupportProfile p{std::vector<int>(static_cast<std::size_t>(d), 0)};
  for (Label l : labels_) ++p.counts[static_cast<std::size_t>(l)];
  return p;
}

std::uint64_t MultiIndex::code(int d) const {
  std::uint64_t c = 0;
  for (Label l : labels_) c = c * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(l);
  return c;
}

MultiIndex MultiIndex::from_code(std::uint64_t code, const SystemShape& shape) {
  std::vector<Label> labels(static_cast<std::size_t>(shape.n()));
  const auto d = static_cast<std::uint64_t>(shape.d());
  for (int site = shape.n() - 1; site >= 0; --site) {
    labels[static_cast<std::size_t>(site)] = static_cast<Label>(code % d);
    code /= d;
  }
  return MultiIndex(std::move(labels));
}

// ---------------------------------------------------------------------------

PureState::PureState(SystemShape shape, AmplitudeMap amplitudes)
    : shape_(shape), amplitudes_(std::move(amplitudes)) {
  std::erase_if(amplitudes_, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
  for (const auto& [index, amp] : amplitudes_) {
    if (!index.valid_for(shape_))
      throw DomainError("multi-index does not match shape (n=" + std::to_string(shape_.n()) +
                        ", d=" + std::to_string(shape_.d()) + ")");
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
      throw DomainError("non-finite amplitude");
  }
}

PureState PureState::basis_state(SystemShape shape, const MultiIndex& index) {
  return PureState(shape, {{index, Complex(1.0, 0.0)}});
}

PureState PureState::from_dense(SystemShape shape, const Eigen::VectorXcd& dense, double cutoff) {
  if (static_cast<std::uint64_t>(dense.size()) != shape.hilbert_dimension())
    throw DomainError("dense vector length does not match d^n");
  AmplitudeMap amps;
  for (Eigen::Index c = 0; c < dense.size(); ++c)
    if (std::abs(dense[c]) > cutoff)
      amps.emplace(MultiIndex::from_code(static_cast<std::uint64_t>(c), shape), dense[c]);
  return PureState(shape, std::move(amps));
}

Complex PureState::amplitude(const MultiIndex& index) const {
  auto it = amplitudes_.find(index);
  return it == amplitudes_.end() ? Complex(0.0, 0.0) : it->second;
}

double PureState::norm() const {
  double s = 0.0;
  for (const auto& kv : amplitudes_) s += std::norm(kv.second);
  return std::sqrt(s);
}

bool PureState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

PureState PureState::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw DomainError("cannot normalize the zero vector");
  return scaled(Complex(1.0 / nrm, 0.0));
}

PureState PureState::canonicalized() const {
  if (amplitudes_.empty()) return *this;
  const Complex lead = amplitudes_.begin()->second;
  return scaled(std::abs(lead) / lead);
}

PureState PureState::scaled(Complex factor) const {
  AmplitudeMap amps = amplitudes_;
  for (auto& kv : amps) kv.second *= factor;
  return PureState(shape_, std::move(amps));
}

Eigen::VectorXcd PureState::to_dense() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape_.hilbert_dimension()));
  for (const auto& [index, amp] : amplitudes_)
    v[static_cast<Eigen::Index>(index.code(shape_.d()))] = amp;
  return v;
}

Complex PureState::inner(const PureState& other) const {
  if (!(shape_ == other.shape_)) throw DomainError("inner product of states with different shapes");
  Complex s(0.0, 0.0);
  for (const auto& [index, amp] : amplitudes_) s += std::conj(amp) * other.amplitude(index);
  return s;
}

double PureState::distance_max(const PureState& other) const {
  if (!(shape_ == other.shape_)) throw DomainError("comparing states with different shapes");
  double worst = 0.0;
  for (const auto& [index, amp] : amplitudes_)
    worst = std::max(worst, std::abs(amp - other.amplitude(index)));
  for (const auto& [index, amp] : other.amplitudes_)
    worst = std::max(worst, std::abs(amp - amplitude(index)));
  return worst;
}

bool PureState::approx_equal(const PureState& other, double tol) const {
  return shape_ == other.shape_ && distance_max(other) <= tol;
}

// ---------------------------------------------------------------------------

LocalOperator LocalOperator::unitary(Eigen::MatrixXcd matrix, double tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
    throw DomainError("local operator must be a nonempty square matrix");
  LocalOperator op(std::move(matrix), OperatorKind::GeneralUnitary);
  if (!op.is_unitary(tol)) throw DomainError("matrix is not unitary to tolerance");
  return op;
}

LocalOperator LocalOperator::permutation(std::vector<Label> image) {
  const auto d = static_cast<Eigen::Index>(image.size());
  if (d < 1) throw DomainError("empty permutation");
  std::vector<bool> seen(image.size(), false);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Label to = image[static_cast<std::size_t>(k)];
    if (to < 0 || to >= d || seen[static_cast<std::size_t>(to)])
      throw DomainError("label map is not a permutation");
    seen[static_cast<std::size_t>(to)] = true;
    m(to, k) = 1.0;
  }
  return LocalOperator(std::move(m), OperatorKind::BasisPermutation, std::move(image));
}

LocalOperator LocalOperator::diagonal_phase(std::span<const double> angles) {
  if (angles.empty()) throw DomainError("empty phase list");
  const auto d = static_cast<Eigen::Index>(angles.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) m(k, k) = std::polar(1.0, angles[static_cast<std::size_t>(k)]);
  return LocalOperator(std::move(m), OperatorKind::DiagonalPhase);
}

LocalOperator LocalOperator::generator(Eigen::MatrixXcd matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
    throw DomainError("local operator must be a nonempty square matrix");
  return LocalOperator(std::move(matrix), OperatorKind::LieGenerator);
}

LocalOperator LocalOperator::identity(int d) {
  std::vector<Label> image(static_cast<std::size_t>(d));
  std::iota(image.begin(), image.end(), 0);
  return permutation(std::move(image));
}

bool LocalOperator::is_unitary(double tol) const {
  const auto d = matrix_.rows();
  return (matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------

bool MarginalMatrix::is_hermitian(double tol) const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool MarginalMatrix::is_psd(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

double MarginalMatrix::distance_to_maximally_mixed() const {
  const auto dim = entries.rows();
  const Eigen::MatrixXcd delta =
      entries - Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  return delta.squaredNorm();
}

// ---------------------------------------------------------------------------

std::vector<MultiIndex> enumerate_support(const SystemShape& shape, const SupportProfile& profile) {
  if (static_cast<int>(profile.counts.size()) != shape.d())
    throw DomainError("profile must have one count per label");
  if (std::any_of(profile.counts.begin(), profile.counts.end(), [](int c) { return c < 0; }))
    throw DomainError("profile counts must be nonnegative");
  if (profile.total() != shape.n())
    throw DomainError("profile counts sum to " + std::to_string(profile.total()) +
                      ", expected n=" + std::to_string(shape.n()));

  // The lexicographically smallest arrangement is the sorted multiset;
  // next_permutation then walks every distinct arrangement in order.
  std::vector<Label> labels;
  labels.reserve(static_cast<std::size_t>(shape.n()));
  for (int k = 0; k < shape.d(); ++k)
    labels.insert(labels.end(), static_cast<std::size_t>(profile.counts[static_cast<std::size_t>(k)]), k);

  std::vector<MultiIndex> out;
  do {
    out.emplace_back(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

std::uint64_t multinomial(const SupportProfile& profile) {
  // Product of binomials C(running total, N_k), each step exact.
  std::uint64_t result = 1;
  int placed = 0;
  for (int c : profile.counts) {
    for (int j = 1; j <= c; ++j) {
      ++placed;
      result = result * static_cast<std::uint64_t>(placed) / static_cast<std::uint64_t>(j);
    }
  }
  return result;
}

MultiIndex relabel(const MultiIndex& index, std::span<const Label> pi) {
  std::vector<Label> out(index.size());
  for (std::size_t a = 0; a < index.size(); ++a) out[a] = pi[static_cast<std::size_t>(index[a])];
  return MultiIndex(std::move(out));
}

namespace {

PureState apply_permutation(const PureState& state, std::span<const Label> image) {
  PureState::AmplitudeMap out;
  for (const auto& [index, amp] : state.amplitudes()) out.emplace(relabel(index, image), amp);
  return PureState(state.shape(), std::move(out));
}

// Drops numerical dust produced by dense single-site products.
constexpr double kApplyCutoff = 1e-15;

}  // namespace

PureState apply_local(const PureState& state, const LocalOperator& op) {
  const SystemShape& shape = state.shape();
  if (op.dim() != shape.d())
    throw DomainError("operator dimension " + std::to_string(op.dim()) +
                      " does not match local dimension " + std::to_string(shape.d()));
  if (op.kind() == OperatorKind::BasisPermutation) return apply_permutation(state, op.image());

  const int d = shape.d();
  const Eigen::MatrixXcd& u = op.matrix();

  // One site at a time over integer codes; stride of site s is d^(n-1-s).
  std::unordered_map<std::uint64_t, Complex> current;
  for (const auto& [index, amp] : state.amplitudes()) current.emplace(index.code(d), amp);

  std::uint64_t stride = 1;
  for (int site = shape.n() - 1; site >= 0; --site) {
    std::unordered_map<std::uint64_t, Complex> next;
    next.reserve(current.size() * static_cast<std::size_t>(d));
    for (const auto& [code, amp] : current) {
      const auto label = static_cast<Eigen::Index>((code / stride) % static_cast<std::uint64_t>(d));
      const std::uint64_t base = code - static_cast<std::uint64_t>(label) * stride;
      for (Eigen::Index out = 0; out < d; ++out) {
        const Complex m = u(out, label);
        if (m == Complex(0.0, 0.0)) continue;
        next[base + static_cast<std::uint64_t>(out) * stride] += m * amp;
      }
    }
    current = std::move(next);
    stride *= static_cast<std::uint64_t>(d);
  }

  double scale = 0.0;
  for (const auto& kv : current) scale = std::max(scale, std::abs(kv.second));
  PureState::AmplitudeMap amps;
  for (const auto& [code, amp] : current)
    if (std::abs(amp) > kApplyCutoff * scale) amps.emplace(MultiIndex::from_code(code, shape), amp);
  return PureState(shape, std::move(amps));
}

PureState permute_particles(const PureState& state, std::span<const int> omega) {
  const int n = state.shape().n();
  if (static_cast<int>(omega.size()) != n) throw DomainError("site permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int s : omega) {
    if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)])
      throw DomainError("malformed site permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }
  PureState::AmplitudeMap out;
  for (const auto& [index, amp] : state.amplitudes()) {
    std::vector<Label> moved(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) moved[static_cast<std::size_t>(a)] = index[static_cast<std::size_t>(omega[static_cast<std::size_t>(a)])];
    out.emplace(MultiIndex(std::move(moved)), amp);
  }
  return PureState(state.shape(), std::move(out));
}

MarginalMatrix partial_trace(const PureState& state, std::span<const int> subsystem) {
  const SystemShape& shape = state.shape();
  const int n = shape.n();
  const int d = shape.d();
  if (subsystem.empty()) throw DomainError("subsystem must be nonempty");

  std::vector<int> sites(subsystem.begin(), subsystem.end());
  std::sort(sites.begin(), sites.end());
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw DomainError("subsystem lists a site twice");
  if (sites.front() < 0 || sites.back() >= n)
    throw DomainError("subsystem site out of range [0, " + std::to_string(n) + ")");

  std::vector<bool> in_a(static_cast<std::size_t>(n), false);
  for (int s : sites) in_a[static_cast<std::size_t>(s)] = true;

  Eigen::Index dim_a = 1;
  for (std::size_t k = 0; k < sites.size(); ++k) dim_a *= d;

  // Group amplitudes by the complement's labels i_B.
  std::map<std::vector<Label>, std::vector<std::pair<Eigen::Index, Complex>>> by_rest;
  for (const auto& [index, amp] : state.amplitudes()) {
    Eigen::Index row = 0;
    std::vector<Label> rest;
    rest.reserve(static_cast<std::size_t>(n) - sites.size());
    for (int a = 0; a < n; ++a) {
      if (in_a[static_cast<std::size_t>(a)])
        row = row * d + index[static_cast<std::size_t>(a)];
      else
        rest.push_back(index[static_cast<std::size_t>(a)]);
    }
    by_rest[std::move(rest)].emplace_back(row, amp);
  }

  MarginalMatrix m{std::move(sites), d, Eigen::MatrixXcd::Zero(dim_a, dim_a)};
  for (const auto& [rest, column] : by_rest)
    for (const auto& [i, ti] : column)
      for (const auto& [j, tj] : column) m.entries(i, j) += ti * std::conj(tj);
  return m;
}

}  // namespace werner
