// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "werner/io.hpp"
#include "werner/nogo.hpp"
#include "werner/optimize.hpp"
#include "werner/singlet.hpp"
#include "werner/uniformity.hpp"

using namespace werner;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

PureState fixture(const std::string& name) {
  return io::state_from_json(io::read_json(std::string(WERNER_FIXTURE_DIR) + "/" + name));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::vector<Label>> all_permutations(int d) {
  std::vector<Label> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Label>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct ShapeCase {
  int n;
  int d;
  std::size_t dimension;
};

const std::vector<ShapeCase> kDimensionCases = {{2, 2, 1}, {3, 3, 1}, {4, 2, 2}, {3, 2, 0},
                                                {5, 2, 0}, {4, 3, 0}, {6, 2, 5}, {6, 3, 5}};

Outcome subspace_dimensions() {
  Outcome o;
  for (const auto& c : kDimensionCases) {
    const auto t0 = std::chrono::steady_clock::now();
    const SingletBasis b = build_singlet_basis(SystemShape(c.n, c.d));
    const double elapsed = seconds_since(t0);
    o.require(b.dimension() == c.dimension, fmt::format("({},{}) dimension {} != {}", c.n, c.d, b.dimension(), c.dimension));
    o.require(elapsed < 10.0, fmt::format("({},{}) took {:.2f} s", c.n, c.d, elapsed));
  }
  o.detail = o.pass ? "dims 1,1,2,0,0,0,5,5 for (2,2),(3,3),(4,2),(3,2),(5,2),(4,3),(6,2),(6,3)" : o.detail;
  return o;
}

// Shared random singlet samples for criteria 2, 3 and 5.
struct Samples {
  std::vector<std::pair<SystemShape, std::vector<PureState>>> by_shape;
};

Samples draw_samples() {
  Samples s;
  Rng rng(20240601);
  for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}}) {
    const SingletBasis b = build_singlet_basis(SystemShape(n, d));
    std::vector<PureState> states;
    for (int t = 0; t < 100; ++t) states.push_back(sample_from_basis(b, rng));
    s.by_shape.emplace_back(b.shape, std::move(states));
  }
  return s;
}

Outcome counting_identity(const Samples& samples) {
  Outcome o;
  double worst = 0.0;
  for (const auto& [shape, states] : samples.by_shape) {
    const double target = shape.d() * static_cast<double>(binomial2(shape.K()));
    for (const PureState& psi : states) worst = std::max(worst, std::abs(counting_sum(psi) - target));
  }
  o.require(worst <= 1e-9, fmt::format("max residual {:.3e}", worst));
  const NoGoCertificate six = certify(SystemShape(6, 2));
  o.require(six.actual == Rational(6) && six.required == Rational(15, 2), "(6,2) certificate values");
  if (o.pass) o.detail = fmt::format("300 states, max |S - d C(K,2)| = {:.3e}; (6,2): 6 vs required 15/2", worst);
  return o;
}

Outcome automatic_one_uniformity(const Samples& samples) {
  Outcome o;
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& [shape, states] : samples.by_shape)
    for (const PureState& psi : states) {
      const UniformityReport r = is_k_uniform(psi, 1, 1e-10);
      worst = std::max(worst, r.deficit);
      o.require(r.is_k_uniform, "sample not 1-uniform");
      ++count;
    }
  for (const char* name : {"psi_minus.json", "psi3.json", "psi4.json"}) {
    const UniformityReport r = is_k_uniform(fixture(name), 1, 1e-10);
    worst = std::max(worst, r.deficit);
    o.require(r.is_k_uniform, std::string(name) + " not 1-uniform");
    ++count;
  }
  o.require(worst <= 1e-10, fmt::format("max deficit {:.3e}", worst));
  if (o.pass) o.detail = fmt::format("{} singlet states, max 1-site deficit {:.3e}", count, worst);
  return o;
}

Outcome no_go_confirmation() {
  Outcome o;
  struct Case {
    int n, d;
    Rational floor;
  };
  std::string summary;
  for (const Case& c : {Case{4, 2, Rational(1, 12)}, Case{6, 2, Rational(3, 40)}, Case{3, 3, Rational(1, 9)},
                        Case{6, 3, Rational(4, 45)}}) {
    const NoGoCertificate cert = certify(SystemShape(c.n, c.d));
    o.require(cert.deficit_floor == c.floor, fmt::format("({},{}) floor mismatch", c.n, c.d));
    const auto t0 = std::chrono::steady_clock::now();
    const SingletBasis b = build_singlet_basis(SystemShape(c.n, c.d));
    const OptimizationResult r = minimize_deficit(b, {.restarts = 16, .seed = 7});
    const double elapsed = seconds_since(t0);
    const double floor = to_double(cert.deficit_floor);
    o.require(r.restarts >= 16, "fewer than 16 restarts");
    o.require(r.best_deficit >= floor - 1e-9, fmt::format("({},{}) best {:.6g} below floor {:.6g}", c.n, c.d, r.best_deficit, floor));
    o.require(r.best_deficit > 1e-3, fmt::format("({},{}) best {:.3e} not > 1e-3", c.n, c.d, r.best_deficit));
    o.require(elapsed < 60.0, fmt::format("({},{}) took {:.1f} s", c.n, c.d, elapsed));
    summary += fmt::format("{}({},{}) best {:.6f} >= floor {}/{} [{:.1f}s]", summary.empty() ? "" : ", ", c.n, c.d,
                           r.best_deficit, cert.deficit_floor.numerator(), cert.deficit_floor.denominator(), elapsed);
  }
  if (o.pass) o.detail = summary;
  return o;
}

Outcome ame_corollary(const Samples& samples) {
  Outcome o;
  o.require(is_ame(fixture("psi_minus.json")).is_k_uniform, "psi- not AME");
  o.require(is_ame(fixture("psi3.json")).is_k_uniform, "psi3 not AME");
  std::size_t rejected = 0;
  for (const auto& [shape, states] : samples.by_shape) {
    if (shape.d() != 2) continue;
    for (const PureState& psi : states) {
      const bool ame = is_ame(psi).is_k_uniform;
      o.require(!ame, fmt::format("sample from ({},{}) reported AME", shape.n(), shape.d()));
      rejected += ame ? 0 : 1;
    }
  }
  if (o.pass) o.detail = fmt::format("psi-, psi3 AME; {} sampled (4,2)/(6,2) states not AME", rejected);
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  o.require(extract_phase_function(fixture("psi_minus.json"), 10, 1).permutation_phase == PermutationPhase::Signum,
            "psi- phase");
  o.require(extract_phase_function(fixture("psi3.json"), 10, 1).permutation_phase == PermutationPhase::Signum,
            "psi3 phase");
  o.require(extract_phase_function(fixture("psi4.json"), 10, 1).permutation_phase == PermutationPhase::Trivial,
            "psi4 phase");
  std::size_t relations = 0;
  std::size_t indices = 0;
  for (const auto& c : kDimensionCases) {
    const SingletBasis b = build_singlet_basis(SystemShape(c.n, c.d));
    const auto perms = all_permutations(c.d);
    for (const PureState& m : b.members) {
      const PhaseFunctionReport phase = extract_phase_function(m, 10, 2);
      for (const auto& pi : perms) {
        o.require(check_sign_relation(m, pi, phase.permutation_phase), fmt::format("sign relation at ({},{})", c.n, c.d));
        ++relations;
      }
      for (const auto& [index, amp] : m.amplitudes()) {
        for (int count : index.profile(c.d).counts)
          o.require(count * c.d == c.n, fmt::format("support count at ({},{})", c.n, c.d));
        ++indices;
      }
    }
  }
  if (o.pass)
    o.detail = fmt::format("phases signum/signum/trivial; {} sign relations; {} support indices with N_k = K",
                           relations, indices);
  return o;
}

Outcome numerical_hygiene() {
  Outcome o;
  Rng rng(99);
  double worst_gradient = 0.0;
  for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}}) {
    const SingletBasis b = build_singlet_basis(SystemShape(n, d));
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXcd c = random_unit_vector(static_cast<Eigen::Index>(b.dimension()), rng);
      worst_gradient = std::max(worst_gradient, gradient_check(b, c, rng()));
    }
  }
  o.require(worst_gradient <= 1e-5, fmt::format("gradient rel error {:.3e}", worst_gradient));

  double worst_invariance = 0.0;
  for (const auto& c : kDimensionCases) {
    const SingletBasis b = build_singlet_basis(SystemShape(c.n, c.d));
    for (const PureState& m : b.members) worst_invariance = std::max(worst_invariance, verify_invariance(m, 20, rng()));
  }
  o.require(worst_invariance <= 1e-8, fmt::format("invariance residual {:.3e}", worst_invariance));

  double worst_trace = 0.0;
  double worst_herm = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const SystemShape shape(2 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 2));
    const auto dim = static_cast<Eigen::Index>(shape.hilbert_dimension());
    const PureState psi = PureState::from_dense(shape, random_unit_vector(dim, rng));
    std::vector<int> sites;
    for (int s = 0; s < shape.n(); ++s)
      if (rng() % 2 == 0) sites.push_back(s);
    if (sites.empty()) sites.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(shape.n())));
    const MarginalMatrix m = partial_trace(psi, sites);
    worst_trace = std::max(worst_trace, std::abs(m.trace() - 1.0));
    worst_herm = std::max(worst_herm, (m.entries - m.entries.adjoint()).cwiseAbs().maxCoeff());
  }
  o.require(worst_trace <= 1e-10 && worst_herm <= 1e-10,
            fmt::format("partial trace trace err {:.3e}, hermiticity err {:.3e}", worst_trace, worst_herm));
  if (o.pass)
    o.detail = fmt::format("gradient {:.2e}; invariance {:.2e}; 1000 marginals trace {:.2e} herm {:.2e}", worst_gradient,
                           worst_invariance, worst_trace, worst_herm);
  return o;
}

Outcome psi4_marginal() {
  Outcome o;
  const MarginalMatrix m = partial_trace(fixture("psi4.json"), std::vector<int>{0, 1});
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1.0 / 3.0;
  expected(1, 1) = expected(2, 2) = expected(1, 2) = expected(2, 1) = 1.0 / 6.0;
  const double err = (m.entries - expected).cwiseAbs().maxCoeff();
  o.require(err <= 1e-12, fmt::format("max entry error {:.3e}", err));
  if (o.pass) o.detail = fmt::format("max entry error {:.3e}", err);
  return o;
}

}  // namespace

int main() {
  const Samples samples = draw_samples();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 subspace dimensions", subspace_dimensions},
      {"2 counting identity", [&] { return counting_identity(samples); }},
      {"3 automatic 1-uniformity", [&] { return automatic_one_uniformity(samples); }},
      {"4 no-go confirmation", no_go_confirmation},
      {"5 AME corollary", [&] { return ame_corollary(samples); }},
      {"6 lemma suite", lemma_suite},
      {"7 numerical hygiene", numerical_hygiene},
      {"8 psi4 marginal regression", psi4_marginal},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    fmt::print("{} [{}] {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
