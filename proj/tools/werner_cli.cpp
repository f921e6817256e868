// Command-line front end: subspace construction, uniformity checks, lemma
// checks, the exact counting certificate and the deficit optimizer.
//
// Exit codes: 0 success / predicate true, 1 predicate false or certificate
// violation, 2 usage or I/O error.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ranges.h>

#include "werner/errors.hpp"
#include "werner/io.hpp"
#include "werner/nogo.hpp"
#include "werner/optimize.hpp"
#include "werner/singlet.hpp"
#include "werner/uniformity.hpp"

namespace {

using namespace werner;
using io::json;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::string command;
  int n = 0;
  int d = 0;
  std::optional<int> k;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  int samples = 20;
  int trials = 100;
  int restarts = 16;
  int max_iters = 5000;
  std::string state_path;
  std::string basis_path;
  std::string out_path;
};

void emit(const RunConfig& cfg, json j) {
  if (cfg.out_path.empty()) return;
  io::write_json(cfg.out_path, j);
  fmt::print("wrote {}\n", cfg.out_path);
}

std::string rational(const Rational& r) {
  if (r.denominator() == 1) return fmt::format("{}", r.numerator());
  return fmt::format("{}/{}", r.numerator(), r.denominator());
}

int cmd_subspace(const RunConfig& cfg) {
  const SystemShape shape(cfg.n, cfg.d);
  const SingletBasis basis = build_singlet_basis(shape, cfg.tolerance);
  std::optional<PermutationPhase> phase;
  if (!basis.empty()) phase = extract_phase_function(basis.members.front(), 8, cfg.seed, 1e-8).permutation_phase;

  fmt::print("n: {}\nd: {}\n", shape.n(), shape.d());
  if (shape.divisible())
    fmt::print("K: {}\n", shape.K());
  else
    fmt::print("K: undefined (d does not divide n)\n");
  fmt::print("dimension: {}\n", basis.dimension());
  fmt::print("expected_dimension: {}\n", basis.expected_dimension);
  fmt::print("permutation_phase: {}\n", phase ? to_string(*phase) : "none");
  if (!basis.diagnostic.empty()) fmt::print(stderr, "warning: {}\n", basis.diagnostic);

  json j = io::to_json(basis, phase);
  j["seed"] = cfg.seed;
  emit(cfg, std::move(j));
  return kOk;
}

int cmd_check_invariance(const RunConfig& cfg) {
  const PureState state = io::state_from_json(io::read_json(cfg.state_path)).normalized();
  const double residual = verify_invariance(state, cfg.samples, cfg.seed);
  const bool invariant = residual <= cfg.tolerance;
  fmt::print("samples: {}\nseed: {}\nmax_residual: {:.17g}\ninvariant: {}\n", cfg.samples, cfg.seed, residual,
             invariant);
  emit(cfg, {{"samples", cfg.samples}, {"seed", cfg.seed}, {"max_residual", residual}, {"invariant", invariant}});
  return invariant ? kOk : kFalse;
}

int cmd_uniformity(const RunConfig& cfg) {
  const PureState state = io::state_from_json(io::read_json(cfg.state_path));
  const UniformityReport report =
      cfg.k ? is_k_uniform(state, *cfg.k, cfg.tolerance) : is_ame(state, cfg.tolerance);
  fmt::print("k: {}{}\n", report.k, cfg.k ? "" : " (AME check, k = floor(n/2))");
  for (const auto& s : report.per_subsystem) fmt::print("  {} deviation {:.17g}\n", s.sites, s.deviation);
  fmt::print("worst_subsystem: {}\ndeficit: {:.17g}\nk_uniform: {}\n", report.worst_subsystem, report.deficit,
             report.is_k_uniform);
  emit(cfg, io::to_json(report));
  return report.is_k_uniform ? kOk : kFalse;
}

int cmd_verify_lemmas(const RunConfig& cfg) {
  const SingletBasis basis = io::basis_from_json(io::read_json(cfg.basis_path));
  const int d = basis.shape.d();
  std::vector<std::vector<Label>> perms;
  std::vector<Label> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  bool all_ok = true;
  json members = json::array();
  std::optional<PermutationPhase> common_phase;
  for (std::size_t a = 0; a < basis.dimension(); ++a) {
    const PureState& m = basis.members[a];
    json entry = {{"member", a}};
    const bool support_ok = has_uniform_support(m);
    entry["uniform_support"] = support_ok;
    all_ok &= support_ok;
    try {
      const PhaseFunctionReport phase = extract_phase_function(m, cfg.samples, cfg.seed, 1e-8);
      entry["phase_function"] = io::to_json(phase);
      if (common_phase && *common_phase != phase.permutation_phase) all_ok = false;
      common_phase = phase.permutation_phase;
      std::size_t held = 0;
      for (const auto& pi : perms) held += check_sign_relation(m, pi, phase.permutation_phase, 1e-8) ? 1 : 0;
      entry["sign_relation_held"] = held;
      entry["sign_relation_checked"] = perms.size();
      all_ok &= held == perms.size();
      fmt::print("member {}: uniform support {}, phase {}, det power {}, sign relation {}/{}\n", a, support_ok,
                 to_string(phase.permutation_phase), phase.det_power, held, perms.size());
    } catch (const InconsistencyError& e) {
      entry["phase_function_error"] = e.what();
      all_ok = false;
      fmt::print("member {}: uniform support {}, phase function inconsistent: {}\n", a, support_ok, e.what());
    }
    members.push_back(std::move(entry));
  }
  fmt::print("lemmas hold: {}\n", all_ok);
  emit(cfg, {{"seed", cfg.seed}, {"members", std::move(members)}, {"all_hold", all_ok}});
  return all_ok ? kOk : kFalse;
}

int cmd_certify(const RunConfig& cfg) {
  const NoGoCertificate cert = certify(SystemShape(cfg.n, cfg.d));
  fmt::print("n: {}\nd: {}\n", cert.n, cert.d);
  if (cert.singlets_exist) {
    fmt::print("K: {}\n", cert.K);
    for (auto [name, value] : {std::pair{"counting_sum_required", cert.required},
                               std::pair{"counting_sum_actual", cert.actual}, std::pair{"gap", cert.gap},
                               std::pair{"deficit_floor", cert.deficit_floor}})
      fmt::print("{}: {} ({:.17g})\n", name, rational(value), to_double(value));
    fmt::print("derivation: {}\n", cert.derivation);
  }
  fmt::print("verdict: {}\n", cert.verdict);
  emit(cfg, io::to_json(cert));
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const SingletBasis basis = io::basis_from_json(io::read_json(cfg.basis_path));
  try {
    const NumericalCertificateReport report =
        verify_certificate_numerically(basis, cfg.trials, cfg.seed, cfg.tolerance);
    fmt::print("trials: {}\nseed: {}\ncounting_target: {:.17g}\nmax_identity_residual: {:.17g}\n", report.trials,
               cfg.seed, report.counting_target, report.max_identity_residual);
    fmt::print("deficit_floor: {:.17g}\nmin_deficit: {:.17g}\nmax_invariance_residual: {:.17g}\n",
               report.deficit_floor, report.min_deficit, report.max_invariance_residual);
    fmt::print("all identities hold\n");
    json j = io::to_json(report);
    j["seed"] = cfg.seed;
    emit(cfg, std::move(j));
    return kOk;
  } catch (const CertificateViolation& e) {
    fmt::print(stderr, "certificate violation: {}\n", e.what());
    return kFalse;
  }
}

int cmd_optimize(const RunConfig& cfg) {
  const SingletBasis basis = io::basis_from_json(io::read_json(cfg.basis_path));
  const OptimizationResult r =
      minimize_deficit(basis, {.restarts = cfg.restarts, .max_iters = cfg.max_iters, .seed = cfg.seed});
  fmt::print("restarts: {}\nseed: {}\nbest_deficit: {:.17g}\nfloor: {:.17g}\n", r.restarts, cfg.seed,
             r.best_deficit, r.floor);
  fmt::print("best_restart: {}\niterations: {}\nconverged: {}\ngradient_norm: {:.3e}\n", r.best_restart,
             r.iterations, r.converged, r.gradient_norm);
  json j = io::to_json(r);
  j["seed"] = cfg.seed;
  j["max_iters"] = cfg.max_iters;
  emit(cfg, std::move(j));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitarily invariant (singlet) states: construction, uniformity checks and the two-uniformity no-go"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--tol", cfg.tolerance, "Tolerance for approximate predicates")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write the JSON result to this path");

  auto* subspace = app.add_subcommand("subspace", "Build the singlet basis for (n, d)")->fallthrough();
  subspace->add_option("--n", cfg.n, "Number of particles")->required();
  subspace->add_option("--d", cfg.d, "Local dimension")->required();

  auto* invariance = app.add_subcommand("check-invariance", "Haar-sampled invariance residual of a state")->fallthrough();
  invariance->add_option("--state", cfg.state_path, "State JSON")->required()->check(CLI::ExistingFile);
  invariance->add_option("--samples", cfg.samples, "Number of Haar unitaries")->capture_default_str();

  auto* uniformity = app.add_subcommand("uniformity", "k-uniformity report for a state")->fallthrough();
  uniformity->add_option("--state", cfg.state_path, "State JSON")->required()->check(CLI::ExistingFile);
  uniformity->add_option("--k", cfg.k, "Subsystem size; omitted means floor(n/2) (AME check)");

  auto* lemmas = app.add_subcommand("verify-lemmas", "Phase dichotomy, sign relation and support counts of a basis")->fallthrough();
  lemmas->add_option("--basis", cfg.basis_path, "Basis JSON")->required()->check(CLI::ExistingFile);
  lemmas->add_option("--samples", cfg.samples, "Haar unitaries for the det power fit")->capture_default_str();

  auto* cert = app.add_subcommand("certify", "Exact counting certificate for (n, d)")->fallthrough();
  cert->add_option("--n", cfg.n, "Number of particles")->required();
  cert->add_option("--d", cfg.d, "Local dimension")->required();

  auto* verify = app.add_subcommand("verify", "Check the counting identity and deficit floor on sampled states")->fallthrough();
  verify->add_option("--basis", cfg.basis_path, "Basis JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--trials", cfg.trials, "Number of random subspace states")->capture_default_str();

  auto* optimize = app.add_subcommand("optimize", "Minimize the two-uniformity deficit over the subspace")->fallthrough();
  optimize->add_option("--basis", cfg.basis_path, "Basis JSON")->required()->check(CLI::ExistingFile);
  optimize->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str();
  optimize->add_option("--max-iters", cfg.max_iters, "Iteration budget per restart")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*subspace) return cmd_subspace(cfg);
    if (*invariance) return cmd_check_invariance(cfg);
    if (*uniformity) return cmd_uniformity(cfg);
    if (*lemmas) return cmd_verify_lemmas(cfg);
    if (*cert) return cmd_certify(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*optimize) return cmd_optimize(cfg);
  } catch (const io::ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::runtime_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  }
  return kUsage;
}
