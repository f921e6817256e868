#include "werner/io.hpp"

#include <fstream>

#include "werner/errors.hpp"

namespace werner::io {

json to_json(const PureState& state) {
  json amps = json::array();
  for (const auto& [index, amp] : state.amplitudes())
    amps.push_back({{"index", index.labels()}, {"re", amp.real()}, {"im", amp.imag()}});
  return {{"n", state.shape().n()}, {"d", state.shape().d()}, {"amplitudes", std::move(amps)}};
}

PureState state_from_json(const json& j) {
  try {
    const SystemShape shape(j.at("n").get<int>(), j.at("d").get<int>());
    PureState::AmplitudeMap amps;
    for (const json& entry : j.at("amplitudes")) {
      MultiIndex index(entry.at("index").get<std::vector<Label>>());
      if (!index.valid_for(shape)) throw ParseError("multi-index does not match n and d");
      const Complex amp(entry.at("re").get<double>(), entry.value("im", 0.0));
      if (!amps.emplace(std::move(index), amp).second) throw ParseError("duplicate multi-index");
    }
    return PureState(shape, std::move(amps));
  } catch (const json::exception& e) {
    throw ParseError(std::string("state JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("state JSON: ") + e.what());
  }
}

json to_json(const SingletBasis& basis, std::optional<PermutationPhase> phase) {
  json states = json::array();
  for (const PureState& member : basis.members) states.push_back(to_json(member));
  json j = {{"n", basis.shape.n()},
            {"d", basis.shape.d()},
            {"dimension", basis.dimension()},
            {"expected_dimension", basis.expected_dimension},
            {"tolerance", basis.tolerance},
            {"states", std::move(states)}};
  j["K"] = basis.shape.divisible() ? json(basis.shape.K()) : json(nullptr);
  j["permutation_phase"] = phase ? json(to_string(*phase)) : json(nullptr);
  if (!basis.diagnostic.empty()) j["diagnostic"] = basis.diagnostic;
  return j;
}

SingletBasis basis_from_json(const json& j) {
  try {
    const SystemShape shape(j.at("n").get<int>(), j.at("d").get<int>());
    SingletBasis basis{shape, {}, j.value("tolerance", kDefaultTolerance), expected_dimension(shape), {}};
    for (const json& s : j.at("states")) {
      PureState member = state_from_json(s);
      if (!(member.shape() == shape)) throw ParseError("basis member shape differs from basis shape");
      basis.members.push_back(std::move(member));
    }
    if (j.contains("dimension") && j.at("dimension").get<std::size_t>() != basis.members.size())
      throw ParseError("declared dimension does not match number of states");
    return basis;
  } catch (const json::exception& e) {
    throw ParseError(std::string("basis JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("basis JSON: ") + e.what());
  }
}

json to_json(const UniformityReport& report) {
  json per = json::array();
  for (const auto& s : report.per_subsystem) per.push_back({{"sites", s.sites}, {"deviation", s.deviation}});
  return {{"k", report.k},
          {"per_subsystem", std::move(per)},
          {"worst_subsystem", report.worst_subsystem},
          {"deficit", report.deficit},
          {"is_k_uniform", report.is_k_uniform}};
}

json to_json(const PhaseFunctionReport& report) {
  return {{"permutation_phase", to_string(report.permutation_phase)},
          {"transposition_signs", report.transposition_signs},
          {"det_power", report.det_power},
          {"residual", report.residual}};
}

json to_json(const Rational& r) {
  return {{"num", r.numerator()}, {"den", r.denominator()}, {"decimal", to_double(r)}};
}

json to_json(const NoGoCertificate& cert) {
  json j = {{"n", cert.n},
            {"d", cert.d},
            {"singlets_exist", cert.singlets_exist},
            {"in_scope", cert.in_scope},
            {"two_uniform_impossible", cert.two_uniform_impossible},
            {"ame_possible", cert.ame_possible},
            {"verdict", cert.verdict},
            {"derivation", cert.derivation}};
  if (cert.singlets_exist) {
    j["K"] = cert.K;
    j["counting_sum_required"] = to_json(cert.required);
    j["counting_sum_actual"] = to_json(cert.actual);
    j["gap"] = to_json(cert.gap);
    j["deficit_floor"] = to_json(cert.deficit_floor);
  }
  return j;
}

json to_json(const NumericalCertificateReport& report) {
  return {{"trials", report.trials},
          {"counting_target", report.counting_target},
          {"deficit_floor", report.deficit_floor},
          {"min_deficit", report.min_deficit},
          {"max_identity_residual", report.max_identity_residual},
          {"max_invariance_residual", report.max_invariance_residual}};
}

json to_json(const OptimizationResult& result) {
  json coeffs = json::array();
  for (Eigen::Index a = 0; a < result.best_coefficients.size(); ++a)
    coeffs.push_back({{"re", result.best_coefficients[a].real()}, {"im", result.best_coefficients[a].imag()}});
  json restarts = json::array();
  for (const auto& r : result.per_restart)
    restarts.push_back({{"deficit", r.deficit},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"gradient_norm", r.gradient_norm}});
  json j = {{"best_coefficients", std::move(coeffs)},
            {"best_deficit", result.best_deficit},
            {"floor", result.floor},
            {"iterations", result.iterations},
            {"restarts", result.restarts},
            {"best_restart", result.best_restart},
            {"converged", result.converged},
            {"gradient_norm", result.gradient_norm},
            {"trajectory", result.trajectory},
            {"per_restart", std::move(restarts)}};
  if (result.best_state) j["state"] = to_json(result.best_state->normalized().canonicalized());
  return j;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace werner::io
