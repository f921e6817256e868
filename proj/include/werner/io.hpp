#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "werner/nogo.hpp"
#include "werner/optimize.hpp"
#include "werner/singlet.hpp"
#include "werner/uniformity.hpp"

namespace werner::io {

using nlohmann::json;

/// Malformed JSON document or schema mismatch.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"n", "d", "amplitudes": [{"index": [...], "re", "im"}, ...]}, lexicographic, nonzero only.
json to_json(const PureState& state);
PureState state_from_json(const json& j);

// {"n", "d", "K", "dimension", "expected_dimension", "tolerance", "permutation_phase", "states": [...]}
json to_json(const SingletBasis& basis, std::optional<PermutationPhase> phase);
SingletBasis basis_from_json(const json& j);

json to_json(const UniformityReport& report);
json to_json(const PhaseFunctionReport& report);
json to_json(const Rational& r);
json to_json(const NoGoCertificate& cert);
json to_json(const NumericalCertificateReport& report);
json to_json(const OptimizationResult& result);

json read_json(const std::filesystem::path& path);
/// Throws std::runtime_error when the file cannot be written.
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace werner::io
