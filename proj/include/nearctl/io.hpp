#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nearctl/linalg.hpp"
#include "nearctl/structure.hpp"
#include "nearctl/synthesis.hpp"

namespace nearctl {

using Json = nlohmann::json;

struct ProblemOptions {
  Tolerances tol;
  std::optional<AuxPoles> aux;
  std::optional<int> q;
  std::optional<double> K;
  std::optional<std::vector<double>> u0;  // pinned orthant prefix
  std::optional<std::uint64_t> seed;
  int q_max = SteeringLimits{}.q_max;
  int max_connect_steps = SteeringLimits{}.max_connect_steps;
  bool refine_gain = false;
};

// {"B": [[...]], "xi": [...], "eta": [...], "jordan": {"J": ..., "P": ...},
//  "options": {"tolerances": {...}, "aux": [a1, a2], "q": 4, "K": 10,
//              "u0": [1], "seed": 7, "q_max": ..., "max_connect_steps": ...,
//              "refine_gain": false}}
struct ProblemFile {
  Matrix B;
  std::optional<Vector> xi;
  std::optional<Vector> eta;
  std::optional<JordanForm> pinned;  // validated against B on load
  ProblemOptions options;

  SteeringPins pins() const;
  SteeringLimits limits() const;
};

// Throws Error(kInvalidInput / kNonFinite / kDimensionMismatch) on bad input.
ProblemFile parse_problem(std::string_view text);
std::string read_file(const std::string& path);

Matrix matrix_from_json(const Json& j, const char* what);
Vector vector_from_json(const Json& j, const char* what);
Json to_json(const Matrix& A);
Json to_json(const Vector& x);
Json to_json(const JordanForm& jf);
Json to_json(const NearControllabilityReport& report);
Json to_json(const SubspaceDescriptor& desc);
Json to_json(const SteeringPlan& plan);
Json to_json(const IdentityLoop& loop);

// Controls file: a JSON array, or an object holding "controls" or
// "full_sequence" (possibly under "result"); otherwise whitespace/comma
// separated numbers.
std::vector<double> parse_controls(std::string_view text);

// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);
std::string trajectory_csv(const std::vector<Vector>& trajectory);
std::string locus_csv(const std::vector<LocusRow>& rows);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace nearctl
