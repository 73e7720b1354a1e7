#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "ramploads/friction.hpp"
#include "ramploads/geometry.hpp"

namespace ramploads {

/// μ → 0 limit of velocity scaling; has no speed field.
struct Frozen {};

using ModelChoice = std::variant<FrictionSpec, Frozen>;

enum class OutputFormat { Csv, Json };

inline constexpr double kDefaultTol = 1e-10;
inline constexpr const char* kTolEnv = "RAMPLOADS_TOL";

struct RunConfig {
  std::string profile = "straight:45deg";
  std::string model = "frictionless";
  double x_max = 1.0;
  std::size_t stations = 512;
  double tol = kDefaultTol;
  double E0 = 1.0;
  std::string output = "ramploads_out.csv";
  OutputFormat format = OutputFormat::Csv;
};

/// Descriptors: `straight:<deg>deg`, `poly:<c0>,<c1>,...`, `power:<c>,<q>`, `table:<path.csv>`.
RampProfile parse_profile(const std::string& descriptor, double x_max);

/// Descriptors: `frictionless`, `vpower:k=<k>,alpha=<a>`, `coulomb:eta=<e>`, `scaled:mu=<m>`, `frozen`.
ModelChoice parse_model(const std::string& descriptor);
std::string describe(const ModelChoice& model);

/// Throws ConfigError on stations < 2, E0 ≤ 1/2, x_max ≤ 0, tol ≤ 0.
void validate(const RunConfig& config);

/// Default tolerance, replaced by RAMPLOADS_TOL when set.
double default_tolerance();

/// Overlays the recognised keys of a JSON object onto `config`.
void apply_json(RunConfig& config, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path, RunConfig base);
nlohmann::json to_json(const RunConfig& config);

OutputFormat parse_format(const std::string& name);

}  // namespace ramploads
