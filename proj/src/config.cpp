#include "ramploads/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ramploads/errors.hpp"

namespace ramploads {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double to_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "bad number '" + text + "' in " + what);
  }
  if (used != text.size()) throw Error(ErrorCode::ConfigError, "bad number '" + text + "' in " + what);
  return v;
}

// Parses `key=value,key=value`.
std::vector<std::pair<std::string, double>> key_values(const std::string& text,
                                                       const std::string& what) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "expected key=value in " + what);
    out.emplace_back(item.substr(0, eq), to_number(item.substr(eq + 1), what));
  }
  return out;
}

}  // namespace

RampProfile parse_profile(const std::string& descriptor, double x_max) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "profile descriptor '" + descriptor + "' has no kind");
  }
  const std::string kind = descriptor.substr(0, colon);
  const std::string body = descriptor.substr(colon + 1);
  if (kind == "straight") {
    std::string deg = body;
    if (deg.size() > 3 && deg.substr(deg.size() - 3) == "deg") deg.resize(deg.size() - 3);
    return RampProfile::straight(to_number(deg, descriptor) * std::numbers::pi / 180.0, x_max);
  }
  if (kind == "poly") {
    std::vector<double> coeffs;
    for (const auto& c : split(body, ',')) coeffs.push_back(to_number(c, descriptor));
    return RampProfile::polynomial(std::move(coeffs), x_max);
  }
  if (kind == "power") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw Error(ErrorCode::ConfigError, "power profile needs <c>,<q>");
    return RampProfile::power(to_number(parts[0], descriptor), to_number(parts[1], descriptor), x_max);
  }
  if (kind == "table") {
    RampProfile table = RampProfile::from_csv(body);
    return x_max > 0.0 ? table.with_x_max(std::min(x_max, table.x_max())) : table;
  }
  throw Error(ErrorCode::ConfigError, "unknown profile kind '" + kind + "'");
}

ModelChoice parse_model(const std::string& descriptor) {
  if (descriptor == "frictionless") return FrictionSpec{Frictionless{}};
  if (descriptor == "frozen") return Frozen{};
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "unknown model '" + descriptor + "'");
  }
  const std::string kind = descriptor.substr(0, colon);
  const auto kv = key_values(descriptor.substr(colon + 1), descriptor);
  const auto get = [&](const std::string& key) {
    for (const auto& [k, v] : kv) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::ConfigError, "model '" + descriptor + "' lacks " + key);
  };
  if (kind == "vpower") return FrictionSpec{VelocityPower{get("k"), get("alpha")}};
  if (kind == "coulomb") return FrictionSpec{Coulomb{get("eta")}};
  if (kind == "scaled") return FrictionSpec{VelocityScaled{get("mu")}};
  throw Error(ErrorCode::ConfigError, "unknown model kind '" + kind + "'");
}

std::string describe(const ModelChoice& model) {
  if (std::holds_alternative<Frozen>(model)) return "frozen";
  return describe(std::get<FrictionSpec>(model));
}

void validate(const RunConfig& config) {
  if (config.stations < 2) throw Error(ErrorCode::ConfigError, "stations must be at least 2");
  if (!(config.E0 > 0.5)) throw Error(ErrorCode::ConfigError, "E0 must exceed 1/2");
  if (!(config.x_max > 0.0)) throw Error(ErrorCode::ConfigError, "x_max must be positive");
  if (!(config.tol > 0.0)) throw Error(ErrorCode::ConfigError, "tol must be positive");
}

double default_tolerance() {
  if (const char* env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
    const double v = to_number(env, kTolEnv);
    if (!(v > 0.0)) throw Error(ErrorCode::ConfigError, std::string(kTolEnv) + " must be positive");
    return v;
  }
  return kDefaultTol;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::ConfigError, "format must be csv or json");
}

void apply_json(RunConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  try {
    if (j.contains("profile")) config.profile = j.at("profile").get<std::string>();
    if (j.contains("model")) config.model = j.at("model").get<std::string>();
    if (j.contains("x_max")) config.x_max = j.at("x_max").get<double>();
    if (j.contains("stations")) config.stations = j.at("stations").get<std::size_t>();
    if (j.contains("tol")) config.tol = j.at("tol").get<double>();
    if (j.contains("E0")) config.E0 = j.at("E0").get<double>();
    if (j.contains("output")) config.output = j.at("output").get<std::string>();
    if (j.contains("format")) config.format = parse_format(j.at("format").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad config value: ") + e.what());
  }
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, "config '" + path + "' is not JSON: " + e.what());
  }
  apply_json(base, j);
  return base;
}

nlohmann::json to_json(const RunConfig& config) {
  return {{"profile", config.profile}, {"model", config.model}, {"x_max", config.x_max},
          {"stations", config.stations}, {"tol", config.tol},     {"E0", config.E0}};
}

}  // namespace ramploads
