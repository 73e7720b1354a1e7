#include "ramploads/cli.hpp"

#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "ramploads/commands.hpp"
#include "ramploads/errors.hpp"

namespace ramploads {
namespace {

struct Flags {
  std::optional<std::string> config_file;
  std::optional<std::string> profile;
  std::optional<std::string> model;
  std::optional<double> x_max;
  std::optional<std::size_t> stations;
  std::optional<double> tol;
  std::optional<double> E0;
  std::optional<std::string> output;
  std::optional<std::string> format;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file");
  cmd->add_option("--profile", f.profile, "ramp profile descriptor");
  cmd->add_option("--model", f.model, "friction model descriptor");
  cmd->add_option("--xmax", f.x_max, "domain length");
  cmd->add_option("--stations", f.stations, "number of surface stations");
  cmd->add_option("--tol", f.tol, "quadrature tolerance");
  cmd->add_option("--E0", f.E0, "upstream total enthalpy");
  cmd->add_option("-o,--output", f.output, "output path");
  cmd->add_option("--format", f.format, "csv or json");
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  c.tol = default_tolerance();
  if (f.config_file) c = load_config_file(*f.config_file, c);
  if (f.profile) c.profile = *f.profile;
  if (f.model) c.model = *f.model;
  if (f.x_max) c.x_max = *f.x_max;
  if (f.stations) c.stations = *f.stations;
  if (f.tol) c.tol = *f.tol;
  if (f.E0) c.E0 = *f.E0;
  if (f.output) c.output = *f.output;
  if (f.format) c.format = parse_format(*f.format);
  return c;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> values;
  for (const auto& item : split(s)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::ConfigError, "bad number '" + item + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface loads in the hypersonic limit over curved ramps", "ramploads"};
  app.require_subcommand(1);

  Flags solve_flags, verify_flags, sweep_flags;
  bool plot = false;
  std::string ds_list = "0.04,0.02,0.01";
  std::string bumps;
  double perturb = 1.0;
  std::string parameter;
  std::string values;

  auto* solve = app.add_subcommand("solve", "surface distributions along the ramp");
  add_common(solve, solve_flags);
  solve->add_flag("--plot", plot, "also write a gnuplot script");

  auto* verify = app.add_subcommand("verify", "conservation, oracle and weak-form checks");
  add_common(verify, verify_flags);
  verify->add_option("--ds", ds_list, "comma-separated oracle step sizes");
  verify->add_option("--bumps", bumps, "subset of interior,straddle,tip");
  verify->add_option("--perturb-weights", perturb, "scale x-momentum weights (negative control)");

  auto* sweep = app.add_subcommand("sweep", "summary rows over a parameter grid");
  add_common(sweep, sweep_flags);
  sweep->add_option("--param", parameter, "k, eta, mu, alpha or theta")->required();
  sweep->add_option("--values", values, "comma-separated grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) return cmd_solve(resolve(solve_flags), err, plot);
    if (*verify) {
      VerifyOptions opts;
      opts.ds_list = parse_list(ds_list);
      opts.bumps = split(bumps);
      opts.perturb_weights = perturb;
      return cmd_verify(resolve(verify_flags), opts, err);
    }
    SweepSpec spec{parameter, parse_list(values)};
    return cmd_sweep(resolve(sweep_flags), spec, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace ramploads
