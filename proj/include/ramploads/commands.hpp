#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ramploads/config.hpp"
#include "ramploads/loads.hpp"

namespace ramploads {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitTruncated = 2, kExitCheckFailed = 3 };

inline constexpr const char* kCsvHeader = "x,s,w,u,v,w_rho,wf1,wf2,N,f,drag_cum,lift_cum";

/// Shortest round-trip decimal; `inf`, `-inf`, `nan` for non-finite values.
std::string format_number(double value);

std::string station_csv_row(const SurfaceStation& st);
void write_station_csv(std::ostream& out, const std::vector<SurfaceStation>& stations);
nlohmann::json station_json(const SurfaceStation& st);
SurfaceStation station_from_json(const nlohmann::json& j);

struct SolveSummary {
  double s_valid = 0.0;
  double s_max = 0.0;
  double x_valid = 0.0;
  double drag = 0.0;
  double lift = 0.0;
  double N_end = 0.0;
  double f_end = 0.0;
  bool truncated = false;
  std::string model;
  std::string profile;
};

struct SolveResult {
  SurfaceProfile surface;
  SolveSummary summary;
};

/// Computes the station table for a configuration without writing files.
SolveResult run_solve(const RunConfig& config);

int cmd_solve(const RunConfig& config, std::ostream& log, bool write_plot = false);

struct VerifyOptions {
  std::vector<double> ds_list{0.04, 0.02, 0.01};
  /// Subset of {interior, straddle, tip}; empty means all three.
  std::vector<std::string> bumps;
  /// Factor applied to the x-momentum Dirac weights (1 = untouched). Negative control.
  double perturb_weights = 1.0;
};

int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& log);

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

int cmd_sweep(const RunConfig& config, const SweepSpec& sweep, std::ostream& log);

/// gnuplot script plotting columns of a CSV against its first column.
void write_plot_script(const std::string& script_path, const std::string& csv_path,
                       const std::vector<std::pair<int, std::string>>& columns,
                       const std::string& x_label);

}  // namespace ramploads
