#include "ramploads/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "ramploads/errors.hpp"
#include "ramploads/solvers.hpp"
#include "ramploads/verify.hpp"

namespace ramploads {
namespace {

constexpr double kConservationTol = 1e-7;
constexpr double kMassTol = 1e-12;
constexpr double kConsistencyTol = 1e-7;
constexpr double kFrictionlessTol = 1e-8;
constexpr double kWeakTol = 1e-6;
constexpr double kOrderBand = 0.3;
constexpr double kOracleSlope = 10.0;

nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write '" + path + "'");
  return out;
}

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

Check make_check(std::string name, double value, double threshold, bool pass,
                 std::string note = {}) {
  return {std::move(name), value, threshold, pass, std::move(note)};
}

nlohmann::json check_json(const Check& c) {
  nlohmann::json j{{"name", c.name}, {"value", number_json(c.value)},
                   {"threshold", number_json(c.threshold)}, {"pass", c.pass}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

nlohmann::json summary_json(const SolveSummary& s) {
  return {{"s_valid", s.s_valid}, {"s_max", s.s_max},   {"x_valid", s.x_valid},
          {"drag", s.drag},       {"lift", s.lift},     {"N_end", s.N_end},
          {"f_end", s.f_end},     {"truncated", s.truncated}, {"model", s.model},
          {"profile", s.profile}};
}

struct Prepared {
  ArcChart chart;
  ModelChoice model;
};

Prepared prepare(const RunConfig& config) {
  validate(config);
  const RampProfile profile = parse_profile(config.profile, config.x_max);
  const auto findings = validate_profile(profile);
  if (has_fatal(findings)) {
    std::string msg;
    for (const auto& f : findings) {
      if (f.severity == Severity::Fatal) msg += (msg.empty() ? "" : "; ") + f.message;
    }
    throw Error(ErrorCode::InvalidProfile, msg);
  }
  ChartOptions options;
  options.quad_tol = config.tol;
  return {build_chart(profile, options), parse_model(config.model)};
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string station_csv_row(const SurfaceStation& st) {
  const double values[] = {st.x,   st.s,   st.w, st.u, st.v,        st.w_rho,
                           st.wf1, st.wf2, st.N, st.f, st.drag_cum, st.lift_cum};
  std::string row;
  for (std::size_t i = 0; i < std::size(values); ++i) {
    if (i) row += ',';
    row += format_number(values[i]);
  }
  return row;
}

void write_station_csv(std::ostream& out, const std::vector<SurfaceStation>& stations) {
  out << kCsvHeader << '\n';
  for (const auto& st : stations) out << station_csv_row(st) << '\n';
}

nlohmann::json station_json(const SurfaceStation& st) {
  return {{"x", number_json(st.x)},         {"s", number_json(st.s)},
          {"w", number_json(st.w)},         {"u", number_json(st.u)},
          {"v", number_json(st.v)},         {"w_rho", number_json(st.w_rho)},
          {"wf1", number_json(st.wf1)},     {"wf2", number_json(st.wf2)},
          {"N", number_json(st.N)},         {"f", number_json(st.f)},
          {"drag_cum", number_json(st.drag_cum)}, {"lift_cum", number_json(st.lift_cum)}};
}

SurfaceStation station_from_json(const nlohmann::json& j) {
  SurfaceStation st;
  st.x = number_from_json(j.at("x"));
  st.s = number_from_json(j.at("s"));
  st.w = number_from_json(j.at("w"));
  st.u = number_from_json(j.at("u"));
  st.v = number_from_json(j.at("v"));
  st.w_rho = number_from_json(j.at("w_rho"));
  st.wf1 = number_from_json(j.at("wf1"));
  st.wf2 = number_from_json(j.at("wf2"));
  st.N = number_from_json(j.at("N"));
  st.f = number_from_json(j.at("f"));
  st.drag_cum = number_from_json(j.at("drag_cum"));
  st.lift_cum = number_from_json(j.at("lift_cum"));
  return st;
}

SolveResult run_solve(const RunConfig& config) {
  const Prepared prep = prepare(config);
  const ArcChart& chart = prep.chart;
  SolveResult result;
  SolveSummary& sum = result.summary;
  sum.model = describe(prep.model);
  sum.profile = config.profile;
  sum.s_max = chart.s_max();

  if (std::holds_alternative<Frozen>(prep.model)) {
    result.surface =
        frozen_surface_state(chart, uniform_x_stations(chart, chart.x_max(), config.stations));
    sum.s_valid = chart.s_max();
  } else {
    const SpeedField field = solve(chart, std::get<FrictionSpec>(prep.model));
    const double s_end = std::min(field.s_valid(), chart.s_max());
    const std::vector<double> stations =
        s_end > 0.0 ? uniform_x_stations(chart, chart.psi_of_s(s_end), config.stations)
                    : std::vector<double>{0.0};
    result.surface = surface_state(chart, field, stations);
    sum.s_valid = result.surface.truncated ? result.surface.s_valid : s_end;
  }
  sum.truncated = sum.s_valid < chart.s_max() * (1.0 - 1e-12);
  sum.x_valid = chart.psi_of_s(std::min(sum.s_valid, chart.s_max()));
  if (!result.surface.stations.empty()) {
    const auto& last = result.surface.stations.back();
    sum.drag = last.drag_cum;
    sum.lift = last.lift_cum;
    sum.N_end = last.N;
    sum.f_end = last.f;
  }
  return result;
}

int cmd_solve(const RunConfig& config, std::ostream& log, bool write_plot) {
  SolveResult result;
  try {
    result = run_solve(config);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    auto out = open_output(config.output);
    if (config.format == OutputFormat::Csv) {
      write_station_csv(out, result.surface.stations);
      auto side = open_output(config.output + ".summary.json");
      side << summary_json(result.summary).dump(2) << '\n';
    } else {
      nlohmann::json j = to_json(config);
      j["summary"] = summary_json(result.summary);
      nlohmann::json table = nlohmann::json::array();
      for (const auto& st : result.surface.stations) table.push_back(station_json(st));
      j["table"] = std::move(table);
      out << j.dump(2) << '\n';
    }
    if (write_plot && config.format == OutputFormat::Csv) {
      write_plot_script(config.output + ".gp", config.output, {{9, "N"}, {10, "f"}, {3, "w"}}, "x");
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  const auto& s = result.summary;
  log << "model " << s.model << ", profile " << s.profile << '\n'
      << "s_valid " << format_number(s.s_valid) << " of " << format_number(s.s_max) << '\n'
      << "drag " << format_number(s.drag) << ", lift " << format_number(s.lift) << '\n';
  return s.truncated ? kExitTruncated : kExitOk;
}

int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& log) {
  nlohmann::json report;
  std::vector<Check> checks;
  try {
    const Prepared prep = prepare(config);
    if (std::holds_alternative<Frozen>(prep.model)) {
      throw Error(ErrorCode::ConfigError, "verify needs a model with a speed field");
    }
    for (const auto& name : options.bumps) {
      if (name != "interior" && name != "straddle" && name != "tip") {
        throw Error(ErrorCode::ConfigError, "unknown bump placement '" + name + "'");
      }
    }
    const ArcChart& chart = prep.chart;
    const FrictionSpec spec = std::get<FrictionSpec>(prep.model);
    const SpeedField field = solve(chart, spec);
    const double s_end = std::min(field.s_valid(), chart.s_max());
    if (!(s_end > 0.0)) throw Error(ErrorCode::ConfigError, "layer has no valid extent to verify");
    const SurfaceProfile surface =
        surface_state(chart, field, uniform_x_stations(chart, chart.psi_of_s(s_end), config.stations));

    // Conservation.
    double r_mass = 0.0, r_x = 0.0, r_y = 0.0, r_E = 0.0;
    for (const auto& r : conservation_report(chart, surface, config.E0)) {
      const double scale = 1.0 + chart.b_of_s(r.s);
      r_mass = std::max(r_mass, std::abs(r.mass) / scale);
      r_x = std::max(r_x, std::abs(r.x_momentum) / scale);
      r_y = std::max(r_y, std::abs(r.y_momentum) / scale);
      r_E = std::max(r_E, std::abs(r.energy));
    }
    checks.push_back(make_check("conservation.mass", r_mass, kMassTol, r_mass <= kMassTol));
    checks.push_back(make_check("conservation.x_momentum", r_x, kConservationTol, r_x <= kConservationTol));
    checks.push_back(make_check("conservation.y_momentum", r_y, kConservationTol, r_y <= kConservationTol));
    checks.push_back(make_check("conservation.energy", r_E, 0.0, r_E == 0.0));

    // Friction law against the independently computed f.
    double consistency = 0.0;
    double threshold = kConsistencyTol;
    for (const auto& st : surface.stations) {
      if (std::holds_alternative<Frictionless>(spec)) {
        consistency = std::max(consistency, std::abs(st.f));
        threshold = kFrictionlessTol;
      } else if (const auto* vp = std::get_if<VelocityPower>(&spec)) {
        const double law = st.s == 0.0 ? 0.0 : vp->k * st.w_rho * std::pow(st.w, vp->alpha);
        consistency = std::max(consistency, std::abs(st.f - law) / (1.0 + std::abs(st.f)));
      } else if (const auto* c = std::get_if<Coulomb>(&spec)) {
        consistency = std::max(consistency, std::abs(st.f - c->eta * st.N) / (1.0 + std::abs(st.f)));
      } else if (const auto* m = std::get_if<VelocityScaled>(&spec)) {
        const double d = chart.profile().slope(st.x);
        const double law = (1.0 - m->mu) * d / (1.0 + d * d);
        consistency = std::max(consistency, std::abs(st.f - law) / (1.0 + std::abs(st.f)));
      }
    }
    checks.push_back(make_check("friction_law", consistency, threshold, consistency <= threshold));

    // Accretion oracle.
    const bool oracle_ok = chart.profile().slope(0.0) > 0.0 &&
                           !std::holds_alternative<VelocityScaled>(spec) && !options.ds_list.empty();
    if (oracle_ok) {
      const ConvergenceStudy study = convergence_study(chart, spec, options.ds_list);
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : study.rows) {
        rows.push_back({{"ds", r.ds}, {"err_w", r.err_w}, {"err_N", r.err_N}, {"err_f", r.err_f}});
      }
      report["convergence"] = {{"rows", rows}};
      const auto order_or_null = [](const std::optional<double>& o) {
        return o ? nlohmann::json(*o) : nlohmann::json(nullptr);
      };
      report["convergence"]["order_w"] = order_or_null(study.order_w);
      report["convergence"]["order_N"] = order_or_null(study.order_N);
      report["convergence"]["order_f"] = order_or_null(study.order_f);
      const auto finest = std::min_element(
          study.rows.begin(), study.rows.end(),
          [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.ds < b.ds; });
      const double bound = kOracleSlope * finest->ds;
      checks.push_back(make_check("oracle.error_w", finest->err_w, bound, finest->err_w <= bound));
      if (study.order_w) {
        const double order = *study.order_w;
        checks.push_back(make_check("oracle.order_w", order, kOrderBand, std::abs(order - 1.0) <= kOrderBand));
      } else {
        checks.push_back(make_check("oracle.order_w", std::numeric_limits<double>::quiet_NaN(), kOrderBand,
                          true, "errors at round-off: oracle exact on this ramp"));
      }
    }

    // Weak form.
    WeakFormWeights weights = weak_weights(chart, surface, config.E0);
    if (options.perturb_weights != 1.0) weights.perturb(1, options.perturb_weights);
    nlohmann::json weak = nlohmann::json::array();
    const char* eq_names[] = {"mass", "x_momentum", "y_momentum", "energy"};
    for (const auto& bump : standard_bumps(chart)) {
      if (!options.bumps.empty() &&
          std::find(options.bumps.begin(), options.bumps.end(), bump.name) == options.bumps.end()) {
        continue;
      }
      for (int eq = 0; eq < 4; ++eq) {
        try {
          const WeakResidual r =
              weak_form_residual(chart, weights, bump.phi, static_cast<WeakEquation>(eq));
          weak.push_back({{"bump", bump.name}, {"equation", eq_names[eq]}, {"residual", r.residual}});
          checks.push_back(make_check("weak." + bump.name + "." + eq_names[eq], r.residual, kWeakTol,
                            r.residual <= kWeakTol));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::SupportOutsideDomain) throw;
          weak.push_back({{"bump", bump.name}, {"equation", eq_names[eq]}, {"skipped", e.what()}});
        }
      }
    }
    report["weak_form"] = weak;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  bool all = true;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    list.push_back(check_json(c));
    log << (c.pass ? "PASS " : "FAIL ") << c.name << " = " << format_number(c.value) << '\n';
  }
  report["config"] = to_json(config);
  report["checks"] = list;
  report["pass"] = all;
  try {
    auto out = open_output(config.output);
    out << report.dump(2) << '\n';
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const RunConfig& config, const SweepSpec& sweep, std::ostream& log) {
  const std::string& p = sweep.parameter;
  if (p != "k" && p != "eta" && p != "mu" && p != "alpha" && p != "theta") {
    log << "error: unknown sweep parameter '" << p << "'\n";
    return kExitConfig;
  }
  std::vector<std::string> rows;
  try {
    const ModelChoice base = parse_model(config.model);
    const auto* base_vp = std::holds_alternative<FrictionSpec>(base)
                              ? std::get_if<VelocityPower>(&std::get<FrictionSpec>(base))
                              : nullptr;
    const double base_k = base_vp ? base_vp->k : 1.0;
    const double base_alpha = base_vp ? base_vp->alpha : 2.0;
    for (double value : sweep.values) {
      RunConfig c = config;
      const std::string v = format_number(value);
      if (p == "k") {
        c.model = value == 0.0 ? "frictionless" : "vpower:k=" + v + ",alpha=" + format_number(base_alpha);
      } else if (p == "alpha") {
        c.model = "vpower:k=" + format_number(base_k) + ",alpha=" + v;
      } else if (p == "eta") {
        c.model = value == 0.0 ? "frictionless" : "coulomb:eta=" + v;
      } else if (p == "mu") {
        c.model = value == 0.0 ? "frozen" : "scaled:mu=" + v;
      } else {
        c.profile = "straight:" + v + "deg";
      }
      const SolveSummary s = run_solve(c).summary;
      rows.push_back(v + ',' + format_number(s.drag) + ',' + format_number(s.lift) + ',' +
                     format_number(s.s_valid) + ',' + format_number(s.N_end) + ',' +
                     format_number(s.f_end));
    }
    auto out = open_output(config.output);
    out << "value,drag,lift,s_valid,N_end,f_end\n";
    for (const auto& r : rows) out << r << '\n';
    out.close();
    write_plot_script(config.output + ".gp", config.output, {{2, "drag"}, {3, "lift"}, {5, "N_end"}, {6, "f_end"}},
                      p);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  log << "sweep " << p << ": " << rows.size() << " rows written to " << config.output << '\n';
  return kExitOk;
}

void write_plot_script(const std::string& script_path, const std::string& csv_path,
                       const std::vector<std::pair<int, std::string>>& columns,
                       const std::string& x_label) {
  auto out = open_output(script_path);
  out << "set datafile separator ','\n"
      << "set xlabel '" << x_label << "'\n"
      << "set grid\n"
      << "plot ";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ", \\\n     ";
    out << "'" << csv_path << "' every ::1 using 1:" << columns[i].first << " with lines title '"
        << columns[i].second << "'";
  }
  out << '\n';
}

}  // namespace ramploads
