#include "pseudocyl/cli.hpp"

#include "pseudocyl/acceptance.hpp"
#include "pseudocyl/derdzinski.hpp"
#include "pseudocyl/errors.hpp"
#include "pseudocyl/fowler.hpp"
#include "pseudocyl/report_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>

namespace pseudocyl::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

struct Config {
  int n = 0;
  double period = 0.0;
  int m = 0;
  double R = 0.0;
  double C = 0.0;
  double energy_offset = 0.5;
  int grid_t = 64;
  int grid_angular = 5;
  std::optional<double> tol;
  std::string out;
  std::string format = "csv";
  std::string orbit;
  std::string factor;
};

fs::path output_dir(const Config& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("PSEUDOCYL_OUT_DIR"); env != nullptr && *env != '\0')
    return env;
  return ".";
}

void write_orbit(const PeriodicOrbit& orbit, const Config& c, const std::string& stem,
                 Json& summary) {
  const fs::path dir = output_dir(c);
  const fs::path header = dir / (stem + ".json");
  if (c.format == "json") {
    io::write_text(header, io::dump(io::orbit_json(orbit, true)));
    summary["files"] = {header.string()};
  } else {
    const fs::path csv = dir / (stem + ".csv");
    io::write_text(csv, io::orbit_csv(orbit));
    io::write_text(header, io::dump(io::orbit_json(orbit, false)));
    summary["files"] = {csv.string(), header.string()};
  }
}

void check_residual(const PeriodicOrbit& orbit, const Config& c) {
  const double tol = c.tol.value_or(1e-8);
  if (orbit.max_residual() > tol)
    throw NumericalError("orbit residual " + io::format_double(orbit.max_residual()) +
                         " exceeds --tol " + io::format_double(tol));
}

int solve_fowler(const Config& c, std::ostream& out) {
  const PeriodicOrbit orbit = fowler::solve_period(c.n, c.period);
  check_residual(orbit, c);
  Json summary = {{"schema_version", io::kSchemaVersion},
                  {"command", "solve-fowler"},
                  {"n", c.n},
                  {"period", orbit.period},
                  {"T1", fowler::critical_period(c.n)},
                  {"E", orbit.energy},
                  {"u_min", orbit.x_min},
                  {"u_max", orbit.x_max},
                  {"max_residual", orbit.max_residual()}};
  write_orbit(orbit, c, "fowler_orbit", summary);
  out << io::dump(summary);
  return kOk;
}

int solve_derdzinski(const Config& c, std::ostream& out) {
  const DerdzinskiParams p{c.m, c.R, c.C};
  derdzinski::validate(p);
  const double Ec = derdzinski::center_energy(p);
  const double E = Ec + c.energy_offset * std::abs(Ec);
  const PeriodicOrbit orbit = derdzinski::solve_derdzinski_periodic(p, E);
  check_residual(orbit, c);
  Json summary = {{"schema_version", io::kSchemaVersion},
                  {"command", "solve-derdzinski"},
                  {"params", io::to_json(orbit.params)},
                  {"energy_offset", c.energy_offset},
                  {"center_energy", Ec},
                  {"E", orbit.energy},
                  {"period", orbit.period},
                  {"h_min", orbit.x_min},
                  {"h_max", orbit.x_max},
                  {"max_residual", orbit.max_residual()},
                  {"max_energy_deviation", orbit.max_energy_deviation()}};
  write_orbit(orbit, c, "derdzinski_orbit", summary);
  out << io::dump(summary);
  return kOk;
}

int curvature_report(const Config& c, std::ostream& out) {
  if (c.orbit.empty() == c.factor.empty())
    throw DomainError("curvature-report needs exactly one of --orbit or --factor");

  std::optional<conformal::ConformalCylinderMetric> metric;
  bool yamabe_solution = false;
  if (!c.orbit.empty()) {
    const io::OrbitFile file = io::read_orbit(c.orbit);
    const auto* params = std::get_if<FowlerParams>(&file.params);
    if (params == nullptr)
      throw DomainError("curvature-report expects a Fowler orbit file");
    metric.emplace(params->n, file.period, io::orbit_factor(file));
    yamabe_solution = true;
  } else {
    const int n = c.n == 0 ? 4 : c.n;
    fowler::require_dimension(n);
    const double T = c.period > 0.0 ? c.period : 6.0;
    if (c.factor == "cylinder") {
      metric.emplace(n, T, PeriodicScalar::constant(fowler::constant_solution<double>(n), T));
    } else if (c.factor == "sinusoid") {
      const double w = 2.0 * std::numbers::pi / T;
      metric.emplace(n, T,
                     PeriodicScalar(
                         T,
                         [w](double t) {
                           const double s = 0.3 * std::sin(w * t), k = 0.3 * std::cos(w * t);
                           return Jet3{1.0 + s, w * k, -w * w * s, -w * w * w * k};
                         },
                         "1 + 0.3 sin(2 pi t / T)"));
    } else {
      metric.emplace(n, T, fowler::solve_period(n, T).factor);
      yamabe_solution = true;
    }
  }

  const conformal::GridSpec grid{c.grid_t, c.grid_angular, 0.4};
  conformal::ReportOptions options;
  if (yamabe_solution) {
    const auto& u = metric->factor();
    const auto points = conformal::sample_points(metric->n(), 1000.0, 4);
    options.laplacian =
        geometry::calibrate_laplacian_convention(
            metric->n(), [u](const geometry::ChartPoint& p) { return u(p[0]); }, points)
            .chosen;
  }
  const Json report = io::to_json(conformal::curvature_report(*metric, grid, options));
  const fs::path path = output_dir(c) / "curvature_report.json";
  io::write_text(path, io::dump(report));
  out << io::dump(report);
  return kOk;
}

int period_table(const Config& c, std::ostream& out) {
  const Oscillator osc = fowler::fowler_oscillator(c.n);
  const double Ec = osc.center_energy();
  const double tol = c.tol.value_or(1e-12);
  std::vector<io::PeriodRow> rows;
  for (int k = 0; k < 50; ++k) {
    const double s = k == 0 ? 1e-8 : k / 50.0;
    const double E = Ec + s * std::abs(Ec);
    rows.push_back({E, osc.period(E, tol)});
  }
  bool monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k)
    monotone = monotone && rows[k].period > rows[k - 1].period;

  Json header = {{"schema_version", io::kSchemaVersion},
                 {"kind", "period_table"},
                 {"n", c.n},
                 {"T1", fowler::critical_period(c.n)},
                 {"center_energy", Ec},
                 {"energy_grid", "E = Ec + s |Ec|, s = 1e-8, 1/50, ..., 49/50"},
                 {"rows", rows.size()},
                 {"monotone", monotone},
                 {"columns", {"E", "T"}}};
  const fs::path dir = output_dir(c);
  Json summary = header;
  if (c.format == "json") {
    Json data = {{"E", Json::array()}, {"T", Json::array()}};
    for (const auto& r : rows) {
      data["E"].push_back(r.energy);
      data["T"].push_back(r.period);
    }
    header["data"] = data;
    io::write_text(dir / "period_table.json", io::dump(header));
    summary["files"] = {(dir / "period_table.json").string()};
  } else {
    io::write_text(dir / "period_table.csv", io::period_table_csv(rows));
    io::write_text(dir / "period_table.json", io::dump(header));
    summary["files"] = {(dir / "period_table.csv").string(),
                        (dir / "period_table.json").string()};
  }
  out << io::dump(summary);
  return kOk;
}

int verify(const Config& c, std::ostream& out) {
  const auto results = acceptance::run_all({}, [&out](const acceptance::CriterionResult& r) {
    out << acceptance::summary_line(r) << "\n" << std::flush;
  });
  const fs::path path = output_dir(c) / "verify.json";
  io::write_text(path, io::dump(acceptance::to_json(results)));
  const bool ok = acceptance::all_passed(results);
  out << (ok ? "all criteria passed" : "some criteria failed") << "; report in "
      << path.string() << "\n";
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic Yamabe and Derdzinski metrics on S^1 x S^{n-1}: solvers, "
               "curvature certificates and the acceptance suite."};
  app.name("pseudocyl");
  app.require_subcommand(1);
  Config c;
  std::string report_format = "json";

  const auto add_out = [&c, &report_format](CLI::App* sub, bool csv) {
    sub->add_option("--out", c.out, "Output directory");
    if (csv) {
      sub->add_option("--format", c.format, "csv (with a .json header) or json")
          ->check(CLI::IsMember({"csv", "json"}));
    } else {
      sub->add_option("--format", report_format, "json only")
          ->check(CLI::IsMember({"json"}));
    }
  };

  auto* fowler_cmd = app.add_subcommand("solve-fowler", "Periodic Fowler orbit of period T");
  fowler_cmd->add_option("--n", c.n, "Dimension n >= 3")->required();
  fowler_cmd->add_option("--period", c.period, "Circle length T > T1")->required();
  fowler_cmd->add_option("--tol", c.tol, "Accepted orbit residual (default 1e-8)");
  add_out(fowler_cmd, true);

  auto* derd_cmd = app.add_subcommand("solve-derdzinski", "Periodic warp function h(t)");
  derd_cmd->add_option("--m", c.m, "Fiber parameter m >= 3")->required();
  derd_cmd->add_option("--R", c.R, "Fiber scalar curvature R > 0")->required();
  derd_cmd->add_option("--C", c.C, "Constant C > 0")->required();
  derd_cmd->add_option("--energy-offset", c.energy_offset,
                       "E = Ec + s |Ec|, s in (0, 1) (default 0.5)");
  derd_cmd->add_option("--tol", c.tol, "Accepted orbit residual (default 1e-8)");
  add_out(derd_cmd, true);

  auto* report_cmd = app.add_subcommand("curvature-report", "Curvature certificates as JSON");
  report_cmd->add_option("--orbit", c.orbit, "Fowler orbit file (.csv or .json)");
  report_cmd->add_option("--factor", c.factor, "Built-in factor")
      ->check(CLI::IsMember({"cylinder", "fowler", "sinusoid"}));
  report_cmd->add_option("--n", c.n, "Dimension for built-in factors (default 4)");
  report_cmd->add_option("--period", c.period, "Circle length for built-in factors (default 6)");
  report_cmd->add_option("--grid-t", c.grid_t, "t grid points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  report_cmd->add_option("--grid-angular", c.grid_angular, "Angular grid points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_out(report_cmd, false);

  auto* table_cmd = app.add_subcommand("period-table", "T(E) over the closed-orbit window");
  table_cmd->add_option("--n", c.n, "Dimension n >= 3")->required();
  table_cmd->add_option("--tol", c.tol, "Quadrature tolerance (default 1e-12)");
  add_out(table_cmd, true);

  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
  add_out(verify_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*fowler_cmd) return solve_fowler(c, out);
    if (*derd_cmd) return solve_derdzinski(c, out);
    if (*report_cmd) return curvature_report(c, out);
    if (*table_cmd) return period_table(c, out);
    if (*verify_cmd) return verify(c, out);
    return kConfigError;
  } catch (const BelowThresholdError& e) {
    err << "below threshold: " << e.what() << "\n";
    return kBelowThreshold;
  } catch (const DegenerateOrbitError& e) {
    err << "degenerate orbit: " << e.what() << "\n";
    return kDegenerateOrbit;
  } catch (const DomainError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace pseudocyl::cli
