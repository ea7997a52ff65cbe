#include "pseudocyl/report_io.hpp"

#include "pseudocyl/derdzinski.hpp"
#include "pseudocyl/errors.hpp"
#include "pseudocyl/fowler.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pseudocyl::io {

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json point(const geometry::ChartPoint& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

std::vector<double> parse_row(const std::string& line, std::size_t columns,
                              const std::filesystem::path& path, std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size() && cell.find_first_not_of(" \r", used) != std::string::npos)
        throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad number '" +
                    cell + "'");
    }
  }
  if (out.size() != columns)
    throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                  std::to_string(columns) + " columns");
  return out;
}

OrbitParams params_from_json(const Json& j) {
  const std::string eq = j.at("equation").get<std::string>();
  const Json& p = j.at("params");
  if (eq == "fowler") return FowlerParams{p.at("n").get<int>()};
  if (eq == "derdzinski")
    return DerdzinskiParams{p.at("m").get<int>(), p.at("R").get<double>(),
                            p.at("C").get<double>()};
  throw IoError("unknown equation '" + eq + "' in orbit header");
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const OrbitParams& params) {
  return std::visit(
      [](const auto& p) -> Json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FowlerParams>) {
          return {{"n", p.n}};
        } else {
          return {{"m", p.m}, {"R", p.R}, {"C", p.C}};
        }
      },
      params);
}

Json to_json(const conformal::Statistics& s) {
  return {{"mean", number(s.mean)},
          {"stddev", number(s.stddev)},
          {"max_deviation", number(s.max_deviation)},
          {"target", number(s.target)}};
}

Json to_json(const conformal::OracleAgreement& a) {
  return {{"points", a.points},
          {"christoffel", number(a.christoffel)},
          {"ricci", number(a.ricci)},
          {"dricci", number(a.dricci)},
          {"scalar", number(a.scalar)},
          {"worst", number(a.worst())}};
}

Json to_json(const conformal::CurvatureReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "curvature_report";
  j["factor"] = r.factor_label;
  j["n"] = r.n;
  j["T"] = r.T;
  j["grid"] = {{"t_points", r.grid.t_points},
               {"angular_points", r.grid.angular_points},
               {"angular_margin", r.grid.angular_margin}};
  j["verdict"] = {{"harmonic", r.harmonic()},
                  {"parallel", r.parallel()},
                  {"nonparallel_certified", r.nonparallel_certified()}};
  j["thresholds"] = {{"harmonic", conformal::kHarmonicThreshold},
                     {"nonparallel", conformal::kNonParallelThreshold},
                     {"parallel", conformal::kParallelThreshold}};
  j["scalar_curvature_closed"] = to_json(r.scalar_closed);
  j["scalar_curvature_oracle"] = r.scalar_oracle ? to_json(*r.scalar_oracle) : Json();
  j["codazzi_max"] = number(r.codazzi_max);
  j["codazzi_witness"] = point(r.codazzi_witness);
  j["dricci_max"] = number(r.dricci_max);
  j["dricci_witness"] = point(r.dricci_witness);
  j["weyl_max"] = r.weyl_max ? number(*r.weyl_max) : Json();
  j["oracle_agreement"] = r.oracle ? to_json(*r.oracle) : Json();
  j["audit"] = {{"d0r00_vs_dt_r00", number(r.d0r00_shortcut_gap)},
                {"r00_alternative_vs_law", number(r.alternative_r00_gap)},
                {"gamma0_jk_rescaled_vs_law", number(r.gamma0jk_rescaling_gap)}};
  j["ricci_formula"] = r.ricci_formula;
  j["laplacian_convention"] = r.laplacian_convention;
  return j;
}

Json to_json(const correspondence::IdentificationReport& r) {
  return {{"convention", r.convention},
          {"m", r.m},
          {"n", r.n},
          {"L", number(r.L)},
          {"R_bar_mean", number(r.r_bar_mean)},
          {"R_bar_stddev", number(r.r_bar_stddev)},
          {"generalized_fowler_residual_max", number(r.generalized_fowler_residual_max)},
          {"homothety_lambda", number(r.homothety_lambda)},
          {"fowler_residual_max", number(r.fowler_residual_max)},
          {"codazzi_max", number(r.codazzi_max)},
          {"dric_max", number(r.dric_max)},
          {"pass",
           {{"constant_scalar", r.constant_scalar},
            {"fowler", r.fowler},
            {"harmonic", r.harmonic},
            {"nonparallel", r.nonparallel},
            {"all", r.passed()}}}};
}

Json orbit_json(const PeriodicOrbit& orbit, bool include_samples) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "orbit";
  j["equation"] =
      std::holds_alternative<FowlerParams>(orbit.params) ? "fowler" : "derdzinski";
  j["params"] = to_json(orbit.params);
  j["energy"] = orbit.energy;
  j["period"] = orbit.period;
  j["u_min"] = orbit.x_min;
  j["u_max"] = orbit.x_max;
  j["samples"] = orbit.t.size();
  j["max_residual"] = orbit.max_residual();
  j["max_energy_deviation"] = orbit.max_energy_deviation();
  j["columns"] = {"t", "u", "u_prime"};
  if (include_samples) j["data"] = {{"t", orbit.t}, {"u", orbit.x}, {"u_prime", orbit.x_prime}};
  return j;
}

std::string orbit_csv(const PeriodicOrbit& orbit) {
  std::string out = "t,u,u_prime\n";
  for (std::size_t k = 0; k < orbit.t.size(); ++k) {
    out += format_double(orbit.t[k]) + "," + format_double(orbit.x[k]) + "," +
           format_double(orbit.x_prime[k]) + "\n";
  }
  return out;
}

std::string period_table_csv(const std::vector<PeriodRow>& rows) {
  std::string out = "E,T\n";
  for (const auto& r : rows)
    out += format_double(r.energy) + "," + format_double(r.period) + "\n";
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OrbitFile read_orbit(const std::filesystem::path& path) {
  std::filesystem::path header_path = path;
  const bool is_csv = path.extension() == ".csv";
  if (is_csv) header_path.replace_extension(".json");
  Json header;
  try {
    header = Json::parse(read_text(header_path));
  } catch (const Json::parse_error& e) {
    throw IoError(header_path.string() + ": " + e.what());
  }

  OrbitFile out;
  try {
    if (header.at("schema_version").get<std::string>() != kSchemaVersion)
      throw IoError(header_path.string() + ": unsupported schema_version");
    if (header.at("kind").get<std::string>() != "orbit")
      throw IoError(header_path.string() + ": not an orbit file");
    out.params = params_from_json(header);
    out.energy = header.at("energy").get<double>();
    out.period = header.at("period").get<double>();
    if (!is_csv) {
      const Json& d = header.at("data");
      out.t = d.at("t").get<std::vector<double>>();
      out.u = d.at("u").get<std::vector<double>>();
      out.u_prime = d.at("u_prime").get<std::vector<double>>();
    }
  } catch (const Json::exception& e) {
    throw IoError(header_path.string() + ": " + e.what());
  }

  if (is_csv) {
    std::istringstream in(read_text(path));
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || (line != "t,u,u_prime" && line != "t,u,u_prime\r"))
      throw IoError(path.string() + ": expected header t,u,u_prime");
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line == "\r") continue;
      const auto row = parse_row(line, 3, path, lineno);
      out.t.push_back(row[0]);
      out.u.push_back(row[1]);
      out.u_prime.push_back(row[2]);
    }
  }

  const std::size_t n = out.t.size();
  if (n < 8 || n % 2 != 0 || out.u.size() != n || out.u_prime.size() != n)
    throw IoError(path.string() + ": need an even number (>= 8) of samples");
  for (std::size_t k = 0; k < n; ++k) {
    const double expected = out.period * static_cast<double>(k) / static_cast<double>(n);
    if (std::abs(out.t[k] - expected) > 1e-9 * out.period)
      throw IoError(path.string() + ": samples are not uniform over one period");
  }
  return out;
}

PowerPotential<double> potential_for(const OrbitParams& params) {
  return std::visit(
      [](const auto& p) -> PowerPotential<double> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FowlerParams>) {
          return fowler::fowler_potential<double>(p.n);
        } else {
          return derdzinski::derdzinski_potential<double>(p);
        }
      },
      params);
}

PeriodicScalar orbit_factor(const OrbitFile& orbit) {
  auto u = std::make_shared<const TrigSeries>(orbit.u, orbit.period);
  auto du = std::make_shared<const TrigSeries>(orbit.u_prime, orbit.period);
  PeriodicScalar f = ode_factor(u, du, potential_for(orbit.params), "orbit file");
  f.require_positive();
  return f;
}

}  // namespace pseudocyl::io
