#pragma once

#include "pseudocyl/conformal_cylinder.hpp"
#include "pseudocyl/correspondence.hpp"
#include "pseudocyl/oscillator.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace pseudocyl::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// %.17g, the CSV cell format.
std::string format_double(double x);

Json to_json(const OrbitParams& params);
Json to_json(const conformal::Statistics& s);
Json to_json(const conformal::OracleAgreement& a);
Json to_json(const conformal::CurvatureReport& r);
Json to_json(const correspondence::IdentificationReport& r);

/// Header describing an orbit; with include_samples the t, u, u_prime
/// columns are embedded as arrays.
Json orbit_json(const PeriodicOrbit& orbit, bool include_samples);
std::string orbit_csv(const PeriodicOrbit& orbit);

struct PeriodRow {
  double energy;
  double period;
};
std::string period_table_csv(const std::vector<PeriodRow>& rows);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json& j);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Orbit samples read back from disk.
struct OrbitFile {
  OrbitParams params;
  double energy = 0.0;
  double period = 0.0;
  std::vector<double> t;
  std::vector<double> u;
  std::vector<double> u_prime;
};

/// Accepts either the JSON form with embedded samples, or a CSV file whose
/// header sits next to it with the extension .json.
OrbitFile read_orbit(const std::filesystem::path& path);

PowerPotential<double> potential_for(const OrbitParams& params);

/// Spectral interpolant of the samples with u'' and u''' from the equation.
PeriodicScalar orbit_factor(const OrbitFile& orbit);

}  // namespace pseudocyl::io
