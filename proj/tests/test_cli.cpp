#include "pseudocyl/cli.hpp"
#include "pseudocyl/report_io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace pseudocyl;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pseudocyl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pseudocyl_cli" / name;
  fs::remove_all(dir);
  return dir.string();
}

io::Json report(const Run& r) { return io::Json::parse(r.out); }

}  // namespace

TEST_CASE("solve-fowler writes the orbit and a summary") {
  const std::string dir = scratch("fowler");
  const Run r = run({"solve-fowler", "--n", "4", "--period", "6", "--out", dir});
  REQUIRE(r.code == cli::kOk);
  const io::Json j = report(r);
  CHECK(j["E"].get<double>() == doctest::Approx(-0.021733401193460466).epsilon(1e-12));
  CHECK(j["u_min"].get<double>() < j["u_max"].get<double>());
  CHECK(fs::exists(fs::path(dir) / "fowler_orbit.csv"));
  CHECK(fs::exists(fs::path(dir) / "fowler_orbit.json"));

  // identical inputs give identical bytes
  const std::string first = io::read_text(fs::path(dir) / "fowler_orbit.csv");
  REQUIRE(run({"solve-fowler", "--n", "4", "--period", "6", "--out", dir}).code == 0);
  CHECK(io::read_text(fs::path(dir) / "fowler_orbit.csv") == first);

  const std::string jdir = scratch("fowler_json");
  REQUIRE(run({"solve-fowler", "--n", "4", "--period", "6", "--out", jdir, "--format", "json"})
              .code == 0);
  CHECK(io::read_orbit(fs::path(jdir) / "fowler_orbit.json").u.size() == 256);
}

TEST_CASE("solve-fowler error paths") {
  const Run below = run({"solve-fowler", "--n", "4", "--period", "4", "--out", scratch("x")});
  CHECK(below.code == cli::kBelowThreshold);
  CHECK(below.err.find("4.44288") != std::string::npos);
  CHECK(run({"solve-fowler", "--n", "2", "--period", "6"}).code == cli::kConfigError);
  CHECK(run({"solve-fowler", "--n", "4"}).code == cli::kConfigError);
  CHECK(run({"solve-fowler", "--n", "4", "--period", "6", "--bogus", "1"}).code ==
        cli::kConfigError);
  CHECK(run({"solve-fowler", "--n", "4", "--period", "6", "--format", "xml"}).code ==
        cli::kConfigError);
  CHECK(run({"solve-fowler", "--n", "4", "--period", "6", "--tol", "1e-30", "--out",
             scratch("tight")})
            .code == cli::kNumericalError);
  CHECK(run({}).code == cli::kConfigError);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("solve-derdzinski") {
  const std::string dir = scratch("derd");
  const Run r = run({"solve-derdzinski", "--m", "3", "--R", "6", "--C", "2",
                     "--energy-offset", "0.5", "--out", dir});
  REQUIRE(r.code == cli::kOk);
  CHECK(report(r)["period"].get<double>() == doctest::Approx(4.2775714404529964).epsilon(1e-11));
  CHECK(fs::exists(fs::path(dir) / "derdzinski_orbit.csv"));
  CHECK(run({"solve-derdzinski", "--m", "3", "--R", "6", "--C", "2", "--energy-offset", "0"})
            .code == cli::kDegenerateOrbit);
  CHECK(run({"solve-derdzinski", "--m", "3", "--R", "6", "--C", "0"}).code == cli::kConfigError);
}

TEST_CASE("curvature-report verdicts") {
  const std::vector<std::string> small = {"--grid-t", "8", "--grid-angular", "2"};
  auto verdict = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "curvature-report");
    args.insert(args.end(), small.begin(), small.end());
    args.push_back("--out");
    args.push_back(scratch("report"));
    const Run r = run(args);
    REQUIRE(r.code == cli::kOk);
    return report(r);
  };
  const io::Json cyl = verdict({"--factor", "cylinder"});
  CHECK(cyl["verdict"]["harmonic"] == true);
  CHECK(cyl["verdict"]["parallel"] == true);
  const io::Json fow = verdict({"--factor", "fowler", "--n", "4", "--period", "6"});
  CHECK(fow["verdict"]["harmonic"] == true);
  CHECK(fow["verdict"]["parallel"] == false);
  CHECK(fow["laplacian_convention"] == "Delta = -div grad (nonnegative operator)");
  const io::Json sin = verdict({"--factor", "sinusoid"});
  CHECK(sin["verdict"]["harmonic"] == false);

  const std::string dir = scratch("from_file");
  REQUIRE(run({"solve-fowler", "--n", "4", "--period", "6", "--out", dir}).code == 0);
  const io::Json file = verdict({"--orbit", (fs::path(dir) / "fowler_orbit.csv").string()});
  CHECK(file["verdict"]["harmonic"] == true);
  CHECK(file["verdict"]["nonparallel_certified"] == true);

  CHECK(run({"curvature-report", "--orbit", "/nonexistent/orbit.csv"}).code == cli::kIoError);
  CHECK(run({"curvature-report"}).code == cli::kConfigError);
  CHECK(run({"curvature-report", "--factor", "cylinder", "--format", "csv"}).code ==
        cli::kConfigError);
}

TEST_CASE("period-table") {
  for (int n : {3, 4}) {
    const std::string dir = scratch("table" + std::to_string(n));
    const Run r = run({"period-table", "--n", std::to_string(n), "--out", dir});
    REQUIRE(r.code == cli::kOk);
    CHECK(report(r)["monotone"] == true);
    const std::string csv = io::read_text(fs::path(dir) / "period_table.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);
    const std::string first = csv.substr(csv.find('\n') + 1);
    const double T = std::stod(first.substr(first.find(',') + 1));
    CHECK(std::abs(T - 2.0 * M_PI / std::sqrt(n - 2.0)) < 1e-4);
  }
}
