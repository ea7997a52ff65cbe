#include "pseudocyl/acceptance.hpp"

#include "pseudocyl/correspondence.hpp"
#include "pseudocyl/derdzinski.hpp"
#include "pseudocyl/errors.hpp"
#include "pseudocyl/fowler.hpp"

#include <cmath>
#include <numbers>

namespace pseudocyl::acceptance {

namespace {

using conformal::ConformalCylinderMetric;
using io::Json;

constexpr DerdzinskiParams kDerdzinski{3, 6.0, 2.0};

PeriodicScalar sinusoid(double mean, double amplitude, double T) {
  const double w = 2.0 * std::numbers::pi / T;
  return PeriodicScalar(
      T,
      [=](double t) {
        const double s = std::sin(w * t), c = std::cos(w * t);
        return Jet3{mean + amplitude * s, amplitude * w * c, -amplitude * w * w * s,
                    -amplitude * w * w * w * c};
      },
      "sinusoid");
}

// Fowler orbit comfortably above the threshold.
PeriodicOrbit fowler_orbit(int n) {
  return fowler::solve_period(n, 1.35 * fowler::critical_period(n));
}

double energy_at(double center, double offset) { return center + offset * std::abs(center); }

CriterionResult make(int id, const char* name) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.measurements = Json::object();
  return r;
}

CriterionResult threshold(const Options&) {
  CriterionResult r = make(1, "threshold reproduction");
  r.passed = true;
  for (int n = 3; n <= 6; ++n) {
    const double E = energy_at(fowler::center_energy(n), 1e-8);
    const double T = fowler::period_function(n, E);
    const double T1 = fowler::critical_period(n);
    const double err = std::abs(T - T1);
    r.passed = r.passed && err <= 1e-4;
    r.measurements["n" + std::to_string(n)] = {{"E", E}, {"T", T}, {"T1", T1}, {"error", err}};
  }
  return r;
}

CriterionResult existence(const Options&) {
  CriterionResult r = make(2, "existence above threshold");
  const PeriodicOrbit orbit = fowler::solve_period(4, 6.0);
  const double residual = orbit.max_residual();
  const double period_error = std::abs(fowler::return_time_period(4, orbit.energy) - 6.0);
  const double ratio = orbit.x_max / orbit.x_min;
  bool rejected = false;
  double threshold = 0.0;
  try {
    fowler::solve_period(4, 4.0);
  } catch (const BelowThresholdError& e) {
    rejected = true;
    threshold = e.threshold();
  }
  r.passed = residual <= 1e-8 && period_error <= 1e-8 && ratio >= 1.01 && rejected;
  r.measurements = {{"energy", orbit.energy},
                    {"max_residual", residual},
                    {"period_error", period_error},
                    {"u_max_over_u_min", ratio},
                    {"T4_rejected", rejected},
                    {"T1", threshold}};
  return r;
}

CriterionResult scalar_constant(const Options&) {
  CriterionResult r = make(3, "scalar curvature constant");
  const ConformalCylinderMetric m(4, 6.0, fowler::solve_period(4, 6.0).factor);
  const geometry::MetricField field = m.assemble();
  std::vector<double> values;
  for (const auto& p : conformal::grid_points(4, 6.0, {}))
    values.push_back(geometry::scalar_curvature(field, p));
  const conformal::Statistics s = conformal::statistics(values, 12.0);
  r.passed = s.max_deviation <= 1e-6;
  r.measurements = io::to_json(s);
  return r;
}

CriterionResult theorem_one(const Options&) {
  CriterionResult r = make(4, "harmonic and non-parallel");
  const ConformalCylinderMetric m(4, 6.0, fowler::solve_period(4, 6.0).factor);
  const double codazzi = conformal::harmonicity_certificate(m).codazzi_max;
  const double dric = conformal::nonparallelism_certificate(m).dricci_max;
  const ConformalCylinderMetric cyl(
      4, 6.0, PeriodicScalar::constant(fowler::constant_solution<double>(4), 6.0));
  const double cyl_codazzi = conformal::harmonicity_certificate(cyl).codazzi_max;
  const double cyl_dric = conformal::nonparallelism_certificate(cyl).dricci_max;
  r.passed = codazzi <= 1e-6 && dric >= 1e-3 && cyl_codazzi <= 1e-10 && cyl_dric <= 1e-10;
  r.measurements = {{"codazzi_max", codazzi},
                    {"dricci_max", dric},
                    {"cylinder_codazzi_max", cyl_codazzi},
                    {"cylinder_dricci_max", cyl_dric}};
  return r;
}

CriterionResult negative_control(const Options&) {
  CriterionResult r = make(5, "negative control");
  const ConformalCylinderMetric m(4, 6.0, sinusoid(1.0, 0.3, 6.0));
  const conformal::CurvatureReport h = conformal::harmonicity_certificate(m);
  r.passed = h.codazzi_max >= 1e-3 && h.scalar_closed.stddev >= 1e-2;
  r.measurements = {{"codazzi_max", h.codazzi_max},
                    {"scalar_stddev", h.scalar_closed.stddev}};
  return r;
}

CriterionResult oracle(const Options& options) {
  CriterionResult r = make(6, "oracle agreement");
  r.passed = true;
  for (int n = 3; n <= 5; ++n) {
    const PeriodicOrbit orbit = fowler_orbit(n);
    const ConformalCylinderMetric m(n, orbit.period, orbit.factor);
    const conformal::OracleAgreement a = conformal::oracle_agreement(
        m, conformal::sample_points(n, orbit.period, 20), options.ricci_formula);
    r.passed = r.passed && a.worst() <= 1e-6;
    r.measurements["n" + std::to_string(n)] = io::to_json(a);
  }
  r.measurements["ricci_formula"] = conformal::to_string(options.ricci_formula);
  return r;
}

CriterionResult weyl(const Options&) {
  CriterionResult r = make(7, "conformal flatness");
  r.passed = true;
  for (int n = 3; n <= 5; ++n) {
    const PeriodicOrbit orbit = fowler_orbit(n);
    const double w =
        conformal::weyl_vanishing_check(ConformalCylinderMetric(n, orbit.period, orbit.factor));
    r.passed = r.passed && w <= (n == 3 ? 1e-12 : 1e-6);
    r.measurements["n" + std::to_string(n)] = w;
  }
  return r;
}

CriterionResult derdzinski_solver(const Options&) {
  CriterionResult r = make(8, "Derdzinski solver");
  const DerdzinskiParams& p = kDerdzinski;
  const double h0 = derdzinski::derdzinski_constant(p);
  const double constant_residual = std::abs(derdzinski::derdzinski_residual(p, h0, 0.0));
  const double Ec = derdzinski::center_energy(p);
  const double near = derdzinski::period(p, energy_at(Ec, 1e-8));
  const double linear = derdzinski::small_oscillation_period(p);
  const PeriodicOrbit orbit = derdzinski::solve_derdzinski_periodic(p, energy_at(Ec, 0.5));
  const double residual = orbit.max_residual();
  const double drift = orbit.max_energy_deviation();
  r.passed = constant_residual <= 1e-12 && std::abs(near - linear) <= 1e-4 &&
             residual <= 1e-8 && drift <= 1e-10;
  r.measurements = {{"h0", h0},
                    {"constant_residual", constant_residual},
                    {"near_center_period", near},
                    {"linearized_period", linear},
                    {"orbit_residual", residual},
                    {"energy_drift", drift}};
  return r;
}

CriterionResult lemma_one(const Options&) {
  CriterionResult r = make(9, "warped to conformal identity");
  const PeriodicOrbit orbit = derdzinski::solve_derdzinski_periodic(
      kDerdzinski, energy_at(derdzinski::center_energy(kDerdzinski), 0.5));
  const std::vector<std::pair<std::string, correspondence::WarpedMetric>> warps = {
      {"constant", {5.0, PeriodicScalar::constant(0.7, 5.0), 3}},
      {"sinusoid", {5.0, sinusoid(1.0, 0.2, 5.0), 3}},
      {"derdzinski", correspondence::derdzinski_warp(
                         orbit, correspondence::FiberConvention::kTotalDimension)}};
  r.passed = true;
  for (const auto& [name, w] : warps) {
    const correspondence::ConformalEquivalence eq = correspondence::warped_to_conformal(w);
    const double length_error = std::abs(eq.L - correspondence::length_by_quadrature(w));
    const double round_trip = eq.reparam->round_trip_error();
    r.passed = r.passed && eq.pullback_error <= 1e-9 && length_error <= 1e-10 &&
               round_trip <= 1e-10;
    r.measurements[name] = {{"L", eq.L},
                            {"pullback_error", eq.pullback_error},
                            {"length_error", length_error},
                            {"round_trip_error", round_trip}};
  }
  return r;
}

CriterionResult transport(const Options&) {
  CriterionResult r = make(10, "identification transport");
  const PeriodicOrbit orbit = derdzinski::solve_derdzinski_periodic(
      kDerdzinski, energy_at(derdzinski::center_energy(kDerdzinski), 0.5));
  Json passing = Json::array();
  Json reports = Json::array();
  for (auto c : {correspondence::FiberConvention::kFiberDimension,
                 correspondence::FiberConvention::kTotalDimension}) {
    const auto eq = correspondence::derdzinski_to_pseudocylindric(orbit, c);
    const auto report = correspondence::verify_identification(eq, eq.n);
    if (report.passed()) passing.push_back(report.convention);
    reports.push_back(io::to_json(report));
  }
  r.passed = !passing.empty();
  r.measurements = {{"passing_conventions", passing}, {"reports", reports}};
  return r;
}

CriterionResult determinism(const Options& options) {
  CriterionResult r = make(11, "determinism");
  const std::string first = io::dump(to_json(run_core(options)));
  const std::string second = io::dump(to_json(run_core(options)));
  r.passed = first == second;
  r.measurements = {{"bytes", first.size()}, {"identical", r.passed}};
  return r;
}

// Any library error inside a criterion turns into a failed result that
// carries the message.
Criterion guarded(int id, const char* name, CriterionResult (*fn)(const Options&)) {
  return {id, name, [id, name, fn](const Options& o) {
            try {
              return fn(o);
            } catch (const Error& e) {
              CriterionResult r = make(id, name);
              r.measurements = {{"error", e.what()}};
              return r;
            }
          }};
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      guarded(1, "threshold reproduction", threshold),
      guarded(2, "existence above threshold", existence),
      guarded(3, "scalar curvature constant", scalar_constant),
      guarded(4, "harmonic and non-parallel", theorem_one),
      guarded(5, "negative control", negative_control),
      guarded(6, "oracle agreement", oracle),
      guarded(7, "conformal flatness", weyl),
      guarded(8, "Derdzinski solver", derdzinski_solver),
      guarded(9, "warped to conformal identity", lemma_one),
      guarded(10, "identification transport", transport),
      guarded(11, "determinism", determinism),
  };
  return all;
}

CriterionResult run_criterion(int id, const Options& options) {
  for (const auto& c : criteria())
    if (c.id == id) return c.run(options);
  throw DomainError("no acceptance criterion with id " + std::to_string(id));
}

std::vector<CriterionResult> run_core(const Options& options) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria())
    if (c.id <= 10) out.push_back(c.run(options));
  return out;
}

std::vector<CriterionResult> run_all(
    const Options& options, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    out.push_back(c.run(options));
    if (on_result) on_result(out.back());
  }
  return out;
}

Json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"measurements", r.measurements}};
}

Json to_json(const std::vector<CriterionResult>& results) {
  Json list = Json::array();
  for (const auto& r : results) list.push_back(to_json(r));
  return {{"schema_version", io::kSchemaVersion},
          {"kind", "acceptance"},
          {"all_passed", all_passed(results)},
          {"criteria", list}};
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

std::string summary_line(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + (r.id < 10 ? "  " : " ") +
         std::to_string(r.id) + " " + r.name;
}

}  // namespace pseudocyl::acceptance
