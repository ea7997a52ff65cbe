#include "pseudocyl/derdzinski.hpp"

#include <numbers>
#include <sstream>

namespace pseudocyl::derdzinski {

void validate(const DerdzinskiParams& p) {
  if (p.m < 3) throw DomainError("Derdzinski parameters: m must be >= 3");
  if (!(p.R > 0.0)) throw DomainError("Derdzinski parameters: R must be positive");
  if (!(p.C > 0.0)) throw DomainError("Derdzinski parameters: C must be positive");
}

double derdzinski_constant(const DerdzinskiParams& p) {
  validate(p);
  return std::pow(p.R / (p.C * (p.m - 1.0)), p.m / 4.0);
}

double center_energy(const DerdzinskiParams& p) {
  return derdzinski_potential<double>(p)(derdzinski_constant(p));
}

double small_oscillation_period(const DerdzinskiParams& p) {
  validate(p);
  return 2.0 * std::numbers::pi / std::sqrt(p.C);
}

Oscillator derdzinski_oscillator(const DerdzinskiParams& p) {
  std::ostringstream name;
  name << "Derdzinski(m=" << p.m << ", R=" << p.R << ", C=" << p.C << ")";
  return Oscillator(derdzinski_potential<double>(p), derdzinski_constant(p), name.str());
}

double period(const DerdzinskiParams& p, double energy) {
  return derdzinski_oscillator(p).period(energy);
}

PeriodicOrbit solve_derdzinski_periodic(const DerdzinskiParams& p, double energy,
                                        int samples) {
  return derdzinski_oscillator(p).orbit(energy, p, samples);
}

}  // namespace pseudocyl::derdzinski
