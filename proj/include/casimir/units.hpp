#pragma once

// Presentation-layer conversion from natural units (hbar = c = 1, lengths in
// a user-chosen unit) to SI.

#include <numbers>
#include <optional>
#include <stdexcept>

namespace casimir {

namespace si {

inline constexpr double planck = 6.62607015e-34;        // J s, exact
inline constexpr double speed_of_light = 299792458.0;   // m / s, exact
/// hbar c = 3.161526773e-26 J m
inline constexpr double hbar_c = planck * speed_of_light / (2.0 * std::numbers::pi);

}  // namespace si

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class UnitMode { Natural, SI };

struct UnitSystem {
  UnitMode mode = UnitMode::Natural;
  std::optional<double> length_unit_in_meters;

  static UnitSystem natural() { return {}; }
  static UnitSystem si_with(double meters) { return {UnitMode::SI, meters}; }

  double length_unit() const {
    if (!length_unit_in_meters) throw ConfigError("SI output requires a length unit");
    if (!(*length_unit_in_meters > 0.0)) throw ConfigError("length unit must be > 0");
    return *length_unit_in_meters;
  }
};

/// Energy per area: natural value * hbar c / unit^3, in J/m^2.
inline double convert_energy(double natural, const UnitSystem& u) {
  if (u.mode == UnitMode::Natural) return natural;
  const double l = u.length_unit();
  return natural * si::hbar_c / (l * l * l);
}

/// Force per area: natural value * hbar c / unit^4, in Pa.
inline double convert_force(double natural, const UnitSystem& u) {
  if (u.mode == UnitMode::Natural) return natural;
  const double l = u.length_unit();
  return natural * si::hbar_c / ((l * l) * (l * l));
}

}  // namespace casimir
