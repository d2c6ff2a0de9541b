#pragma once

// Analytic Casimir energies and forces per unit area for ideal plates with a
// Cauchy-dispersive medium in between, to first order in n1. Natural units:
// energy/area ~ length^-3, force/area ~ length^-4.

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>
#include <utility>

#include "casimir/dispersion.hpp"
#include "casimir/errors.hpp"

namespace casimir {

/// Phenomenological surface contribution E_s = coefficient / L^4.
struct SurfaceTerm {
  double coefficient = 0.0;
};

/// Plate separation, medium and optional surface term.
class Scenario {
 public:
  Scenario(double separation, DispersionModel model,
           std::optional<SurfaceTerm> surface = std::nullopt)
      : separation_(separation), model_(std::move(model)), surface_(surface) {
    detail::require(separation > 0.0 && std::isfinite(separation),
                    "scenario: separation must be > 0");
    if (surface_) {
      detail::require(std::isfinite(surface_->coefficient),
                      "scenario: surface coefficient must be finite");
    }
  }

  double separation() const { return separation_; }
  const DispersionModel& model() const { return model_; }
  const std::optional<SurfaceTerm>& surface() const { return surface_; }

  Scenario with_separation(double separation) const { return {separation, model_, surface_}; }

 private:
  double separation_;
  DispersionModel model_;
  std::optional<SurfaceTerm> surface_;
};

enum class Method { Analytic, Lifshitz };

inline std::string_view to_string(Method m) {
  return m == Method::Analytic ? "analytic" : "lifshitz";
}

struct EnergyBreakdown {
  double e0 = 0.0;
  double delta_e = 0.0;
  double e_surface = 0.0;
  double total = 0.0;
  Method method = Method::Analytic;
  double error_estimate = 0.0;
  bool outside_validity = false;  // L <= 2 pi sqrt(n1)
  bool kappa_clamped = false;     // kappa_1 reached zero inside the integration range
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPi2 = kPi * kPi;
inline constexpr double kPi4 = kPi2 * kPi2;

inline CauchyIndex closed_form_parameters(const DispersionModel& model) {
  auto c = model.cauchy_parameters();
  if (!c) throw UnsupportedModel("closed form requires a constant or Cauchy model");
  return *c;
}

}  // namespace detail

/// Frequency of the mode with perpendicular index j and in-plane momentum kT.
inline double mode_frequency(int j, double kt, double separation, double n0) {
  detail::require(j >= 1, "mode_frequency: j must be >= 1");
  detail::require(kt >= 0.0, "mode_frequency: kT must be >= 0");
  detail::require(separation > 0.0, "mode_frequency: separation must be > 0");
  detail::require(n0 > 0.0, "mode_frequency: n0 must be > 0");
  return std::hypot(kt, j * detail::kPi / separation) / n0;
}

/// -pi^2 / (720 n0 L^3)
inline double e0_analytic(double separation, double n0) {
  detail::require(separation > 0.0, "e0_analytic: separation must be > 0");
  detail::require(n0 > 0.0, "e0_analytic: n0 must be > 0");
  const double l3 = separation * separation * separation;
  return -detail::kPi2 / (720.0 * n0 * l3);
}

/// -n1 pi^4 / (2520 n0^4 L^5)
inline double delta_e_analytic(double separation, double n0, double n1) {
  detail::require(separation > 0.0, "delta_e_analytic: separation must be > 0");
  detail::require(n0 > 0.0, "delta_e_analytic: n0 must be > 0");
  detail::require(n1 >= 0.0, "delta_e_analytic: n1 must be >= 0");
  const double n0_4 = (n0 * n0) * (n0 * n0);
  const double l5 = separation * separation * separation * separation * separation;
  return -n1 * (detail::kPi4 / (2520.0 * n0_4 * l5)) + 0.0;  // no -0 at n1 = 0
}

/// Relative size of the dispersive correction, 2 pi^2 n1 / (7 n0^3 L^2).
inline double dispersive_ratio(double separation, double n0, double n1) {
  detail::require(separation > 0.0, "dispersive_ratio: separation must be > 0");
  detail::require(n0 > 0.0, "dispersive_ratio: n0 must be > 0");
  return (2.0 * detail::kPi2 * n1) / (7.0 * (n0 * n0 * n0) * (separation * separation));
}

inline double surface_energy(double separation, const SurfaceTerm& term) {
  detail::require(separation > 0.0, "surface_energy: separation must be > 0");
  const double l2 = separation * separation;
  return term.coefficient / (l2 * l2);
}

inline double surface_energy(const Scenario& s) {
  return s.surface() ? surface_energy(s.separation(), *s.surface()) : 0.0;
}

/// -pi^2 / (240 L^4), the dielectric-free force per area.
inline double vacuum_force(double separation) {
  detail::require(separation > 0.0, "vacuum_force: separation must be > 0");
  const double l2 = separation * separation;
  return -detail::kPi2 / (240.0 * l2 * l2);
}

inline EnergyBreakdown total_energy_analytic(const Scenario& s) {
  const auto c = detail::closed_form_parameters(s.model());
  const double l = s.separation();
  EnergyBreakdown out;
  out.method = Method::Analytic;
  out.e0 = e0_analytic(l, c.n0);
  out.delta_e = delta_e_analytic(l, c.n0, c.n1);
  out.e_surface = surface_energy(s);
  out.total = out.e0 + out.delta_e + out.e_surface;
  out.outside_validity = !validity(s.model()).is_valid_at(l);
  return out;
}

/// -dE/dL of total_energy_analytic, differentiated by hand.
inline double force_analytic(const Scenario& s) {
  const auto c = detail::closed_form_parameters(s.model());
  const double l = s.separation();
  const double l2 = l * l;
  const double l4 = l2 * l2;
  const double n0_4 = (c.n0 * c.n0) * (c.n0 * c.n0);
  double force = -detail::kPi2 / (240.0 * c.n0 * l4);
  force -= c.n1 * detail::kPi4 / (504.0 * n0_4 * l4 * l2);
  if (s.surface()) force += 4.0 * s.surface()->coefficient / (l4 * l);
  return force;
}

}  // namespace casimir
