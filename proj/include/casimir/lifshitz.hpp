#pragma once

// Lifshitz energy per unit area for ideal plates,
//
//   E = 1/(2 pi^2) int_0^inf dxi int_{kappa_1(xi)}^inf dkappa kappa log(1 - e^{-2 kappa L}),
//
// with the inner integral in closed form (polylogarithms) and the outer one
// by adaptive Gauss-Kronrod on [0, xi_max] plus a bound on the discarded tail.

#include <cmath>
#include <numbers>
#include <optional>

#include "casimir/closed_form.hpp"
#include "casimir/dispersion.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/special_functions.hpp"

namespace casimir {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;  // energy/area
  int max_subdivisions = 200;
  double tail_cut = 1e-16;  // xi_max chosen so that e^{-2 L kappa_1(xi_max)} = tail_cut

  void validate() const {
    detail::require(rel_tol > 0.0 && abs_tol > 0.0, "quadrature: tolerances must be > 0");
    detail::require(max_subdivisions >= 10, "quadrature: max_subdivisions must be >= 10");
    detail::require(tail_cut > 0.0 && tail_cut < 1.0, "quadrature: tail_cut must be in (0, 1)");
  }
};

/// Value with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  bool kappa_clamped = false;
};

enum class LifshitzMode { FirstOrderSplit, FullKappa1 };

struct IntegrandPoint {
  double xi = 0.0;
  double kappa1 = 0.0;
  double inner_value = 0.0;
};

/// int_{kappa1}^inf kappa log(1 - e^{-2 kappa L}) dkappa
///   = -(kappa1 / 2L) Li2(e^{-2 kappa1 L}) - (1 / 4L^2) Li3(e^{-2 kappa1 L}).
inline double inner_integral(double kappa1, double separation) {
  detail::require(kappa1 >= 0.0, "inner_integral: kappa1 must be >= 0");
  detail::require(separation > 0.0, "inner_integral: separation must be > 0");
  const double mu = -2.0 * kappa1 * separation;
  if (mu < -745.0) return 0.0;
  const double li2 = polylog_exp(2, mu);
  const double li3 = polylog_exp(3, mu);
  return -(kappa1 / (2.0 * separation)) * li2 - li3 / (4.0 * separation * separation);
}

inline IntegrandPoint integrand_point(const DispersionModel& model, double xi,
                                      double separation) {
  const double k = kappa_lower(model, xi).value;
  return {xi, k, inner_integral(k, separation)};
}

namespace detail {

inline constexpr double kTwoPi2 = 2.0 * std::numbers::pi * std::numbers::pi;

inline double scaled_abs_tol(const QuadratureSpec& q) { return q.abs_tol * kTwoPi2; }

// int_{x}^inf (a t + b) e^{-c t} dt
inline double linear_exp_tail(double a, double b, double c, double x) {
  return std::exp(-c * x) * (a * (x / c + 1.0 / (c * c)) + b / c);
}

struct OuterRange {
  double xi_end = 0.0;
  double tail = 0.0;  // estimate of the discarded |integral| beyond xi_end
  bool clamped = false;
};

// Locates where 2 L kappa_1(xi) first reaches -ln(tail_cut). When a Cauchy
// kappa_1 turns over before getting there, the range stops at the root
// kappa_1 = 0 and is flagged: past it the clamped integrand is constant.
inline OuterRange full_kappa_range(const DispersionModel& model, double separation,
                                   const QuadratureSpec& q) {
  const double target = -std::log(q.tail_cut) / (2.0 * separation);
  OuterRange r;
  double slope = 0.0;
  if (auto c = model.cauchy_parameters()) {
    if (c->n1 == 0.0) {
      r.xi_end = target / c->n0;
      slope = c->n0;
    } else {
      const double xi_peak = std::sqrt(c->n0 / (3.0 * c->n1));
      const double kappa_peak = c->n0 * xi_peak - c->n1 * xi_peak * xi_peak * xi_peak;
      if (kappa_peak < target) {
        r.xi_end = std::sqrt(c->n0 / c->n1);
        r.clamped = true;
        return r;
      }
      double lo = 0.0;
      double hi = xi_peak;
      for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (c->n0 * mid - c->n1 * mid * mid * mid < target ? lo : hi) = mid;
      }
      r.xi_end = hi;
      slope = c->n0 - 3.0 * c->n1 * hi * hi;
    }
  } else {
    auto kappa = [&](double xi) { return kappa_lower(model, xi).value; };
    double lo = 0.0;
    double hi = target / model.static_index();
    for (int i = 0; i < 400 && kappa(hi) < target; ++i) {
      lo = hi;
      hi *= 1.5;
    }
    if (kappa(hi) < target) throw DomainError("lifshitz: cannot bound tabulated xi range");
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (kappa(mid) < target ? lo : hi) = mid;
    }
    r.xi_end = hi;
    const double h = 1e-6 * hi;
    slope = (kappa(hi + h) - kappa(hi - h)) / (2.0 * h);
  }
  if (slope > 0.0) {
    const double k = kappa_lower(model, r.xi_end).value;
    r.tail = std::fabs(inner_integral(k, separation)) / (2.0 * separation * slope);
  }
  return r;
}

}  // namespace detail

/// Leading Lifshitz term with kappa_1 = n0 xi; tends to -pi^2/(720 n0 L^3).
inline Estimate e0_lifshitz(double separation, double n0, const QuadratureSpec& q = {}) {
  detail::require(separation > 0.0, "e0_lifshitz: separation must be > 0");
  detail::require(n0 > 0.0, "e0_lifshitz: n0 must be > 0");
  q.validate();
  const double xi_max = -std::log(q.tail_cut) / (2.0 * separation * n0);
  auto f = [&](double xi) { return inner_integral(n0 * xi, separation); };
  const auto r = integrate(f, 0.0, xi_max, detail::scaled_abs_tol(q), q.rel_tol,
                           q.max_subdivisions);
  // |I(kappa)| <= (zeta(2) kappa / 2L + zeta(3) / 4L^2) e^{-2 kappa L}
  const double tail = detail::linear_exp_tail(
      n0 * ZetaTable::two / (2.0 * separation),
      ZetaTable::three / (4.0 * separation * separation), 2.0 * separation * n0, xi_max);
  return {r.value / detail::kTwoPi2, (r.error + tail) / detail::kTwoPi2, r.subdivisions};
}

/// First-order dispersive term (n1 n0 / 2 pi^2) int xi^4 log(1 - e^{-2 n0 xi L}) dxi.
inline Estimate delta_e_lifshitz_first_order(double separation, const DispersionModel& model,
                                             const QuadratureSpec& q = {}) {
  detail::require(separation > 0.0, "delta_e_lifshitz_first_order: separation must be > 0");
  const auto c = model.cauchy_parameters();
  if (!c) throw UnsupportedModel("first-order split requires a constant or Cauchy model");
  q.validate();
  if (c->n1 == 0.0) return {};
  const double n0 = c->n0;
  const double rate = 2.0 * n0 * separation;
  const double xi_max = -std::log(q.tail_cut) / rate;
  auto f = [&](double xi) {
    const double x2 = xi * xi;
    return x2 * x2 * log_one_minus_exp(rate * xi);
  };
  const double prefactor = c->n1 * n0 / detail::kTwoPi2;
  const auto r = integrate(f, 0.0, xi_max, detail::scaled_abs_tol(q) / prefactor, q.rel_tol,
                           q.max_subdivisions);
  // int_{x}^inf t^4 e^{-c t} dt = e^{-cx} sum_k 4!/k! x^k / c^(5-k), times 1/(1 - e^{-cx})
  const double z = rate * xi_max;
  const double poly = 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
  const double tail = 24.0 * std::exp(-z) * poly / std::pow(rate, 5) / (-std::expm1(-z));
  return {prefactor * r.value, prefactor * (r.error + tail), r.subdivisions};
}

/// Outer integral with the model's own kappa_1(xi); no expansion in n1.
inline Estimate full_kappa_energy(double separation, const DispersionModel& model,
                                  const QuadratureSpec& q = {}) {
  detail::require(separation > 0.0, "full_kappa_energy: separation must be > 0");
  q.validate();
  const auto range = detail::full_kappa_range(model, separation, q);
  auto f = [&](double xi) { return inner_integral(kappa_lower(model, xi).value, separation); };
  const auto r = integrate(f, 0.0, range.xi_end, detail::scaled_abs_tol(q), q.rel_tol,
                           q.max_subdivisions);
  return {r.value / detail::kTwoPi2, (r.error + range.tail) / detail::kTwoPi2,
          r.subdivisions, range.clamped};
}

inline EnergyBreakdown total_energy_lifshitz(const Scenario& s, const QuadratureSpec& q = {},
                                             LifshitzMode mode = LifshitzMode::FirstOrderSplit) {
  const double l = s.separation();
  const auto& model = s.model();
  EnergyBreakdown out;
  out.method = Method::Lifshitz;
  out.e_surface = surface_energy(s);
  if (auto c = model.cauchy_parameters()) {
    out.outside_validity = !validity(model).is_valid_at(l);
  }

  if (mode == LifshitzMode::FirstOrderSplit) {
    if (model.is_tabulated()) {
      throw UnsupportedModel("first-order split requires a constant or Cauchy model");
    }
    const auto e0 = e0_lifshitz(l, model.static_index(), q);
    const auto de = delta_e_lifshitz_first_order(l, model, q);
    out.e0 = e0.value;
    out.delta_e = de.value;
    out.error_estimate = e0.error + de.error;
  } else {
    const auto e0 = e0_lifshitz(l, model.static_index(), q);
    const auto full = full_kappa_energy(l, model, q);
    out.e0 = e0.value;
    out.delta_e = full.value - e0.value;
    out.error_estimate = e0.error + full.error;
    out.kappa_clamped = full.kappa_clamped;
  }
  out.total = out.e0 + out.delta_e + out.e_surface;
  return out;
}

/// Mode used when the caller does not choose: the split for closed-form
/// models, the full kappa_1 integral for tables.
inline LifshitzMode default_mode(const DispersionModel& model) {
  return model.is_tabulated() ? LifshitzMode::FullKappa1 : LifshitzMode::FirstOrderSplit;
}

struct ForceEstimate {
  double value = 0.0;
  double error = 0.0;
  bool outside_validity = false;
  bool kappa_clamped = false;
};

/// -dE/dL by a central difference with relative step h_rel. The error
/// combines the quadrature errors of the four energies with the step-doubling
/// estimate |F(2h) - F(h)| / 3 of the O(h^2) truncation.
inline ForceEstimate force_lifshitz(const Scenario& s, const QuadratureSpec& q = {},
                                    double h_rel = 1e-4,
                                    std::optional<LifshitzMode> mode = std::nullopt) {
  detail::require(h_rel >= 1e-7 && h_rel <= 1e-2, "force_lifshitz: h_rel must be in [1e-7, 1e-2]");
  const LifshitzMode m = mode.value_or(default_mode(s.model()));
  const double l = s.separation();
  auto energy = [&](double scale) {
    return total_energy_lifshitz(s.with_separation(l * scale), q, m);
  };
  ForceEstimate out;
  auto difference = [&](double h) {
    const auto up = energy(1.0 + h);
    const auto down = energy(1.0 - h);
    out.outside_validity = out.outside_validity || up.outside_validity || down.outside_validity;
    out.kappa_clamped = out.kappa_clamped || up.kappa_clamped || down.kappa_clamped;
    const double step = 2.0 * l * h;
    return std::pair{-(up.total - down.total) / step,
                     (up.error_estimate + down.error_estimate) / step};
  };
  const auto [f1, e1] = difference(h_rel);
  const auto [f2, e2] = difference(2.0 * h_rel);
  out.value = f1;
  out.error = e1 + std::fabs(f2 - f1) / 3.0;
  return out;
}

}  // namespace casimir
