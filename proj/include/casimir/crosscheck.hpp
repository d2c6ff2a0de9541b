#pragma once

// Agreement checks between the analytic (zeta-regularized) energies and the
// numerically integrated Lifshitz energies.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "casimir/closed_form.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/special_functions.hpp"

namespace casimir {

struct ComparisonReport {
  Scenario scenario;
  EnergyBreakdown analytic;
  EnergyBreakdown lifshitz;
  double rel_discrepancy_e0 = 0.0;
  double rel_discrepancy_delta = 0.0;
  double rel_discrepancy_total = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// |a - b| / max(|a|, |b|), zero when both vanish.
inline double relative_discrepancy(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

inline ComparisonReport compare_methods(const Scenario& s, const QuadratureSpec& q, double tol) {
  ComparisonReport r{s, total_energy_analytic(s),
                     total_energy_lifshitz(s, q, LifshitzMode::FirstOrderSplit)};
  r.rel_discrepancy_e0 = relative_discrepancy(r.analytic.e0, r.lifshitz.e0);
  r.rel_discrepancy_delta = relative_discrepancy(r.analytic.delta_e, r.lifshitz.delta_e);
  r.rel_discrepancy_total = relative_discrepancy(r.analytic.total, r.lifshitz.total);
  r.tolerance = tol;
  r.pass = r.rel_discrepancy_e0 <= tol && r.rel_discrepancy_delta <= tol &&
           r.rel_discrepancy_total <= tol;
  return r;
}

/// Probe n1 = 1e-6 L^2: a ~1e-5 perturbation of the leading term.
inline double default_slope_probe(double separation) { return 1e-6 * separation * separation; }

/// Finite-difference derivative of the full-kappa_1 energy with respect to n1
/// at n1 = 0. Converges linearly in n1_probe to delta_e_analytic(L, n0, 1).
inline double first_order_slope(double separation, double n0, const QuadratureSpec& q,
                                double n1_probe) {
  detail::require(n1_probe > 0.0, "first_order_slope: n1_probe must be > 0");
  const double perturbed =
      full_kappa_energy(separation, DispersionModel::cauchy(n0, n1_probe), q).value;
  const double base = full_kappa_energy(separation, DispersionModel::cauchy(n0, 0.0), q).value;
  return (perturbed - base) / n1_probe;
}

struct ValidityRow {
  double separation = 0.0;
  double ratio = 0.0;  // delta_E / E0
  double bound = 0.0;  // 1 / (14 n0^3)
  std::optional<bool> within_bound;  // unset where L <= 2 pi sqrt(n1)
};

inline std::vector<ValidityRow> validity_sweep(const DispersionModel& model,
                                               const std::vector<double>& separations) {
  const auto c = model.cauchy_parameters();
  if (!c) throw UnsupportedModel("validity_sweep requires a constant or Cauchy model");
  const auto report = validity(model);
  std::vector<ValidityRow> rows;
  rows.reserve(separations.size());
  for (double l : separations) {
    ValidityRow row{l, dispersive_ratio(l, c->n0, c->n1), report.ratio_bound, std::nullopt};
    if (report.is_valid_at(l)) row.within_bound = row.ratio < row.bound;
    rows.push_back(row);
  }
  return rows;
}

/// Distance between a and b in units of the spacing of doubles at b.
inline double ulp_distance(double a, double b) {
  const double ulp = std::nextafter(std::fabs(b), INFINITY) - std::fabs(b);
  return std::fabs(a - b) / ulp;
}

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// The full agreement grid run by the `validate` command. `tol` applies to
/// the analytic-vs-Lifshitz comparisons; the slope and zeta checks keep their
/// own fixed thresholds.
inline std::vector<CheckResult> run_validation(double tol, const QuadratureSpec& q = {}) {
  std::vector<CheckResult> out;
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };

  for (double l : {0.5, 1.0, 2.0, 5.0}) {
    for (double n0 : {1.0, 1.5, 2.0, 3.0}) {
      for (double n1 : {0.0, 1e-3}) {
        const auto r = compare_methods(Scenario(l, DispersionModel::cauchy(n0, n1)), q, tol);
        const double worst = std::max(
            {r.rel_discrepancy_e0, r.rel_discrepancy_delta, r.rel_discrepancy_total});
        out.push_back({"compare L=" + fmt(l) + " n0=" + fmt(n0) + " n1=" + fmt(n1), worst,
                       tol, r.pass});
      }
    }
  }

  for (double n0 : {1.0, 2.0}) {
    const double l = 1.0;
    const double limit = delta_e_analytic(l, n0, 1.0);
    const double probe = default_slope_probe(l);
    const double r1 = first_order_slope(l, n0, q, probe) - limit;
    const double r2 = first_order_slope(l, n0, q, 0.5 * probe) - limit;
    out.push_back({"first-order slope L=1 n0=" + fmt(n0), std::fabs(r1 / limit), 1e-4,
                   std::fabs(r1 / limit) <= 1e-4});
    const double ratio = r1 / r2;
    out.push_back({"slope residual halving L=1 n0=" + fmt(n0), ratio, 2.0,
                   ratio >= 1.6 && ratio <= 2.4});
  }

  const std::array<double, 3> deltas = {0.2, 0.1, 0.05};
  for (int p : {3, 5}) {
    const double err = std::fabs(extrapolate_cutoff_zeta(p, deltas) - zeta_value(-p));
    out.push_back({"cutoff zeta(-" + std::to_string(p) + ")", err, 1e-6, err <= 1e-6});
  }

  for (double n0 : {1.0, 1.5, 2.0}) {
    const double n1 = 0.01;
    const double l = 2.0 * std::numbers::pi * std::sqrt(n1);
    const double bound = 1.0 / (14.0 * n0 * n0 * n0);
    const double ulps = ulp_distance(dispersive_ratio(l, n0, n1), bound);
    out.push_back({"validity boundary n0=" + fmt(n0) + " (ulps)", ulps, 4.0, ulps <= 4.0});
  }
  return out;
}

}  // namespace casimir
