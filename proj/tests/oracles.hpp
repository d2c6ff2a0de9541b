#pragma once

// Reference computations for the tests. None of these touch the library's
// polylogarithm reduction or its Gauss-Kronrod integrator.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

/// zeta(3) = 5/2 sum_{n>=1} (-1)^{n+1} / (n^3 C(2n, n)).
inline double zeta3() {
  long double sum = 0.0L;
  long double binom = 1.0L;
  for (int n = 1; n <= 40; ++n) {
    binom *= static_cast<long double>(2 * n) * (2 * n - 1) / (static_cast<long double>(n) * n);
    const long double term = 1.0L / (static_cast<long double>(n) * n * n * binom);
    sum += (n % 2 == 1) ? term : -term;
  }
  return static_cast<double>(2.5L * sum);
}

/// Li_s(x) by long double summation until terms are negligible.
inline double polylog_long_series(int s, double x) {
  long double sum = 0.0L;
  long double power = 1.0L;
  for (int n = 1; n < 20'000'000; ++n) {
    power *= x;
    const long double term = power / std::pow(static_cast<long double>(n), s);
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return static_cast<double>(sum);
}

/// kappa log(1 - e^{-2 kappa L}) written with the standard library only.
inline double raw_inner_integrand(double kappa, double separation) {
  if (kappa <= 0.0) return 0.0;
  return kappa * std::log(-std::expm1(-2.0 * kappa * separation));
}

/// int_{kappa1}^inf raw_inner_integrand dkappa by double-exponential quadrature.
inline double inner_integral_quadrature(double kappa1, double separation) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double t) { return raw_inner_integrand(kappa1 + t, separation); };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

/// Nested 2D Lifshitz integral (1 / 2 pi^2) int dxi int_{kappa1(xi)}^inf dkappa ...,
/// both dimensions by quadrature.
inline double lifshitz_energy_2d(const std::function<double(double)>& kappa1,
                                 double separation, double xi_max) {
  boost::math::quadrature::tanh_sinh<double> outer;
  auto g = [&](double xi) { return inner_integral_quadrature(kappa1(xi), separation); };
  const double v = outer.integrate(g, 0.0, xi_max, 1e-13);
  return v / (2.0 * std::numbers::pi * std::numbers::pi);
}

/// Second-order coefficient of the full-kappa energy in n1 at L = 1, n0 = 1:
/// (1 / 4 pi^2) int xi^6 I''(xi) dxi = (zeta(8)/128)(720 - 5040) / (4 pi^2) = -pi^6 / 1120.
inline double second_order_coefficient_unit() {
  const double pi = std::numbers::pi;
  return -std::pow(pi, 6) / 1120.0;
}

}  // namespace oracle
