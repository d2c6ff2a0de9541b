#pragma once

// Globally adaptive 21-point Gauss-Kronrod quadrature on finite intervals.
// Error estimates follow QUADPACK's QK21 scaling.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

struct Segment {
  double lower = 0.0;
  double upper = 0.0;
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

// Kronrod abscissae; odd indices are the embedded 10-point Gauss nodes.
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980223048, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class F>
Segment gauss_kronrod_21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double kronrod = f_center * kKronrodWeights[10];
  double gauss = 0.0;
  double abs_sum = std::fabs(kronrod);
  std::array<double, 10> f_left{};
  std::array<double, 10> f_right{};
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    f_left[i] = f(center - dx);
    f_right[i] = f(center + dx);
    const double pair = f_left[i] + f_right[i];
    kronrod += kKronrodWeights[i] * pair;
    abs_sum += kKronrodWeights[i] * (std::fabs(f_left[i]) + std::fabs(f_right[i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::fabs(f_center - mean);
  for (std::size_t i = 0; i < 10; ++i) {
    asc += kKronrodWeights[i] * (std::fabs(f_left[i] - mean) + std::fabs(f_right[i] - mean));
  }

  const double abs_half = std::fabs(half);
  double error = std::fabs((kronrod - gauss) * half);
  const double resasc = asc * abs_half;
  const double resabs = abs_sum * abs_half;
  if (resasc != 0.0 && error != 0.0) {
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * resabs, error);
  }
  return {a, b, kronrod * half, error};
}

}  // namespace detail

/// Integrates f over [a, b], bisecting the worst segment until the summed
/// error estimate is within max(abs_tol, rel_tol * |value|). Throws
/// QuadratureFailure once more than max_subdivisions segments would be needed.
/// The returned sum runs over segments in left-to-right order, so the result
/// does not depend on the refinement history beyond the final partition.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                           int max_subdivisions) {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("integrate: tolerances must be positive");
  }
  if (max_subdivisions < 1) throw DomainError("integrate: max_subdivisions < 1");
  if (a == b) return {};

  std::vector<Segment> segments;
  segments.reserve(static_cast<std::size_t>(max_subdivisions));
  segments.push_back(detail::gauss_kronrod_21(f, a, b));

  auto totals = [&segments] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& s : segments) {
      value += s.value;
      error += s.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  while (error > std::max(abs_tol, rel_tol * std::fabs(value))) {
    if (static_cast<int>(segments.size()) >= max_subdivisions) {
      std::ostringstream msg;
      msg << "integrate: " << max_subdivisions
          << " subdivisions exhausted with error estimate " << error;
      throw QuadratureFailure(msg.str(), value, error);
    }
    auto worst = std::max_element(segments.begin(), segments.end(),
                                  [](const Segment& x, const Segment& y) {
                                    return x.error < y.error;
                                  });
    const double lo = worst->lower;
    const double hi = worst->upper;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      throw QuadratureFailure("integrate: segment width below resolution", value, error);
    }
    *worst = detail::gauss_kronrod_21(f, lo, mid);
    segments.push_back(detail::gauss_kronrod_21(f, mid, hi));
    std::tie(value, error) = totals();
  }

  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.lower < y.lower; });
  std::tie(value, error) = totals();
  return {value, error, static_cast<int>(segments.size())};
}

}  // namespace casimir
