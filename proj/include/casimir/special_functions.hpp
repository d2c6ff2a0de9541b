#pragma once

// Polylogarithms of order 2 and 3 on [0, 1], tabulated zeta constants, a
// cancellation-free log(1 - e^-x), and the exponential-cutoff witness for
// zeta-regularized power sums.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

/// Exact closed forms of the zeta values used by the energy formulas.
struct ZetaTable {
  static constexpr double minus5 = -1.0 / 252.0;
  static constexpr double minus3 = 1.0 / 120.0;
  static constexpr double two = std::numbers::pi * std::numbers::pi / 6.0;
  static constexpr double three = 1.2020569031595942853997381615114;
  static constexpr double four = std::numbers::pi * std::numbers::pi *
                                 std::numbers::pi * std::numbers::pi / 90.0;
  static constexpr double six = std::numbers::pi * std::numbers::pi *
                                std::numbers::pi * std::numbers::pi *
                                std::numbers::pi * std::numbers::pi / 945.0;
};

/// zeta(k) for k in {-5, -3, 2, 3, 4, 6}.
inline double zeta_value(int k) {
  switch (k) {
    case -5: return ZetaTable::minus5;
    case -3: return ZetaTable::minus3;
    case 2: return ZetaTable::two;
    case 3: return ZetaTable::three;
    case 4: return ZetaTable::four;
    case 6: return ZetaTable::six;
    default: throw DomainError("zeta_value: unsupported argument");
  }
}

namespace detail {

inline constexpr int kMaxSeriesTerms = 1'000'000;
inline constexpr std::size_t kNegativeZetaCount = 64;

// zeta(-m) for m = 0 .. kNegativeZetaCount-1. Even m >= 2 vanish. The first
// odd entries are exact rationals; the rest use
// zeta(1-2j) = (-1)^j 2 (2j-1)! zeta(2j) / (2 pi)^(2j) with zeta(2j) summed
// directly, which is accurate to rounding once 2j >= 16.
inline const std::array<double, kNegativeZetaCount>& negative_zeta_table() {
  static const std::array<double, kNegativeZetaCount> table = [] {
    constexpr std::array<double, 7> exact = {
        -1.0 / 12.0,   1.0 / 120.0,   -1.0 / 252.0, 1.0 / 240.0,
        -1.0 / 132.0,  691.0 / 32760.0, -1.0 / 12.0};
    std::array<double, kNegativeZetaCount> t{};
    t[0] = -0.5;
    const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    double prefactor = 2.0 / four_pi_sq;  // 2 (2j-1)! / (2 pi)^(2j) at j = 1
    for (std::size_t j = 1; 2 * j - 1 < kNegativeZetaCount; ++j) {
      if (j <= exact.size()) {
        t[2 * j - 1] = exact[j - 1];
      } else {
        double zeta_even = 0.0;
        for (int n = 40; n >= 1; --n) zeta_even += std::pow(n, -2.0 * double(j));
        const double sign = (j % 2 == 1) ? -1.0 : 1.0;
        t[2 * j - 1] = sign * prefactor * zeta_even;
      }
      prefactor *= static_cast<double>(2 * j) * static_cast<double>(2 * j + 1) /
                    four_pi_sq;
    }
    return t;
  }();
  return table;
}

inline void check_polylog_order(int s) {
  if (s != 2 && s != 3) throw DomainError("polylog: order must be 2 or 3");
}

}  // namespace detail

/// Li_s(x) by direct summation of x^n / n^s. Slow as x -> 1; prefer polylog().
inline double polylog_series(int s, double x) {
  detail::check_polylog_order(s);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("polylog: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  double sum = 0.0;
  double power = 1.0;
  for (int n = 1; n <= detail::kMaxSeriesTerms; ++n) {
    power *= x;
    const double term = power / std::pow(static_cast<double>(n), s);
    sum += term;
    if (term < 1e-15 * sum) break;
  }
  return sum;
}

/// Li_s(e^mu) for mu <= 0 from the expansion in powers of mu,
///   Li_s(e^mu) = mu^(s-1)/(s-1)! [H_(s-1) - ln(-mu)] + sum_{k != s-1} zeta(s-k) mu^k / k!,
/// which converges for |mu| < 2 pi and is fastest near mu = 0 (x = 1).
inline double polylog_near_unity(int s, double mu) {
  detail::check_polylog_order(s);
  if (!(mu <= 0.0)) throw DomainError("polylog: mu must be <= 0");
  if (!(mu > -2.0 * std::numbers::pi)) {
    throw DomainError("polylog: |mu| beyond expansion radius");
  }
  const double zeta_s = (s == 2) ? ZetaTable::two : ZetaTable::three;
  if (mu == 0.0) return zeta_s;

  const double log_term = std::log(-mu);
  double sum;
  if (s == 2) {
    sum = zeta_s + mu * (1.0 - log_term);
  } else {
    sum = zeta_s + ZetaTable::two * mu + 0.5 * mu * mu * (1.5 - log_term);
  }

  // Remaining terms: sum_{m>=0} zeta(-m) mu^(m+s) / (m+s)!
  const auto& zeta_neg = detail::negative_zeta_table();
  double power = (s == 2) ? 0.5 * mu * mu : mu * mu * mu / 6.0;
  int small_streak = 0;
  for (std::size_t m = 0; m < zeta_neg.size(); ++m) {
    if (m > 0) power *= mu / static_cast<double>(m + static_cast<std::size_t>(s));
    if (zeta_neg[m] == 0.0) continue;
    const double term = zeta_neg[m] * power;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) {
      if (++small_streak == 2) break;
    } else {
      small_streak = 0;
    }
  }
  return sum;
}

/// Li_s(e^mu) for mu <= 0, picking the faster path.
inline double polylog_exp(int s, double mu) {
  if (mu < -std::numbers::ln2) return polylog_series(s, std::exp(mu));
  return polylog_near_unity(s, mu);
}

/// Li_s(x) for s in {2, 3} and x in [0, 1].
inline double polylog(int s, double x) {
  detail::check_polylog_order(s);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("polylog: x outside [0, 1]");
  if (x <= 0.5) return polylog_series(s, x);
  return polylog_near_unity(s, std::log(x));
}

/// log(1 - e^-x) for x > 0 without cancellation at either end.
inline double log_one_minus_exp(double x) {
  if (!(x > 0.0)) throw DomainError("log_one_minus_exp: x must be positive");
  if (x < std::numbers::ln2) return std::log(-std::expm1(-x));
  return std::log1p(-std::exp(-x));
}

/// sum_{n>=1} n^p e^(-n delta) minus its leading divergence p!/delta^(p+1).
/// Tends to zeta(-p) with an O(delta^2) remainder.
inline double cutoff_zeta_demo(int p, double delta) {
  if (p != 3 && p != 5) throw DomainError("cutoff_zeta_demo: p must be 3 or 5");
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw DomainError("cutoff_zeta_demo: delta must lie in (0, 0.5]");
  }
  // The divergence is ~1e10 at delta = 0.05 for p = 5, so the sum needs the
  // extra mantissa bits and compensation to leave a few 1e-10 after subtraction.
  // For the same reason the stopping rule is absolute: a cutoff relative to the
  // running sum would drop a tail of order 1e-7.
  using ld = long double;
  const ld d = delta;
  ld sum = 0.0L;
  ld carry = 0.0L;
  for (int n = 1; n <= detail::kMaxSeriesTerms; ++n) {
    const ld nn = n;
    const ld term = (p == 3 ? nn * nn * nn : nn * nn * nn * nn * nn) * std::exp(-nn * d);
    const ld t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
    if (nn * d > p && term < 1e-20L) break;
  }
  const ld divergence =
      (p == 3) ? 6.0L / (d * d * d * d) : 120.0L / (d * d * d * d * d * d);
  return static_cast<double>((sum - divergence) + carry);
}

/// Polynomial (Neville) extrapolation of samples f(t_i) to t = 0.
inline double extrapolate_to_zero(std::span<const double> t,
                                  std::span<const double> values) {
  if (t.size() != values.size() || t.empty()) {
    throw DomainError("extrapolate_to_zero: mismatched or empty samples");
  }
  std::vector<double> p(values.begin(), values.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double ti = t[i];
      const double tj = t[i + level];
      if (ti == tj) throw DomainError("extrapolate_to_zero: repeated abscissa");
      p[i] = (tj * p[i] - ti * p[i + 1]) / (tj - ti);
    }
  }
  return p[0];
}

/// Extrapolates cutoff_zeta_demo(p, delta) to delta -> 0 in powers of delta^2.
inline double extrapolate_cutoff_zeta(int p, std::span<const double> deltas) {
  std::vector<double> t;
  std::vector<double> v;
  for (double d : deltas) {
    t.push_back(d * d);
    v.push_back(cutoff_zeta_demo(p, d));
  }
  return extrapolate_to_zero(t, v);
}

}  // namespace casimir
