// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <sys/wait.h>

#include "casimir/closed_form.hpp"
#include "casimir/crosscheck.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/special_functions.hpp"
#include "oracles.hpp"

#ifndef CASIMIR_CLI_PATH
#error "CASIMIR_CLI_PATH must name the casimir executable"
#endif

namespace {

using namespace casimir;

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

int failures = 0;

void report(const char* id, const std::string& what, bool pass, const std::string& detail) {
  std::printf("%s %s %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Scenario cauchy(double l, double n0, double n1) {
  return Scenario(l, DispersionModel::cauchy(n0, n1));
}

void leading_order() {
  double worst = 0.0;
  for (double l : {0.5, 1.0, 2.0}) {
    for (double n0 : {1.0, 1.5, 2.0, 3.0}) {
      const double exact = -kPi2 / (720.0 * n0 * l * l * l);
      worst = std::max(worst, std::fabs(e0_lifshitz(l, n0).value / exact - 1.0));
    }
  }
  report("AC1", "leading-order Lifshitz energy on 12-point grid", worst < 1e-8,
         fmt("max rel err %.3e < 1e-8", worst));
}

void dispersive_correction() {
  double worst = 0.0;
  for (double n1 : {1e-6, 1e-4, 1e-2}) {
    const double num = delta_e_lifshitz_first_order(1.0, DispersionModel::cauchy(1.0, n1)).value;
    worst = std::max(worst, std::fabs(num / delta_e_analytic(1.0, 1.0, n1) - 1.0));
  }
  report("AC2", "first-order dispersive correction vs closed form", worst < 1e-8,
         fmt("max |ratio-1| %.3e < 1e-8", worst));
}

void full_vs_split() {
  auto diff = [](double n1) {
    const auto s = cauchy(1.0, 1.0, n1);
    return std::fabs(total_energy_lifshitz(s, {}, LifshitzMode::FullKappa1).total -
                     total_energy_lifshitz(s, {}, LifshitzMode::FirstOrderSplit).total);
  };
  const double ratio = diff(2e-4) / diff(1e-4);
  report("AC3", "full-kappa minus split scales as n1^2", ratio >= 3.5 && ratio <= 4.5,
         fmt("ratio %.4f in [3.5, 4.5]", ratio));
}

void slope() {
  const double target = -std::pow(kPi, 4) / 2520.0;
  const double r1 = first_order_slope(1.0, 1.0, {}, 1e-6) - target;
  const double r2 = first_order_slope(1.0, 1.0, {}, 5e-7) - target;
  const double rel = std::fabs(r1 / target);
  const double halving = r1 / r2;
  report("AC4", "first-order slope extraction", rel <= 1e-4 && halving >= 1.6 && halving <= 2.4,
         fmt("rel err %.3e <= 1e-4", rel) + fmt(", residual ratio %.3f ~ 2", halving));
}

void force() {
  const double f = force_lifshitz(cauchy(1.0, 1.0, 0.0), {}, 1e-4).value;
  const double rel = std::fabs(f / (-kPi2 / 240.0) - 1.0);
  double worst = 0.0;
  for (double l : {0.5, 1.0, 2.0}) {
    for (double n0 : {1.0, 1.5, 2.0, 3.0}) {
      for (double n1 : {0.0, 1e-3}) {
        const double h = 1e-5 * l;
        const double fd = -(total_energy_analytic(cauchy(l + h, n0, n1)).total -
                            total_energy_analytic(cauchy(l - h, n0, n1)).total) /
                          (2 * h);
        const double fa = force_analytic(cauchy(l, n0, n1));
        worst = std::max(worst, std::fabs(fd / fa - 1.0));
      }
    }
  }
  report("AC5", "Lifshitz force vs vacuum value, analytic force vs energy difference",
         rel <= 1e-6 && worst <= 1e-8,
         fmt("force rel err %.3e <= 1e-6", rel) + fmt(", max diff rel err %.3e <= 1e-8", worst));
}

void zeta_witness() {
  const std::array<double, 3> deltas = {0.2, 0.1, 0.05};
  const double e3 = std::fabs(extrapolate_cutoff_zeta(3, deltas) - 1.0 / 120.0);
  const double e5 = std::fabs(extrapolate_cutoff_zeta(5, deltas) + 1.0 / 252.0);
  report("AC6", "extrapolated cutoff sums reach zeta(-3) and zeta(-5)", e3 <= 1e-6 && e5 <= 1e-6,
         fmt("errors %.3e", e3) + fmt(", %.3e <= 1e-6", e5));
}

void inner_oracle() {
  double worst = 0.0;
  for (double k : {0.0, 0.5, 1.0, 5.0}) {
    for (double l : {0.5, 1.0, 2.0}) {
      worst = std::max(worst,
                       std::fabs(inner_integral(k, l) - oracle::inner_integral_quadrature(k, l)));
    }
  }
  const double at_zero = std::fabs(inner_integral(0.0, 1.0) + oracle::zeta3() / 4.0);
  report("AC7", "inner integral vs direct quadrature", worst <= 1e-10 && at_zero <= 1e-12,
         fmt("max abs err %.3e <= 1e-10", worst) + fmt(", I(0,1) err %.3e <= 1e-12", at_zero));
}

void validity_boundary() {
  double worst = 0.0;
  for (double n0 : {1.0, 1.5, 2.0, 3.0}) {
    for (double n1 : {1e-4, 1e-2, 0.3}) {
      const double l = 2.0 * kPi * std::sqrt(n1);
      worst = std::max(worst, ulp_distance(dispersive_ratio(l, n0, n1), 1.0 / (14 * n0 * n0 * n0)));
    }
  }
  report("AC8", "ratio equals 1/(14 n0^3) at the separation limit", worst <= 4.0,
         fmt("max %.0f ulps <= 4", worst));
}

void special_functions() {
  const double e2 = std::fabs(polylog(2, 1.0) - kPi2 / 6.0);
  const double e3 = std::fabs(polylog(3, 1.0) - oracle::zeta3());
  double worst = 0.0;
  for (int s : {2, 3}) {
    for (double x : {0.6, 0.9, 0.99}) {
      worst = std::max(worst, std::fabs(polylog_near_unity(s, std::log(x)) - polylog_series(s, x)));
    }
  }
  report("AC9", "polylog at unity and near-unity expansion vs raw series",
         e2 <= 1e-13 && e3 <= 1e-13 && worst <= 1e-12,
         fmt("Li2(1) err %.2e", e2) + fmt(", Li3(1) err %.2e", e3) +
             fmt(", max path diff %.2e <= 1e-12", worst));
}

struct Captured {
  int status;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) c.out.append(buf.data(), n);
  const int raw = pclose(p);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

void cli_determinism() {
  const std::string exe = std::string("\"") + CASIMIR_CLI_PATH + "\"";
  const std::string sweep = exe +
                            " sweep --n0 1.5 --n1 1e-3 --min 0.5 --max 5 --points 9 --scale log"
                            " --format csv 2>/dev/null";
  const auto a = capture(sweep);
  const auto b = capture(sweep);
  const bool identical = a.status == 0 && b.status == 0 && !a.out.empty() && a.out == b.out;
  const auto v = capture(exe + " validate > /dev/null 2>&1");
  report("AC10", "repeated sweep is byte-identical, validate exits 0",
         identical && v.status == 0,
         std::string(identical ? "identical" : "differs") + " " + std::to_string(a.out.size()) +
             " bytes, validate exit " + std::to_string(v.status));
}

}  // namespace

int main() {
  const std::array<void (*)(), 10> criteria = {
      leading_order, dispersive_correction, full_vs_split, slope,             force,
      zeta_witness,  inner_oracle,          validity_boundary, special_functions, cli_determinism};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      const std::string id = "AC" + std::to_string(i + 1);
      report(id.c_str(), "threw", false, e.what());
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
