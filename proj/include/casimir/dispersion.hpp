#pragma once

// Refractive index models n(omega) and the lower Lifshitz momentum limit
// kappa_1 = n(i xi) xi on the imaginary frequency axis. Natural units
// (hbar = c = 1): n1 carries units of length^2.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

struct ConstantIndex {
  double n0 = 1.0;
};

/// n(omega) = n0 + n1 omega^2.
struct CauchyIndex {
  double n0 = 1.0;
  double n1 = 0.0;
};

struct IndexSample {
  double xi = 0.0;
  double n = 1.0;
};

/// Samples of n(i xi) along the imaginary axis, interpolated with a
/// monotone (Fritsch-Carlson) cubic and held flat beyond either end.
class TabulatedIndex {
 public:
  explicit TabulatedIndex(std::vector<IndexSample> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw DomainError("tabulated index: no samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const auto& s = samples_[i];
      if (!(s.xi >= 0.0) || !std::isfinite(s.xi)) {
        throw DomainError("tabulated index: xi must be finite and >= 0");
      }
      if (!(s.n > 0.0) || !std::isfinite(s.n)) {
        throw DomainError("tabulated index: n must be finite and > 0");
      }
      if (i > 0 && !(s.xi > samples_[i - 1].xi)) {
        throw DomainError("tabulated index: xi must be strictly increasing");
      }
    }
    compute_slopes();
  }

  const std::vector<IndexSample>& samples() const { return samples_; }

  double operator()(double xi) const {
    if (xi <= samples_.front().xi) return samples_.front().n;
    if (xi >= samples_.back().xi) return samples_.back().n;
    const auto upper = std::upper_bound(
        samples_.begin(), samples_.end(), xi,
        [](double x, const IndexSample& s) { return x < s.xi; });
    const std::size_t k = static_cast<std::size_t>(upper - samples_.begin()) - 1;
    const double h = samples_[k + 1].xi - samples_[k].xi;
    const double t = (xi - samples_[k].xi) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * samples_[k].n + h10 * h * slopes_[k] + h01 * samples_[k + 1].n +
           h11 * h * slopes_[k + 1];
  }

 private:
  void compute_slopes() {
    const std::size_t n = samples_.size();
    slopes_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> secant(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      secant[k] = (samples_[k + 1].n - samples_[k].n) / (samples_[k + 1].xi - samples_[k].xi);
    }
    slopes_[0] = secant[0];
    slopes_[n - 1] = secant[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
      slopes_[k] = (secant[k - 1] * secant[k] <= 0.0) ? 0.0 : 0.5 * (secant[k - 1] + secant[k]);
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (secant[k] == 0.0) {
        slopes_[k] = 0.0;
        slopes_[k + 1] = 0.0;
        continue;
      }
      const double alpha = slopes_[k] / secant[k];
      const double beta = slopes_[k + 1] / secant[k];
      const double r = alpha * alpha + beta * beta;
      if (r > 9.0) {
        const double tau = 3.0 / std::sqrt(r);
        slopes_[k] = tau * alpha * secant[k];
        slopes_[k + 1] = tau * beta * secant[k];
      }
    }
  }

  std::vector<IndexSample> samples_;
  std::vector<double> slopes_;
};

/// Immutable refractive index model.
class DispersionModel {
 public:
  using Variant = std::variant<ConstantIndex, CauchyIndex, TabulatedIndex>;

  static DispersionModel constant(double n0) {
    detail::require(n0 > 0.0 && std::isfinite(n0), "dispersion: n0 must be > 0");
    return DispersionModel(ConstantIndex{n0});
  }

  static DispersionModel cauchy(double n0, double n1) {
    detail::require(n0 > 0.0 && std::isfinite(n0), "dispersion: n0 must be > 0");
    detail::require(n1 >= 0.0 && std::isfinite(n1), "dispersion: n1 must be >= 0");
    return DispersionModel(CauchyIndex{n0, n1});
  }

  static DispersionModel tabulated(std::vector<IndexSample> samples) {
    return DispersionModel(TabulatedIndex(std::move(samples)));
  }

  const Variant& variant() const { return model_; }
  bool is_tabulated() const { return std::holds_alternative<TabulatedIndex>(model_); }

  /// (n0, n1) for Constant and Cauchy models; Constant maps to n1 = 0.
  std::optional<CauchyIndex> cauchy_parameters() const {
    if (const auto* c = std::get_if<ConstantIndex>(&model_)) return CauchyIndex{c->n0, 0.0};
    if (const auto* c = std::get_if<CauchyIndex>(&model_)) return *c;
    return std::nullopt;
  }

  /// Index at zero frequency.
  double static_index() const {
    if (auto c = cauchy_parameters()) return c->n0;
    return std::get<TabulatedIndex>(model_)(0.0);
  }

 private:
  explicit DispersionModel(Variant v) : model_(std::move(v)) {}

  Variant model_;
};

inline double index_of_real_frequency(const DispersionModel& model, double omega) {
  detail::require(omega >= 0.0, "index_of_real_frequency: omega must be >= 0");
  if (auto c = model.cauchy_parameters()) return c->n0 + c->n1 * omega * omega;
  return std::get<TabulatedIndex>(model.variant())(omega);
}

struct KappaLower {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;
};

/// kappa_1(xi) = n(i xi) xi; for Cauchy n0 xi - n1 xi^3, clamped at zero.
inline KappaLower kappa_lower(const DispersionModel& model, double xi) {
  detail::require(xi >= 0.0, "kappa_lower: xi must be >= 0");
  if (auto c = model.cauchy_parameters()) {
    const double raw = c->n0 * xi - c->n1 * xi * xi * xi;
    if (raw < 0.0) return {0.0, raw, true};
    return {raw, raw, false};
  }
  const double v = std::get<TabulatedIndex>(model.variant())(xi) * xi;
  return {v, v, false};
}

struct ValidityReport {
  double min_separation = 0.0;  // 2 pi sqrt(n1)
  double ratio_bound = 0.0;     // 1 / (14 n0^3)

  bool is_valid_at(double separation) const { return separation > min_separation; }
};

inline ValidityReport validity(const DispersionModel& model) {
  const auto c = model.cauchy_parameters();
  if (!c) throw UnsupportedModel("validity: no closed criterion for tabulated models");
  return {2.0 * std::numbers::pi * std::sqrt(c->n1), 1.0 / (14.0 * c->n0 * c->n0 * c->n0)};
}

/// Reads a two-column (xi, n) CSV. A non-numeric first line is taken as a header.
inline DispersionModel load_index_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open index table '" + path + "'");
  std::vector<IndexSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string a;
    std::string b;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b)) {
      throw FileError(path + ":" + std::to_string(line_no) + ": expected two columns");
    }
    try {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      const double xi = std::stod(a, &used_a);
      const double n = std::stod(b, &used_b);
      if (a.find_first_not_of(" \t", used_a) != std::string::npos ||
          b.find_first_not_of(" \t", used_b) != std::string::npos) {
        throw std::invalid_argument("trailing characters");
      }
      samples.push_back({xi, n});
    } catch (const std::exception&) {
      if (line_no == 1 && samples.empty()) continue;  // header
      throw FileError(path + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  if (samples.empty()) throw FileError(path + ": no samples");
  try {
    return DispersionModel::tabulated(std::move(samples));
  } catch (const DomainError& e) {
    throw FileError(path + ": " + e.what());
  }
}

}  // namespace casimir
