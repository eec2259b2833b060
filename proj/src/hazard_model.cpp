#include "hazbands/hazard_model.hpp"

#include <algorithm>
#include <cmath>

#include "hazbands/quadrature.hpp"
#include "hazbands/rng.hpp"

namespace hazbands {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kUniformBoundaryGap = 1e-6;
}  // namespace

HazardHistogram::HazardHistogram(IntervalGrid g, std::vector<double> h)
    : grid(std::move(g)), heights(std::move(h)) {
  if (heights.size() != grid.K) throw InvalidParameter("heights length must equal interval count");
  for (double v : heights)
    if (!(v > 0.0)) throw DomainError("hazard heights must be strictly positive");
}

double hazard_at(const HazardHistogram& h, double t) {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("time outside [0, 1]");
  return h.heights[h.grid.interval_of(t)];
}

std::vector<double> cumhaz_prefix(const HazardHistogram& h) {
  std::vector<double> p(h.K() + 1, 0.0);
  for (std::size_t k = 0; k < h.K(); ++k) p[k + 1] = p[k] + h.heights[k] * h.grid.width(k);
  return p;
}

double cumulative_hazard(const HazardHistogram& h, double t) {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("time outside [0, 1]");
  double acc = 0.0;
  for (std::size_t k = 0; k < h.K(); ++k) {
    const double lo = h.grid.breakpoints[k];
    if (lo >= t) break;
    const double hi = h.grid.breakpoints[k + 1];
    acc += h.heights[k] * (std::min(t, hi) - lo);
  }
  return acc;
}

double survival(const HazardHistogram& h, double t) { return std::exp(-cumulative_hazard(h, t)); }

std::optional<double> median_survival(const HazardHistogram& h) {
  double acc = 0.0;
  for (std::size_t k = 0; k < h.K(); ++k) {
    const double width = h.grid.width(k);
    const double step = h.heights[k] * width;
    if (acc + step >= kLn2) return h.grid.breakpoints[k] + (kLn2 - acc) / h.heights[k];
    acc += step;
  }
  return std::nullopt;
}

// --- truth hazards ---------------------------------------------------------

namespace {

double smooth_hazard(double t) {
  const double u = t + 0.05;
  return 6.0 * (u * u * u - 2.0 * u * u + u) + 0.7;
}

// Antiderivative of the cubic part, before the 0.7 t term.
double smooth_poly_primitive(double u) {
  return 6.0 * (u * u * u * u / 4.0 - 2.0 * u * u * u / 3.0 + u * u / 2.0);
}

double smooth_cumhaz(double t) {
  return smooth_poly_primitive(t + 0.05) - smooth_poly_primitive(0.05) + 0.7 * t;
}

double pl_hazard(double t) {
  if (t <= 0.4) return 3.0;
  if (t >= 0.6) return 1.5;
  return 3.0 - 7.5 * (t - 0.4);
}

double pl_cumhaz(double t) {
  if (t <= 0.4) return 3.0 * t;
  if (t <= 0.6) {
    const double s = t - 0.4;
    return 1.2 + 3.0 * s - 3.75 * s * s;
  }
  return 1.65 + 1.5 * (t - 0.6);
}

}  // namespace

TruthHazard TruthHazard::smooth() { return TruthHazard(TruthKind::Smooth, 1.0, {}); }
TruthHazard TruthHazard::piecewise_linear() {
  return TruthHazard(TruthKind::PiecewiseLinear, 1.0, {});
}
TruthHazard TruthHazard::histogram(HazardHistogram h) {
  return TruthHazard(TruthKind::Histogram, 1.0, std::move(h));
}
TruthHazard TruthHazard::constant(double level) {
  if (!(level > 0.0)) throw DomainError("constant hazard level must be positive");
  return TruthHazard(TruthKind::Constant, level, {});
}

double TruthHazard::hazard(double t) const {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("time outside [0, 1]");
  switch (kind_) {
    case TruthKind::Smooth: return smooth_hazard(t);
    case TruthKind::PiecewiseLinear: return pl_hazard(t);
    case TruthKind::Histogram: return hazard_at(hist_, t);
    case TruthKind::Constant: return level_;
  }
  return level_;
}

double TruthHazard::cumulative(double t) const {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("time outside [0, 1]");
  switch (kind_) {
    case TruthKind::Smooth: return smooth_cumhaz(t);
    case TruthKind::PiecewiseLinear: return pl_cumhaz(t);
    case TruthKind::Histogram: return cumulative_hazard(hist_, t);
    case TruthKind::Constant: return level_ * t;
  }
  return level_ * t;
}

double TruthHazard::survival(double t) const { return std::exp(-cumulative(t)); }

std::optional<double> TruthHazard::median() const {
  switch (kind_) {
    case TruthKind::Constant:
      return (level_ >= kLn2) ? std::optional<double>(kLn2 / level_) : std::nullopt;
    case TruthKind::Histogram: return median_survival(hist_);
    default: break;
  }
  if (cumulative(1.0) < kLn2) return std::nullopt;
  // Lambda is continuous and strictly increasing; bisect to 1e-12.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cumulative(mid) < kLn2 ? lo : hi) = mid;
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

double TruthHazard::inverse_cumulative(double e) const {
  if (!(e >= 0.0)) throw InvalidParameter("cumulative hazard level must be nonnegative");
  if (e == 0.0) return 0.0;
  switch (kind_) {
    case TruthKind::Constant: return e / level_;
    case TruthKind::Histogram: {
      const auto prefix = cumhaz_prefix(hist_);
      if (e > prefix.back())
        return 1.0 + (e - prefix.back()) / hist_.heights.back();
      const auto it = std::lower_bound(prefix.begin(), prefix.end(), e);
      const std::size_t k = std::max<std::size_t>(1, it - prefix.begin()) - 1;
      return hist_.grid.breakpoints[k] + (e - prefix[k]) / hist_.heights[k];
    }
    default: break;
  }
  const double total = cumulative(1.0);
  if (e > total) return 1.0 + (e - total) / hazard(1.0);
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (cumulative(mid) < e ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// --- censoring and the theory oracle ---------------------------------------

double censoring_survivor(CensoringModel cens, double u) {
  if (u < 0.0 || u > 1.0) throw OutOfDomain("time outside [0, 1]");
  switch (cens) {
    case CensoringModel::AdminOnly: return 1.0;
    case CensoringModel::AdminPlusUniform: return 1.0 - u;
  }
  return 1.0;
}

double m0(const TruthHazard& truth, CensoringModel cens, double u) {
  return censoring_survivor(cens, u) * truth.survival(u);
}

double u0(const TruthHazard& truth, CensoringModel cens, double t) {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("time outside [0, 1]");
  if (cens == CensoringModel::AdminPlusUniform && t > 1.0 - kUniformBoundaryGap)
    throw IntegrandSingular("lambda0/M0 diverges at 1 under uniform censoring; need t <= 1 - 1e-6");
  if (t == 0.0) return 0.0;
  const auto integrand = [&](double u) { return truth.hazard(u) / m0(truth, cens, u); };
  return adaptive_simpson(integrand, 0.0, t, 1e-8);
}

double median_bvm_variance(const TruthHazard& truth, CensoringModel cens) {
  const auto med = truth.median();
  if (!med || !(*med > 0.0 && *med < 1.0)) throw NoFiniteMedian();
  const double m = *med;
  const double f0 = truth.hazard(m) * truth.survival(m);
  if (!(f0 > 0.0)) throw DomainError("event density vanishes at the median");
  return u0(truth, cens, m) / (4.0 * f0 * f0);
}

double limit_sup_quantile_from_u0(std::span<const double> u0_grid, double level,
                                  std::size_t n_paths, std::uint64_t seed) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("level must be in (0, 1)");
  if (n_paths < 1000) throw InvalidParameter("need at least 1000 paths");
  if (u0_grid.empty()) throw InvalidParameter("empty U0 grid");
  for (std::size_t j = 0; j + 1 < u0_grid.size(); ++j)
    if (u0_grid[j + 1] < u0_grid[j]) throw InvalidParameter("U0 grid must be nondecreasing");

  RngStream rng(seed);
  std::vector<double> sups(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) {
    double w = (u0_grid[0] > 0.0) ? std::sqrt(u0_grid[0]) * rng.normal() : 0.0;
    double sup = std::fabs(w);
    for (std::size_t j = 0; j + 1 < u0_grid.size(); ++j) {
      const double dv = u0_grid[j + 1] - u0_grid[j];
      if (dv > 0.0) w += std::sqrt(dv) * rng.normal();
      sup = std::max(sup, std::fabs(w));
    }
    sups[p] = sup;
  }
  std::sort(sups.begin(), sups.end());
  const std::size_t idx = static_cast<std::size_t>(
      std::ceil(level * static_cast<double>(n_paths)));
  return sups[std::min(idx, n_paths) - 1];
}

double simulate_limit_sup_quantile(const TruthHazard& truth, CensoringModel cens, double level,
                                   std::size_t n_paths, std::size_t grid_size,
                                   std::uint64_t seed) {
  if (grid_size < 2) throw InvalidParameter("grid size must be at least 2");
  const double t_max =
      (cens == CensoringModel::AdminPlusUniform) ? 1.0 - kUniformBoundaryGap : 1.0;
  // Accumulate U0 segment by segment so each quadrature call stays local.
  std::vector<double> u0_grid(grid_size, 0.0);
  const auto integrand = [&](double u) { return truth.hazard(u) / m0(truth, cens, u); };
  for (std::size_t j = 1; j < grid_size; ++j) {
    const double a = t_max * static_cast<double>(j - 1) / static_cast<double>(grid_size - 1);
    const double b = t_max * static_cast<double>(j) / static_cast<double>(grid_size - 1);
    u0_grid[j] = u0_grid[j - 1] +
                 adaptive_simpson(integrand, a, b, 1e-8 / static_cast<double>(grid_size));
  }
  return limit_sup_quantile_from_u0(u0_grid, level, n_paths, seed);
}

}  // namespace hazbands
