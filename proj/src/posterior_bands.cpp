#include "hazbands/posterior_bands.hpp"

#include <algorithm>
#include <cmath>

namespace hazbands {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

std::string target_name(CurveTarget t) {
  switch (t) {
    case CurveTarget::Hazard: return "hazard";
    case CurveTarget::CumHaz: return "cumhaz";
    case CurveTarget::Survival: return "survival";
  }
  return "unknown";
}

std::vector<double> evaluation_grid(std::size_t points) {
  if (points < 2) throw InvalidParameter("need at least two grid points");
  std::vector<double> g(points);
  for (std::size_t j = 0; j < points; ++j)
    g[j] = static_cast<double>(j) / static_cast<double>(points - 1);
  return g;
}

std::vector<double> evaluation_grid(const IntervalGrid& grid, std::size_t points) {
  std::vector<double> g = evaluation_grid(points);
  g.insert(g.end(), grid.breakpoints.begin(), grid.breakpoints.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

namespace {

// Single pass over a sorted grid against the draw's interval structure.
void eval_curve(const HazardHistogram& draw, CurveTarget target, std::span<const double> grid,
                double* out) {
  const auto& bp = draw.grid.breakpoints;
  const std::size_t K = draw.K();
  const auto prefix = cumhaz_prefix(draw);
  std::size_t k = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid[j];
    while (k + 1 < K && t > bp[k + 1]) ++k;
    switch (target) {
      case CurveTarget::Hazard:
        out[j] = draw.heights[k];
        break;
      case CurveTarget::CumHaz:
        out[j] = prefix[k] + draw.heights[k] * (t - bp[k]);
        break;
      case CurveTarget::Survival:
        out[j] = std::exp(-(prefix[k] + draw.heights[k] * (t - bp[k])));
        break;
    }
  }
}

void clamp_band(Band& band) {
  for (std::size_t j = 0; j < band.grid.size(); ++j) {
    band.lower[j] = std::max(0.0, band.lower[j]);
    if (band.target == CurveTarget::Survival) {
      band.upper[j] = std::min(1.0, band.upper[j]);
      band.center[j] = std::min(1.0, std::max(0.0, band.center[j]));
    }
  }
}

}  // namespace

std::vector<double> curve_of_draw(const HazardHistogram& draw, CurveTarget target,
                                  std::span<const double> grid) {
  std::vector<double> out(grid.size());
  eval_curve(draw, target, grid, out.data());
  return out;
}

std::vector<double> truth_curve(const TruthHazard& truth, CurveTarget target,
                                std::span<const double> grid) {
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    switch (target) {
      case CurveTarget::Hazard: out[j] = truth.hazard(grid[j]); break;
      case CurveTarget::CumHaz: out[j] = truth.cumulative(grid[j]); break;
      case CurveTarget::Survival: out[j] = truth.survival(grid[j]); break;
    }
  }
  return out;
}

Band credible_band(const PosteriorChain& chain, CurveTarget target, std::span<const double> grid,
                   double level) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidParameter("level must be in (0, 1)");
  const std::size_t n = chain.n_draws();
  if (n < 100) throw InsufficientDraws("need at least 100 post-burn-in draws");

  const std::size_t g = grid.size();
  std::vector<double> center(g, 0.0);
  std::vector<double> buf(g);

  // Two passes keep memory flat: mean first, then sup distances.
  for (std::size_t i = 0; i < n; ++i) {
    eval_curve(chain.histogram(i), target, grid, buf.data());
    for (std::size_t j = 0; j < g; ++j) center[j] += buf[j];
  }
  for (std::size_t j = 0; j < g; ++j) center[j] /= static_cast<double>(n);

  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    eval_curve(chain.histogram(i), target, grid, buf.data());
    double sup = 0.0;
    for (std::size_t j = 0; j < g; ++j) sup = std::max(sup, std::fabs(buf[j] - center[j]));
    dist[i] = sup;
  }
  std::sort(dist.begin(), dist.end());
  const std::size_t idx =
      static_cast<std::size_t>(std::ceil(level * static_cast<double>(n)));
  const double radius = dist[std::min(idx, n) - 1];

  Band band;
  band.target = target;
  band.grid.assign(grid.begin(), grid.end());
  band.center = center;
  band.level = level;
  band.radius = radius;
  band.lower.resize(g);
  band.upper.resize(g);
  for (std::size_t j = 0; j < g; ++j) {
    band.lower[j] = center[j] - radius;
    band.upper[j] = center[j] + radius;
  }
  clamp_band(band);
  return band;
}

MedianDraws median_draws(const PosteriorChain& chain) {
  MedianDraws out;
  out.medians.reserve(chain.n_draws());
  const auto& bp = chain.grid.breakpoints;
  for (const auto& heights : chain.draws) {
    double acc = 0.0;
    bool found = false;
    for (std::size_t k = 0; k < heights.size(); ++k) {
      const double step = heights[k] * (bp[k + 1] - bp[k]);
      if (acc + step >= kLn2) {
        out.medians.push_back(bp[k] + (kLn2 - acc) / heights[k]);
        found = true;
        break;
      }
      acc += step;
    }
    if (!found) ++out.beyond_horizon;
  }
  return out;
}

bool band_covers(const Band& band, std::span<const double> truth) {
  if (truth.size() != band.grid.size())
    throw InvalidParameter("truth curve and band grids differ in length");
  for (std::size_t j = 0; j < truth.size(); ++j)
    if (truth[j] < band.lower[j] || truth[j] > band.upper[j]) return false;
  return true;
}

double band_area(const Band& band) {
  double area = 0.0;
  for (std::size_t j = 0; j + 1 < band.grid.size(); ++j) {
    const double w0 = band.upper[j] - band.lower[j];
    const double w1 = band.upper[j + 1] - band.lower[j + 1];
    area += 0.5 * (w0 + w1) * (band.grid[j + 1] - band.grid[j]);
  }
  return area;
}

}  // namespace hazbands
