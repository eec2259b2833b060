#include "hazbands/band_io.hpp"

#include <fstream>
#include <iomanip>

#include <json.hpp>

namespace hazbands {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << std::setprecision(12);
  return out;
}

}  // namespace

void write_band_csv(const std::string& path, const Band& band, double horizon) {
  auto out = open_out(path);
  const double value_scale = band.target == CurveTarget::Hazard ? 1.0 / horizon : 1.0;
  out << "t,center,lower,upper\n";
  for (std::size_t j = 0; j < band.grid.size(); ++j)
    out << band.grid[j] * horizon << ',' << band.center[j] * value_scale << ','
        << band.lower[j] * value_scale << ',' << band.upper[j] * value_scale << '\n';
}

std::string band_json(const Band& band, const std::string& method) {
  nlohmann::json j{
      {"target", target_name(band.target)},
      {"level", band.level},
      {"radius", band.radius},
      {"area", band_area(band)},
  };
  if (!method.empty()) j["method"] = method;
  return j.dump(2);
}

void write_band_json(const std::string& path, const Band& band, const std::string& method) {
  open_out(path) << band_json(band, method) << '\n';
}

void write_draws_csv(const std::string& path, const PosteriorChain& chain, double horizon) {
  auto out = open_out(path);
  for (std::size_t k = 0; k < chain.K(); ++k) out << (k ? "," : "") << "h" << (k + 1);
  out << '\n';
  for (const auto& draw : chain.draws) {
    for (std::size_t k = 0; k < draw.size(); ++k) out << (k ? "," : "") << draw[k] / horizon;
    out << '\n';
  }
}

namespace {

nlohmann::json stats_json(const CoverageReport& report, CurveTarget target) {
  nlohmann::json j;
  const auto it = report.stats.find(target);
  if (it == report.stats.end()) return j;
  for (const auto& [method, s] : it->second) {
    j[method_name(method)] = {
        {"coverage", s.coverage},
        {"coverage_se", s.coverage_se},
        {"mean_area", s.mean_area},
        {"area_se", s.area_se},
    };
  }
  return j;
}

}  // namespace

std::string report_json(const CoverageReport& report) {
  nlohmann::json j{
      {"replicates", report.replicates},
      {"intervals", report.K},
      {"survival", stats_json(report, CurveTarget::Survival)},
      {"cumhaz", stats_json(report, CurveTarget::CumHaz)},
      {"median_draws",
       {{"mean", report.median_draw_mean},
        {"variance", report.median_draw_variance},
        {"beyond_horizon", report.median_beyond_horizon}}},
  };
  return j.dump(2);
}

void write_report_json(const std::string& path, const CoverageReport& report) {
  open_out(path) << report_json(report) << '\n';
}

void write_report_csv(const std::string& path, const CoverageReport& report,
                      const std::string& scenario_label) {
  auto out = open_out(path);
  out << "scenario,replicates,k";
  static const BandMethod surv_methods[] = {BandMethod::Credible, BandMethod::HallWellner,
                                            BandMethod::LogEP, BandMethod::Pointwise};
  static const BandMethod cum_methods[] = {BandMethod::Credible, BandMethod::Pointwise};
  for (const auto m : surv_methods)
    out << ",surv_" << method_name(m) << "_coverage,surv_" << method_name(m) << "_area";
  for (const auto m : cum_methods)
    out << ",cumhaz_" << method_name(m) << "_coverage,cumhaz_" << method_name(m) << "_area";
  out << '\n';

  out << scenario_label << ',' << report.replicates << ',' << report.K;
  for (const auto m : surv_methods) {
    const auto& s = report.stats.at(CurveTarget::Survival).at(m);
    out << ',' << s.coverage << ',' << s.mean_area;
  }
  for (const auto m : cum_methods) {
    const auto& s = report.stats.at(CurveTarget::CumHaz).at(m);
    out << ',' << s.coverage << ',' << s.mean_area;
  }
  out << '\n';
}

}  // namespace hazbands
