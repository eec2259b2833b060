#pragma once

#include <string>

#include "hazbands/posterior_bands.hpp"
#include "hazbands/sampler.hpp"
#include "hazbands/sim_harness.hpp"

namespace hazbands {

/// Write a band as CSV with header t,center,lower,upper. `horizon` maps
/// times back onto the original scale; hazard values are divided by it so
/// rates stay per original time unit.
void write_band_csv(const std::string& path, const Band& band, double horizon = 1.0);

/// JSON envelope {target, level, radius, area} with an optional method tag.
std::string band_json(const Band& band, const std::string& method = "");
void write_band_json(const std::string& path, const Band& band, const std::string& method = "");

/// Chain draws as CSV, one row per draw, one column per interval height.
void write_draws_csv(const std::string& path, const PosteriorChain& chain, double horizon = 1.0);

std::string report_json(const CoverageReport& report);
void write_report_json(const std::string& path, const CoverageReport& report);

/// One-row CSV in the coverage-table layout: scenario columns followed by
/// method x {coverage, area} blocks for the survival and cumulative-hazard
/// targets.
void write_report_csv(const std::string& path, const CoverageReport& report,
                      const std::string& scenario_label);

}  // namespace hazbands
