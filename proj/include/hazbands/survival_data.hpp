#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hazbands/errors.hpp"

namespace hazbands {

/// One observed pair: follow-up time on (0, 1] and event indicator
/// (1 = event, 0 = censored).
struct SurvivalRecord {
  double time;
  int status;
};

/// Right-censored sample rescaled to the unit study horizon.
struct SurvivalDataset {
  std::vector<SurvivalRecord> records;
  /// Horizon used to map raw times onto [0, 1] (original time units).
  double horizon = 1.0;

  std::size_t n() const { return records.size(); }
  std::size_t event_count() const;
  double total_time() const;
};

/// Regular grid of K intervals partitioning [0, 1]. Interval k (0-based) is
/// (breakpoints[k], breakpoints[k+1]]; membership is left-open/right-closed,
/// so an observation sitting exactly on a breakpoint belongs to the interval
/// ending there, and time 1 belongs to the last interval.
struct IntervalGrid {
  std::size_t K = 0;
  std::vector<double> breakpoints;

  static IntervalGrid regular(std::size_t K);

  /// 0-based index of the interval containing t, for t in (0, 1]. t == 0 maps
  /// to the first interval.
  std::size_t interval_of(double t) const;

  double width(std::size_t k) const { return breakpoints[k + 1] - breakpoints[k]; }
};

/// Per-interval sufficient statistics of the Poisson likelihood
/// representation: event counts d_k and total exposures T_k.
struct IntervalSummary {
  std::vector<std::int64_t> d;
  std::vector<double> T;

  std::size_t K() const { return d.size(); }
  std::int64_t total_events() const;
  double total_exposure() const;
};

/// Raw tabular row prior to parsing; produced by the CSV reader.
struct RawRow {
  std::string time;
  std::string status;
};

/// Parse, validate and rescale raw rows. Times are divided by `horizon`
/// (default: the maximum observed time); anything landing above 1 is
/// truncated to 1 with status 0. Throws EmptyData / MalformedRow.
SurvivalDataset load_dataset(const std::vector<RawRow>& rows,
                             std::optional<double> horizon = std::nullopt);

/// Numeric convenience overload used by the bindings and tests.
SurvivalDataset load_dataset(const std::vector<double>& times, const std::vector<int>& statuses,
                             std::optional<double> horizon = std::nullopt);

/// Read a CSV file with a header row into raw rows, selecting the named time
/// and status columns. Throws Error on I/O failure, MalformedRow on rows with
/// missing fields, InvalidConfig on missing columns.
std::vector<RawRow> read_survival_csv(const std::string& path, const std::string& time_col = "time",
                                      const std::string& status_col = "status");

/// Interval-count rule K = ceil((n / log n)^(1 / (1 + 2*gamma))).
std::size_t select_interval_count(std::size_t n, double gamma);

/// Reduce a dataset to per-interval event counts and exposures.
IntervalSummary augment(const SurvivalDataset& dataset, const IntervalGrid& grid);

}  // namespace hazbands
