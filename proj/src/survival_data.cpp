#include "hazbands/survival_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hazbands {

std::size_t SurvivalDataset::event_count() const {
  std::size_t c = 0;
  for (const auto& r : records) c += static_cast<std::size_t>(r.status);
  return c;
}

double SurvivalDataset::total_time() const {
  double s = 0.0;
  for (const auto& r : records) s += r.time;
  return s;
}

IntervalGrid IntervalGrid::regular(std::size_t K) {
  if (K == 0) throw InvalidParameter("interval count must be positive");
  IntervalGrid g;
  g.K = K;
  g.breakpoints.resize(K + 1);
  for (std::size_t j = 0; j <= K; ++j)
    g.breakpoints[j] = static_cast<double>(j) / static_cast<double>(K);
  g.breakpoints.front() = 0.0;
  g.breakpoints.back() = 1.0;
  return g;
}

std::size_t IntervalGrid::interval_of(double t) const {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("time outside [0, 1]");
  if (t <= breakpoints[1]) return 0;
  // First breakpoint >= t, scanning past the leading 0; t belongs to the
  // interval that ends there.
  const auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end(), t);
  return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

std::int64_t IntervalSummary::total_events() const {
  return std::accumulate(d.begin(), d.end(), std::int64_t{0});
}

double IntervalSummary::total_exposure() const {
  return std::accumulate(T.begin(), T.end(), 0.0);
}

namespace {

bool parse_double(const std::string& s, double* out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  if (*end != '\0') return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

SurvivalDataset build_dataset(const std::vector<double>& times, const std::vector<double>& statuses,
                              std::optional<double> horizon) {
  if (times.empty()) throw EmptyData();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw MalformedRow(i, "time must be strictly positive");
    const double st = statuses[i];
    if (st != 0.0 && st != 1.0) throw MalformedRow(i, "status must be 0 or 1");
  }
  double h;
  if (horizon) {
    h = *horizon;
    if (!(h > 0.0)) throw InvalidParameter("horizon must be positive");
  } else {
    h = *std::max_element(times.begin(), times.end());
  }
  SurvivalDataset ds;
  ds.horizon = h;
  ds.records.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    double t = times[i] / h;
    int status = static_cast<int>(statuses[i]);
    if (t > 1.0) {  // beyond the study horizon: administratively censored at 1
      t = 1.0;
      status = 0;
    }
    ds.records.push_back({t, status});
  }
  return ds;
}

}  // namespace

SurvivalDataset load_dataset(const std::vector<RawRow>& rows, std::optional<double> horizon) {
  if (rows.empty()) throw EmptyData();
  std::vector<double> times(rows.size());
  std::vector<double> statuses(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!parse_double(rows[i].time, &times[i]))
      throw MalformedRow(i, "unparseable time '" + rows[i].time + "'");
    if (!parse_double(rows[i].status, &statuses[i]))
      throw MalformedRow(i, "unparseable status '" + rows[i].status + "'");
  }
  return build_dataset(times, statuses, horizon);
}

SurvivalDataset load_dataset(const std::vector<double>& times, const std::vector<int>& statuses,
                             std::optional<double> horizon) {
  if (times.size() != statuses.size())
    throw InvalidParameter("times and statuses must have equal length");
  std::vector<double> st(statuses.begin(), statuses.end());
  return build_dataset(times, st, horizon);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace and CR
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::vector<RawRow> read_survival_csv(const std::string& path, const std::string& time_col,
                                      const std::string& status_col) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw EmptyData();
  // strip a UTF-8 BOM if present
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
      static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
    line.erase(0, 3);
  const auto header = split_csv_line(line);
  std::ptrdiff_t time_idx = -1, status_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == time_col) time_idx = static_cast<std::ptrdiff_t>(j);
    if (header[j] == status_col) status_idx = static_cast<std::ptrdiff_t>(j);
  }
  if (time_idx < 0) throw InvalidConfig("missing time column '" + time_col + "' in " + path);
  if (status_idx < 0) throw InvalidConfig("missing status column '" + status_col + "' in " + path);
  std::vector<RawRow> rows;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    const std::size_t need =
        static_cast<std::size_t>(std::max(time_idx, status_idx)) + 1;
    if (fields.size() < need) throw MalformedRow(row_no, "missing fields");
    rows.push_back({fields[static_cast<std::size_t>(time_idx)],
                    fields[static_cast<std::size_t>(status_idx)]});
    ++row_no;
  }
  return rows;
}

std::size_t select_interval_count(std::size_t n, double gamma) {
  if (n < 2) throw DegenerateSample("need at least two observations");
  if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
  const double nn = static_cast<double>(n);
  const double k = std::ceil(std::pow(nn / std::log(nn), 1.0 / (1.0 + 2.0 * gamma)));
  return static_cast<std::size_t>(std::max(1.0, k));
}

IntervalSummary augment(const SurvivalDataset& dataset, const IntervalGrid& grid) {
  const std::size_t K = grid.K;
  IntervalSummary s;
  s.d.assign(K, 0);
  s.T.assign(K, 0.0);
  for (const auto& r : dataset.records) {
    if (r.time < 0.0 || r.time > 1.0) throw OutOfDomain("follow-up time outside [0, 1]");
    for (std::size_t k = 0; k < K; ++k) {
      const double lo = grid.breakpoints[k];
      if (lo >= r.time) break;
      const double hi = grid.breakpoints[k + 1];
      s.T[k] += std::min(r.time, hi) - lo;
    }
    if (r.status == 1) s.d[grid.interval_of(r.time)] += 1;
  }
  return s;
}

}  // namespace hazbands
