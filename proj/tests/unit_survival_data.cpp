#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "hazbands/rng.hpp"
#include "hazbands/survival_data.hpp"

using namespace hazbands;

TEST_CASE("load_dataset parses, rescales and truncates") {
  SurvivalDataset ds = load_dataset({10.0, 5.0, 20.0}, {1, 0, 1});
  CHECK(ds.n() == 3);
  CHECK(ds.horizon == doctest::Approx(20.0));
  CHECK(ds.records[0].time == doctest::Approx(0.5));
  CHECK(ds.records[2].time == doctest::Approx(1.0));
  CHECK(ds.event_count() == 2);

  // explicit horizon truncates and censors what lies beyond
  SurvivalDataset tr = load_dataset({10.0, 5.0, 20.0}, {1, 0, 1}, 10.0);
  CHECK(tr.records[2].time == doctest::Approx(1.0));
  CHECK(tr.records[2].status == 0);

  SurvivalDataset one = load_dataset({0.5}, {1}, 1.0);
  CHECK(one.n() == 1);
  CHECK(one.event_count() == 1);

  CHECK_THROWS_AS(load_dataset(std::vector<double>{}, std::vector<int>{}), EmptyData);
  CHECK_THROWS_AS(load_dataset(std::vector<double>{-1.0}, std::vector<int>{1}), MalformedRow);
  CHECK_THROWS_AS(load_dataset(std::vector<double>{0.5}, std::vector<int>{2}), MalformedRow);
}

TEST_CASE("csv reader picks named columns and flags bad rows") {
  const char* path = "unit_survival_data_tmp.csv";
  {
    std::ofstream out(path);
    out << "id,futime,dead\n1,100,1\n2,250.5,0\n3,80,1\n";
  }
  const auto rows = read_survival_csv(path, "futime", "dead");
  REQUIRE(rows.size() == 3);
  const SurvivalDataset ds = load_dataset(rows);
  CHECK(ds.n() == 3);
  CHECK(ds.event_count() == 2);
  CHECK_THROWS_AS(read_survival_csv(path, "missing", "dead"), InvalidConfig);
  CHECK_THROWS_AS(read_survival_csv("no_such_file.csv"), Error);
  {
    std::ofstream out(path);
    out << "time,status\nabc,1\n";
  }
  CHECK_THROWS_AS(load_dataset(read_survival_csv(path)), MalformedRow);
  std::remove(path);
}

TEST_CASE("a 228-row table with 63 censored rows loads intact") {
  // mimics the shape of the classic lung-cancer table: 228 follow-up times,
  // 63 of them censored
  RngStream rng(2);
  std::vector<double> times(228);
  std::vector<int> statuses(228, 1);
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = 5.0 + 1000.0 * rng.uniform();
  for (std::size_t i = 0; i < 63; ++i) statuses[3 * i] = 0;
  const SurvivalDataset ds = load_dataset(times, statuses);
  CHECK(ds.n() == 228);
  CHECK(ds.event_count() == 165);
  CHECK(select_interval_count(ds.n(), 0.5) == 7);
  for (const auto& r : ds.records) {
    CHECK(r.time > 0.0);
    CHECK(r.time <= 1.0);
  }
}

TEST_CASE("interval-count rule reproduces the benchmark values") {
  CHECK(select_interval_count(200, 0.5) == 7);
  CHECK(select_interval_count(2000, 0.5) == 17);
  CHECK(select_interval_count(2000, 1.0) == 7);
  CHECK(select_interval_count(228, 0.5) == 7);
  CHECK_THROWS_AS(select_interval_count(1, 0.5), DegenerateSample);
  CHECK_THROWS_AS(select_interval_count(100, 0.0), InvalidParameter);
}

TEST_CASE("interval-count rule is monotone in n and gamma") {
  for (std::size_t n = 10; n < 5000; n = n * 3 / 2) {
    CHECK(select_interval_count(n, 0.5) <= select_interval_count(n + n / 2, 0.5));
    CHECK(select_interval_count(n, 1.0) <= select_interval_count(n, 0.5));
    CHECK(select_interval_count(n, 0.5) <= select_interval_count(n, 0.25));
  }
}

TEST_CASE("augment hand-traced examples") {
  {
    const SurvivalDataset ds = load_dataset({1.0}, {1}, 1.0);
    const IntervalSummary s = augment(ds, IntervalGrid::regular(2));
    CHECK(s.T[0] == doctest::Approx(0.5));
    CHECK(s.T[1] == doctest::Approx(0.5));
    CHECK(s.d[0] == 0);
    CHECK(s.d[1] == 1);
  }
  {
    const SurvivalDataset ds = load_dataset({0.3}, {0}, 1.0);
    const IntervalSummary s = augment(ds, IntervalGrid::regular(2));
    CHECK(s.T[0] == doctest::Approx(0.3));
    CHECK(s.T[1] == doctest::Approx(0.0));
    CHECK(s.total_events() == 0);
  }
  {
    const SurvivalDataset ds = load_dataset({0.25, 0.75}, {1, 0}, 1.0);
    const IntervalSummary s = augment(ds, IntervalGrid::regular(4));
    CHECK(s.T[0] == doctest::Approx(0.5));
    CHECK(s.T[1] == doctest::Approx(0.25));
    CHECK(s.T[2] == doctest::Approx(0.25));
    CHECK(s.T[3] == doctest::Approx(0.0));
    CHECK(s.d[0] == 1);
    CHECK(s.d[1] == 0);
    CHECK(s.d[2] == 0);
    CHECK(s.d[3] == 0);
  }
}

TEST_CASE("conservation and refinement over random datasets") {
  RngStream rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 60);
    std::vector<double> times(n);
    std::vector<int> statuses(n);
    for (std::size_t i = 0; i < n; ++i) {
      times[i] = rng.uniform() * 0.999 + 0.0005;
      statuses[i] = rng.uniform() < 0.5 ? 1 : 0;
    }
    const SurvivalDataset ds = load_dataset(times, statuses, 1.0);
    const std::size_t K = 2 + 2 * static_cast<std::size_t>(rng.uniform() * 6);
    const IntervalSummary s = augment(ds, IntervalGrid::regular(K));

    CHECK(s.total_events() == static_cast<std::int64_t>(ds.event_count()));
    CHECK(std::fabs(s.total_exposure() - ds.total_time()) <
          1e-9 * static_cast<double>(std::max<std::size_t>(n, 1)));

    // merging adjacent fine intervals reproduces the coarse summary
    const IntervalSummary fine = augment(ds, IntervalGrid::regular(2 * K));
    for (std::size_t k = 0; k < K; ++k) {
      CHECK(s.d[k] == fine.d[2 * k] + fine.d[2 * k + 1]);
      CHECK(std::fabs(s.T[k] - (fine.T[2 * k] + fine.T[2 * k + 1])) < 1e-12 * double(n));
    }
  }
}

TEST_CASE("grid membership is right-closed") {
  const IntervalGrid g = IntervalGrid::regular(4);
  CHECK(g.interval_of(0.25) == 0);
  CHECK(g.interval_of(0.250001) == 1);
  CHECK(g.interval_of(1.0) == 3);
  CHECK(g.interval_of(0.0) == 0);
  CHECK_THROWS_AS(g.interval_of(1.5), OutOfDomain);
}
