#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "inexact/error.hpp"
#include "inexact/mobs.hpp"
#include "oracles.hpp"

using namespace inexact;

TEST_CASE("BE staircase quality is 2/n") {
  for (int n = 2; n <= 8; ++n) {
    auto p = make_binary_evaluation(n);
    auto q = quality(Decoder::identity(p), staircase_allocation(n), PermutationGroup::identity(n),
                     MetricKind::ReciprocalExpectedError);
    CHECK(q.quality == doctest::Approx(2.0 / n).epsilon(1e-12));
    CHECK(q.worst_input == 0);
  }
}

TEST_CASE("BE(2) staircase per input") {
  auto p = make_binary_evaluation(2);
  auto q = quality(Decoder::identity(p), staircase_allocation(2), PermutationGroup::identity(2),
                   MetricKind::ReciprocalExpectedError);
  // Rational oracle: 1, 3/4, 3/4, 1.
  CHECK(q.errors[0].value == doctest::Approx(1.0));
  CHECK(q.errors[1].value == doctest::Approx(0.75));
  CHECK(q.errors[2].value == doctest::Approx(0.75));
  CHECK(q.errors[3].value == doctest::Approx(1.0));
}

TEST_CASE("noiseless comparison has infinite quality") {
  auto p = make_comparison(1);
  auto q = quality(Decoder::identity(p), EnergyVector({2000.0, 2000.0}), PermutationGroup::identity(2),
                   MetricKind::ComparisonWeighted);
  CHECK(q.quality == kInfiniteQuality);
  CHECK(q.rows.size() == 2);
}

TEST_CASE("comparison fast path equals the generic path") {
  auto p = make_comparison(3);
  EnergyVector e({0.5, 1.5, 2.5, 1.0, 2.0, 3.0});
  auto fast = quality(Decoder::identity(p), e, PermutationGroup::identity(6), MetricKind::ComparisonWeighted);
  // A cyclic group of order 1 forces the generic path through enumeration.
  auto trivial = PermutationGroup::generated(6, {});
  auto slow = quality(Decoder::identity(p), e, trivial, MetricKind::ComparisonWeighted);
  REQUIRE(fast.rows == slow.rows);
  for (std::size_t r = 0; r < fast.rows.size(); ++r) {
    CHECK(fast.errors[r].value == doctest::Approx(slow.errors[r].value).epsilon(1e-12));
  }
  CHECK(fast.quality == doctest::Approx(slow.quality).epsilon(1e-12));
}

TEST_CASE("sorting L = 2, k = 1, instance (1, 0)") {
  auto p = make_sorting(2, 1);
  Row instance = 0b01;  // word 0 = 1, word 1 = 0
  EnergyVector e({1.0, 1.0});
  // Rational oracle over the 4 joint reads: 3/4.
  CHECK(wrong_order_probability(p, e, PermutationGroup::identity(2), instance, 0, 1) == doctest::Approx(0.75));
  QualityOptions opts;
  opts.instance = instance;
  auto q = quality(Decoder::identity(p), e, PermutationGroup::identity(2), MetricKind::SortingWeighted, opts);
  CHECK(q.worst_error == doctest::Approx(0.75));
  CHECK(q.quality == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("sorting exact and Monte Carlo agree") {
  auto p = make_sorting(4, 3);
  Row instance = expensive_pairs_instance(4, 3);
  auto words = p.words(instance);
  CHECK(words == std::vector<std::int64_t>{4, 4, 0, 0});
  EnergyVector e(std::vector<double>(12, 1.7));
  for (auto group : {PermutationGroup::identity(12), PermutationGroup::full_symmetric(12)}) {
    auto exact = quality(Decoder::identity(p), e, group, MetricKind::SortingWeighted);
    QualityOptions mc;
    mc.eval = {EvalMode::MonteCarlo, 200'000, 5};
    auto est = quality(Decoder::identity(p), e, group, MetricKind::SortingWeighted, mc);
    CHECK(std::abs(est.worst_error - exact.worst_error) <= 4.0 * est.errors[0].std_error);
  }
  auto staircase = quality(Decoder::identity(p), sorting_allocation(4, 3), PermutationGroup::identity(12),
                           MetricKind::SortingWeighted);
  CHECK(staircase.quality > 0.0);
}

TEST_CASE("metric validation") {
  auto be = make_binary_evaluation(3);
  CHECK_THROWS_AS(validate_metric(be, MetricKind::ComparisonWeighted, DecoderStrategy::Identity), invalid_input_error);
  CHECK_THROWS_AS(validate_metric(be, MetricKind::SortingWeighted, DecoderStrategy::Identity), invalid_input_error);
  CHECK_THROWS_AS(validate_metric(make_sorting(2, 2), MetricKind::SortingWeighted, DecoderStrategy::Map),
                  invalid_input_error);
  CHECK(default_metric(be) == MetricKind::ReciprocalExpectedError);
  CHECK(default_metric(make_or(3)) == MetricKind::WorstCaseCorrectness);
  CHECK(metric_from_string("comparison_weighted") == MetricKind::ComparisonWeighted);
  CHECK_THROWS_AS(expensive_pairs_instance(3, 2), invalid_input_error);
}

TEST_CASE("analytic bounds") {
  auto b3 = be_analytic_bounds(3);
  CHECK(b3.clairvoyant_error == 1.5);
  CHECK(b3.blindfolded_lower_bound == 1.0);
  auto b1 = be_analytic_bounds(1);
  CHECK(b1.clairvoyant_error == 0.5);
  CHECK(b1.blindfolded_lower_bound == 0.5);
  auto b11 = be_analytic_bounds(11);
  CHECK(b11.clairvoyant_error == 5.5);
  CHECK(b11.blindfolded_lower_bound == 16.0);
  CHECK_THROWS_AS(be_analytic_bounds(0), invalid_input_error);

  CHECK(sorting_mobs_bound(2, 3).ratio == 2.0);
  CHECK(sorting_mobs_bound(2, 1).ratio == 1.0);
  CHECK(sorting_mobs_bound(4, 9).ratio == 16.0);
  auto sb = sorting_mobs_bound(4, 3);
  CHECK(sb.words == std::vector<std::int64_t>{4, 4, 0, 0});
  CHECK_THROWS_AS(sorting_mobs_bound(3, 3), invalid_input_error);
}

TEST_CASE("mobs of symmetric problems is 1") {
  for (int n = 2; n <= 6; ++n) {
    for (auto p : {make_or(n), make_unary_evaluation(n)}) {
      auto grid = default_budget_grid(p);
      auto r = mobs(p, grid, default_metric(p));
      CHECK(r.mode == EvalMode::Exact);
      CHECK(r.mobs == doctest::Approx(1.0).epsilon(1e-3));
      CHECK(r.mobs >= 1.0 - 1e-9);
    }
  }
  for (int n : {2, 4, 6}) {
    auto p = make_tribes(n);
    auto grid = default_budget_grid(p);
    auto r = mobs(p, grid, MetricKind::WorstCaseCorrectness);
    CHECK(r.mobs == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("every symmetric function up to n = 5 has mobs 1") {
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (int m = 0; m < (1 << (n + 1)); ++m) {
      std::vector<std::int64_t> sig;
      for (int c = 0; c <= n; ++c) sig.push_back((m >> c) & 1);
      auto p = make_symmetric_function(n, sig);
      auto grid = default_budget_grid(p);
      auto r = mobs(p, grid, MetricKind::WorstCaseCorrectness);
      CHECK(r.mobs >= 1.0 - 1e-9);
      worst = std::max(worst, r.mobs);
    }
  }
  CHECK(worst <= 1.0 + 1e-3);
}

TEST_CASE("BE mobs grows with n") {
  double prev = 0.0;
  for (int n : {2, 4, 6, 8}) {
    auto p = make_binary_evaluation(n);
    auto grid = default_budget_grid(p);
    auto r = mobs(p, grid, MetricKind::ReciprocalExpectedError);
    CHECK(r.mobs > prev);
    CHECK(r.mobs_quality <= r.mobs + 1e-12);
    prev = r.mobs;
  }
}

TEST_CASE("mobs is at least 1 with MAP champions and a Monte Carlo run is seeded") {
  auto p = make_binary_evaluation(3);
  MobsOptions o;
  o.decoders = {DecoderStrategy::Identity, DecoderStrategy::Map};
  const std::vector<double> grid{3.0, 6.0};
  auto r = mobs(p, grid, MetricKind::WorstCaseCorrectness, o);
  CHECK(r.mobs >= 1.0 - 1e-9);

  MobsOptions mc;
  mc.mode = ModeChoice::MonteCarlo;
  mc.samples = 20'000;
  mc.seed = 11;
  auto a = mobs(p, grid, MetricKind::ReciprocalExpectedError, mc);
  auto b = mobs(p, grid, MetricKind::ReciprocalExpectedError, mc);
  CHECK(a.mode == EvalMode::MonteCarlo);
  CHECK(a.mobs == b.mobs);
  CHECK(a.points[0].error_ratio_std_error > 0.0);

  const std::vector<double> empty;
  CHECK_THROWS_AS(mobs(p, empty, MetricKind::ReciprocalExpectedError), invalid_input_error);
}

TEST_CASE("expensive pairs ratio stays within a factor 2 of the bound") {
  for (int k = 2; k <= 6; ++k) {
    auto m = measured_sorting_ratio(2, k);
    double bound = sorting_mobs_bound(2, k).ratio;
    CHECK(m.ratio >= bound / 2.0);
    CHECK(m.ratio <= bound * 2.0);
  }
}
