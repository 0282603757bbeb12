#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "camplan/metrics.hpp"

using namespace camplan;

namespace {

Grid toy_grid() { return Grid::from_bounds({40.0, 40.01, 116.0, 116.01}, 100.0); }

// Naive O(n^2) definition, kept as the oracle for the sorted formula.
double gini_bruteforce(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (mean == 0.0) return 0.0;
  double acc = 0.0;
  for (double a : xs)
    for (double b : xs) acc += std::abs(a - b);
  return acc / (2.0 * n * n * mean);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("gini: frozen examples") {
  const double quad[] = {1.0, 2.0, 3.0, 4.0};
  CHECK(gini(quad) == doctest::Approx(0.25).epsilon(1e-12));
  const double equal[] = {7.0, 7.0, 7.0, 7.0, 7.0};
  CHECK(gini(equal) == doctest::Approx(0.0));
  const double spike[] = {0.0, 0.0, 0.0, 1.0};
  CHECK(gini(spike) == doctest::Approx(0.75).epsilon(1e-12));  // (n-1)/n
  const double zeros[] = {0.0, 0.0};
  CHECK(gini(zeros) == doctest::Approx(0.0));
  const double one[] = {42.0};
  CHECK(gini(one) == doctest::Approx(0.0));
}

TEST_CASE("gini: spike of length n approaches 1 as (n-1)/n") {
  for (int n : {2, 5, 10, 100}) {
    std::vector<double> xs(static_cast<size_t>(n), 0.0);
    xs.back() = 3.5;
    CHECK(gini(xs) == doctest::Approx((n - 1.0) / n).epsilon(1e-12));
  }
}

TEST_CASE("gini: matches the quadratic double-sum on random vectors") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(2 + rng() % 40);
    for (double& x : xs) x = (rng() % 5 == 0) ? 0.0 : u(rng);
    CHECK(gini(xs) == doctest::Approx(gini_bruteforce(xs)).epsilon(1e-10));
  }
}

TEST_CASE("gini: scale invariance") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> xs(25);
  for (double& x : xs) x = u(rng);
  std::vector<double> scaled = xs;
  for (double& x : scaled) x *= 137.5;
  CHECK(gini(xs) == doctest::Approx(gini(scaled)).epsilon(1e-12));
}

TEST_CASE("gini: rejects empty and negative input") {
  CHECK_THROWS_AS((void)gini({}), std::invalid_argument);
  const double neg[] = {1.0, -0.5};
  CHECK_THROWS_AS((void)gini(neg), std::invalid_argument);
}

TEST_CASE("dist_stats on a known vector") {
  const double xs[] = {4.0, 1.0, 3.0, 2.0};
  DistStats s = dist_stats(xs);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.median == doctest::Approx(2.5));
  CHECK(s.stddev == doctest::Approx(std::sqrt(1.25)));
  const double odd[] = {9.0, 1.0, 5.0};
  CHECK(dist_stats(odd).median == doctest::Approx(5.0));
}

TEST_CASE("ucr on the toy model") {
  Grid g = toy_grid();
  std::vector<BlockVisit> visits{{"A", {0, 0}, 0, 10},
                                 {"A", {0, 3}, 50, 80},
                                 {"B", {0, 3}, 0, 5},
                                 {"C", {2, 2}, 0, 60}};
  auto m = CoverageModel::build(g, visits, 100.0);
  const int64_t b2 = g.linear_index({0, 3});
  const int64_t c[] = {b2};
  CHECK(ucr(m, c) == doctest::Approx(2.0 / 3.0));
  CHECK(ucr(m, {}) == doctest::Approx(0.0));
  CHECK(ucr(m, m.placeable_blocks()) == doctest::Approx(1.0));
}

TEST_CASE("vcr on the dwell toy") {
  Grid g = toy_grid();
  std::vector<BlockVisit> visits{{"A", {0, 0}, 0, 10},
                                 {"B", {0, 3}, 0, 30},
                                 {"C", {2, 2}, 0, 60}};
  auto m = CoverageModel::build(g, visits, 100.0);
  const int64_t b3 = g.linear_index({2, 2});
  const int64_t c[] = {b3};
  CHECK(vcr(m, c) == doctest::Approx(0.6));
  CHECK(vcr(m, m.placeable_blocks()) == doctest::Approx(1.0));
}

TEST_CASE("ucr and vcr are monotone in C") {
  Grid g = toy_grid();
  std::mt19937_64 rng(107);
  std::vector<BlockVisit> visits;
  for (int v = 0; v < 12; ++v) {
    int64_t t0 = 0;
    for (int i = 0; i < 4; ++i) {
      BlockId b{static_cast<int32_t>(rng() % 10),
                static_cast<int32_t>(rng() % 8)};
      visits.push_back({"v" + std::to_string(v), b, t0, t0 + 30});
      t0 += 100;
    }
  }
  auto m = CoverageModel::build(g, visits);
  const auto& r = m.placeable_blocks();
  std::vector<int64_t> c;
  double prev_ucr = 0.0, prev_vcr = 0.0;
  for (int64_t b : r) {
    c.push_back(b);
    const double u = ucr(m, c), t = vcr(m, c);
    CHECK(u >= prev_ucr);
    CHECK(t >= prev_vcr);
    prev_ucr = u;
    prev_vcr = t;
  }
  CHECK(prev_ucr == doctest::Approx(1.0));
  CHECK(prev_vcr == doctest::Approx(1.0));
}

TEST_CASE("per-vehicle vectors in the full report") {
  Grid g = toy_grid();
  std::vector<BlockVisit> visits{
      {"A", {0, 0}, 0, 10},    {"A", {0, 3}, 50, 80},
      {"A", {0, 3}, 200, 230}, {"B", {0, 3}, 0, 5},
      {"C", {2, 2}, 0, 60},
  };
  auto m = CoverageModel::build(g, visits, 500.0);
  const int64_t c[] = {g.linear_index({0, 0}), g.linear_index({0, 3})};
  MetricReport r = compute_metrics(m, c);

  REQUIRE(r.vit.size() == 3);  // vehicles A, B, C in sorted id order
  CHECK(r.n_cameras == 2);
  CHECK(r.vit[0] == doctest::Approx(70.0));  // A: 10 + 30 + 30
  CHECK(r.vch[0] == 3);                      // A: 1 hit in b1, 2 in b2
  CHECK(r.vuh[0] == 2);
  CHECK(r.vit[1] == doctest::Approx(5.0));
  CHECK(r.vch[1] == 1);
  CHECK(r.vuh[1] == 1);
  CHECK(r.vit[2] == doctest::Approx(0.0));
  CHECK(r.vch[2] == 0);
  CHECK(r.vuh[2] == 0);

  for (size_t v = 0; v < r.vch.size(); ++v) CHECK(r.vuh[v] <= r.vch[v]);

  CHECK(r.ucr == doctest::Approx(2.0 / 3.0));
  // vcr numerator must equal the VIT sum: (70 + 5) / 135
  CHECK(r.vcr == doctest::Approx(75.0 / 135.0));
  CHECK(r.vch_stats.mean == doctest::Approx((3 + 1 + 0) / 3.0));
  CHECK(r.gini_vch == doctest::Approx(gini_bruteforce(
                          std::vector<double>{3.0, 1.0, 0.0})));
}

TEST_CASE("empty model is rejected") {
  auto m = CoverageModel::build(toy_grid(), {});
  CHECK_THROWS_AS((void)ucr(m, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)vcr(m, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)compute_metrics(m, {}), std::invalid_argument);
}

}  // TEST_SUITE
