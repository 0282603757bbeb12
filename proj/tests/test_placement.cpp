#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "camplan/placement.hpp"

using namespace camplan;

namespace {

Grid toy_grid() { return Grid::from_bounds({40.0, 40.01, 116.0, 116.01}, 100.0); }

// A dwells 10 s in b1 and 30 s in b2; B dwells 5 s in b2; C dwells 60 s in
// b3. Explicit span S = 100.
struct Toy {
  Grid grid = toy_grid();
  int64_t b1, b2, b3;
  CoverageModel model;
};

Toy make_toy() {
  Toy t;
  BlockId i1{0, 0}, i2{0, 3}, i3{2, 2};
  std::vector<BlockVisit> visits{
      {"A", i1, 0, 10},
      {"A", i2, 50, 80},
      {"B", i2, 0, 5},
      {"C", i3, 0, 60},
  };
  t.model = CoverageModel::build(t.grid, visits, 100.0);
  t.b1 = t.grid.linear_index(i1);
  t.b2 = t.grid.linear_index(i2);
  t.b3 = t.grid.linear_index(i3);
  return t;
}

// Random small model for property tests.
CoverageModel random_model(std::mt19937_64& rng, int n_vehicles, int n_blocks) {
  Grid g = toy_grid();  // 12 x 9 blocks; n_blocks <= 100 fits
  std::vector<BlockVisit> visits;
  for (int v = 0; v < n_vehicles; ++v) {
    const int k = 1 + static_cast<int>(rng() % 6);
    int64_t t0 = 0;
    for (int i = 0; i < k; ++i) {
      const int64_t block =
          static_cast<int64_t>(rng() % static_cast<uint64_t>(n_blocks));
      const int64_t dwell = 1 + static_cast<int64_t>(rng() % 500);
      char id[8];
      std::snprintf(id, sizeof id, "v%03d", v);
      visits.push_back({id, g.from_linear(block), t0, t0 + dwell});
      t0 += dwell + 1 + static_cast<int64_t>(rng() % 100);
    }
  }
  return CoverageModel::build(g, visits);
}

std::vector<int64_t> random_subset(std::mt19937_64& rng,
                                   std::span<const int64_t> pool,
                                   double p) {
  std::vector<int64_t> out;
  for (int64_t b : pool) {
    if ((rng() % 1000) / 1000.0 < p) out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_SUITE("placement") {

TEST_CASE("strategy names round-trip") {
  for (Strategy s : kAllStrategies) {
    auto back = strategy_from_name(strategy_name(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK_FALSE(strategy_from_name("S9").has_value());
  CHECK_FALSE(strategy_from_name("").has_value());
}

TEST_CASE("phi constants follow F(empty) = 0") {
  Toy t = make_toy();
  auto m = CoverageModel::build(t.grid, {}, 604800.0);
  CHECK(phi_constant(m, Strategy::S1) == 0.0);
  CHECK(phi_constant(m, Strategy::S2) == 0.0);
  CHECK(phi_constant(m, Strategy::S3) == doctest::Approx(604799.0));
  CHECK(phi_constant(m, Strategy::S4) == doctest::Approx(604800.0));
  CHECK(phi_constant(m, Strategy::S5) == doctest::Approx(604800.0));
}

TEST_CASE("objective values on the worked toy") {
  Toy t = make_toy();
  const int64_t c2[] = {t.b2};
  const int64_t c12[] = {t.b1, t.b2};

  for (Strategy s : kAllStrategies) {
    CHECK(objective_value(t.model, s, {}) == 0.0);
  }
  CHECK(objective_value(t.model, Strategy::S1, c2) == doctest::Approx(2.0));
  CHECK(objective_value(t.model, Strategy::S2, c2) == doctest::Approx(35.0));
  // S3 on {b2}: ((100 - 100/31) + (100 - 100/6)) / 3
  CHECK(objective_value(t.model, Strategy::S3, c2) ==
        doctest::Approx(60.03584229390681).epsilon(1e-12));
  // S5 on {b1, b2}: U_A = 2, U_B = 1 -> ((100 - 100/3) + (100 - 100/2)) / 3
  CHECK(objective_value(t.model, Strategy::S5, c12) ==
        doctest::Approx(350.0 / 9.0).epsilon(1e-12));
  // S4 on {b2}: H_A = 1, H_B = 1 -> 2 * (100 - 100/2) / 3
  CHECK(objective_value(t.model, Strategy::S4, c2) ==
        doctest::Approx(100.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("objective rejects blocks outside R") {
  Toy t = make_toy();
  const int64_t stray[] = {t.b1, t.b3 + 1};
  CHECK_THROWS_AS((void)objective_value(t.model, Strategy::S1, stray),
                  std::invalid_argument);
}

TEST_CASE("marginal gains match objective differences") {
  Toy t = make_toy();
  std::mt19937_64 rng(11);
  auto m = random_model(rng, 12, 40);
  const auto& r = m.placeable_blocks();
  for (Strategy s : kAllStrategies) {
    for (int trial = 0; trial < 40; ++trial) {
      auto c = random_subset(rng, r, 0.3);
      const int64_t cand = r[rng() % r.size()];
      if (std::find(c.begin(), c.end(), cand) != c.end()) continue;
      std::vector<int64_t> c_plus = c;
      c_plus.push_back(cand);
      const double direct = objective_value(m, s, c_plus) -
                            objective_value(m, s, c);
      const double incremental = marginal_gain(m, s, c, cand);
      CHECK(incremental == doctest::Approx(direct).epsilon(1e-9));
    }
  }

  // basics on the toy
  CHECK(marginal_gain(t.model, Strategy::S1, {}, t.b2) == doctest::Approx(2.0));
  const int64_t c2[] = {t.b2};
  CHECK(marginal_gain(t.model, Strategy::S1, c2, t.b1) == doctest::Approx(0.0));
  CHECK(marginal_gain(t.model, Strategy::S1, c2, t.b3) == doctest::Approx(1.0));
  // S2 gains ignore what is already selected
  CHECK(marginal_gain(t.model, Strategy::S2, {}, t.b1) ==
        doctest::Approx(marginal_gain(t.model, Strategy::S2, c2, t.b1)));
}

TEST_CASE("marginal gain input validation") {
  Toy t = make_toy();
  const int64_t c2[] = {t.b2};
  CHECK_THROWS_AS((void)marginal_gain(t.model, Strategy::S1, c2, t.b2),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)marginal_gain(t.model, Strategy::S1, c2, t.b3 + 1),
                  std::invalid_argument);
}

TEST_CASE("greedy walks the toy as derived by hand") {
  Toy t = make_toy();
  Placement p = greedy_place(t.model, Strategy::S1, 3);
  // step 1: b2 covers A and B (gain 2); step 2: b3 covers C (gain 1);
  // b1 would add nothing, so the sweep stops at two blocks.
  REQUIRE(p.steps.size() == 2);
  CHECK(p.steps[0].block == t.b2);
  CHECK(p.steps[0].gain == doctest::Approx(2.0));
  CHECK(p.steps[1].block == t.b3);
  CHECK(p.steps[1].gain == doctest::Approx(1.0));
  CHECK(p.steps[1].cumulative == doctest::Approx(3.0));
}

TEST_CASE("greedy tie-break picks the smallest linear block index") {
  Grid g = toy_grid();
  // two interchangeable vehicles in two distinct blocks, equal dwell
  std::vector<BlockVisit> visits{{"A", {2, 5}, 0, 60}, {"B", {1, 4}, 0, 60}};
  auto m = CoverageModel::build(g, visits);
  const int64_t lo = g.linear_index({1, 4});
  const int64_t hi = g.linear_index({2, 5});
  for (Strategy s : kAllStrategies) {
    Placement p = greedy_place(m, s, 2);
    REQUIRE(p.steps.size() == 2);
    CHECK(p.steps[0].block == lo);
    CHECK(p.steps[1].block == hi);
  }
}

TEST_CASE("greedy stops early only when the best gain hits zero") {
  Toy t = make_toy();
  for (Strategy s : kAllStrategies) {
    Placement p = greedy_place(t.model, s, 100);  // budget beyond |R|
    CHECK(p.steps.size() <= 3);
    for (const auto& st : p.steps) CHECK(st.gain > 0.0);
    const auto blocks = p.blocks();
    const double full =
        objective_value(t.model, s, t.model.placeable_blocks());
    CHECK(objective_value(t.model, s, blocks) ==
          doctest::Approx(full).epsilon(1e-12));
  }
}

TEST_CASE("greedy on empty model or zero budget yields nothing") {
  auto empty = CoverageModel::build(toy_grid(), {});
  CHECK(greedy_place(empty, Strategy::S2, 5).steps.empty());
  Toy t = make_toy();
  CHECK(greedy_place(t.model, Strategy::S2, 0).steps.empty());
  CHECK_THROWS_AS(greedy_place(t.model, Strategy::S2, -1),
                  std::invalid_argument);
}

TEST_CASE("gains never increase along a sweep and cumulative sums hold") {
  std::mt19937_64 rng(23);
  for (int inst = 0; inst < 10; ++inst) {
    auto m = random_model(rng, 20, 60);
    for (Strategy s : kAllStrategies) {
      Placement p = greedy_place(m, s, 15);
      double sum = 0.0;
      for (size_t i = 0; i < p.steps.size(); ++i) {
        if (i > 0) {
          CHECK(p.steps[i].gain <= p.steps[i - 1].gain * (1.0 + 1e-12) + 1e-12);
        }
        sum += p.steps[i].gain;
        CHECK(p.steps[i].cumulative == doctest::Approx(sum).epsilon(1e-12));
      }
      const double direct = objective_value(m, s, p.blocks());
      CHECK(sum == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("lazy greedy equals the naive rescan exactly") {
  std::mt19937_64 rng(31);
  for (int inst = 0; inst < 30; ++inst) {
    auto m = random_model(rng, 3 + static_cast<int>(rng() % 25),
                          10 + static_cast<int>(rng() % 80));
    for (Strategy s : kAllStrategies) {
      Placement lazy = greedy_place(m, s, 12);
      Placement naive = greedy_place_naive(m, s, 12);
      REQUIRE(lazy.steps.size() == naive.steps.size());
      for (size_t i = 0; i < lazy.steps.size(); ++i) {
        CHECK(lazy.steps[i].block == naive.steps[i].block);
        CHECK(lazy.steps[i].gain == naive.steps[i].gain);
      }
    }
  }
}

TEST_CASE("monotone and submodular on random instances") {
  std::mt19937_64 rng(47);
  for (int inst = 0; inst < 6; ++inst) {
    auto m = random_model(rng, 15, 50);
    const auto& r = m.placeable_blocks();
    if (r.size() < 3) continue;
    for (Strategy s : kAllStrategies) {
      for (int trial = 0; trial < 50; ++trial) {
        auto c2 = random_subset(rng, r, 0.4);
        auto c1 = random_subset(rng, c2, 0.5);
        const int64_t cand = r[rng() % r.size()];
        if (std::find(c2.begin(), c2.end(), cand) != c2.end()) continue;
        const double f1 = objective_value(m, s, c1);
        const double f2 = objective_value(m, s, c2);
        auto c1p = c1; c1p.push_back(cand);
        auto c2p = c2; c2p.push_back(cand);
        const double g1 = objective_value(m, s, c1p) - f1;
        const double g2 = objective_value(m, s, c2p) - f2;
        const double tol = 1e-9 * std::max(1.0, std::abs(f2));
        CHECK(f2 >= f1 - tol);        // monotone
        CHECK(g1 >= g2 - tol);        // diminishing returns
      }
    }
  }
}

TEST_CASE("exhaustive oracle: toy optimum and size guard") {
  Toy t = make_toy();
  Placement best1 = exhaustive_place(t.model, Strategy::S1, 1);
  REQUIRE(best1.steps.size() == 1);
  CHECK(best1.steps[0].block == t.b2);
  CHECK(best1.steps[0].cumulative == doctest::Approx(2.0));

  std::mt19937_64 rng(5);
  auto big = random_model(rng, 30, 90);
  if (big.placeable_blocks().size() > 20) {
    CHECK_THROWS_AS(exhaustive_place(big, Strategy::S1, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("greedy meets the (1 - 1/e) bound on small instances") {
  const double bound = 1.0 - std::exp(-1.0);
  std::mt19937_64 rng(59);
  for (int inst = 0; inst < 20; ++inst) {
    auto m = random_model(rng, 8, 11);  // keeps |R| <= 11
    const int budget = 1 + static_cast<int>(rng() % 4);
    for (Strategy s : kAllStrategies) {
      Placement greedy = greedy_place(m, s, budget);
      Placement best = exhaustive_place(m, s, budget);
      const double f_greedy = objective_value(m, s, greedy.blocks());
      const double f_best = objective_value(m, s, best.blocks());
      CHECK(f_greedy >= bound * f_best - 1e-9 * std::max(1.0, f_best));
    }
  }
}

TEST_CASE("vehicle weights steer the objectives") {
  Grid g = toy_grid();
  std::vector<BlockVisit> visits{{"A", {0, 0}, 0, 60}, {"B", {0, 5}, 0, 60}};
  auto m = CoverageModel::build(g, visits, 1000.0);
  const int64_t bA = g.linear_index({0, 0});
  const int64_t bB = g.linear_index({0, 5});

  // unweighted: tie, smallest index (bA) first
  CHECK(greedy_place(m, Strategy::S1, 1).steps[0].block == bA);

  auto heavy_b = m.with_weights({{"B", 3.0}});
  const int64_t cB[] = {bB};
  CHECK(objective_value(heavy_b, Strategy::S1, cB) == doctest::Approx(3.0));
  CHECK(greedy_place(heavy_b, Strategy::S1, 1).steps[0].block == bB);
  CHECK(greedy_place(heavy_b, Strategy::S2, 1).steps[0].block == bB);
  CHECK(greedy_place(heavy_b, Strategy::S3, 1).steps[0].block == bB);
}

}  // TEST_SUITE
