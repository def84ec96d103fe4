#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "hextv/crofton.hpp"
#include "hextv/image.hpp"
#include "hextv/solver.hpp"
#include "oracles.hpp"

using namespace hextv;

namespace {

constexpr double kPi = std::numbers::pi;

GridPtr square3() { return build_grid({LatticeKind::Square, 1.0, 2.0, 2.0}); }

DiscreteImage random_image(const GridPtr& g, int labels, std::mt19937_64& rng) {
  std::uniform_int_distribution<Label> dist(0, labels - 1);
  std::vector<Label> v(g->size());
  for (auto& x : v) x = dist(rng);
  return DiscreteImage(g, labels, std::move(v));
}

// Forward-difference gradient magnitude on a row-major w x h array.
double gradient_oracle(const std::vector<int>& u, int w, int h) {
  double s = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int c = u[y * w + x];
      const int dx = x + 1 < w ? u[y * w + x + 1] - c : 0;
      const int dy = y + 1 < h ? u[(y + 1) * w + x] - c : 0;
      s += std::sqrt(double(dx * dx + dy * dy));
    }
  }
  return s;
}

}  // namespace

TEST_SUITE("image") {

TEST_CASE("image validation") {
  const auto g = square3();
  CHECK_THROWS_AS(DiscreteImage(g, 1, std::vector<Label>(9, 0)), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteImage(g, 4, std::vector<Label>(8, 0)), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteImage(g, 4, std::vector<Label>(9, 4)), std::out_of_range);
  CHECK_THROWS_AS(DiscreteImage(nullptr, 4, {}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryImage(g, std::vector<std::uint8_t>(9, 2)), std::out_of_range);
  CHECK_THROWS_AS(validate(EnergyParams{-1.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(EnergyParams{1.0, 3}), std::invalid_argument);
  CHECK_NOTHROW(validate(EnergyParams{0.0, 2}));
}

TEST_CASE("quantize") {
  const auto g = build_grid({LatticeKind::Square, 1.0, 2.0, 0.5});
  REQUIRE(g->size() == 3);
  const std::vector<double> samples{127.5, -3.0, 300.0};
  const auto q = quantize(g, samples, 256);
  CHECK(q[0] == 128);
  CHECK(q[1] == 0);
  CHECK(q[2] == 255);
  const std::vector<double> bad{1.0, NAN, 2.0};
  CHECK_THROWS_AS(quantize(g, bad, 256), std::invalid_argument);
  const std::vector<double> inf{1.0, INFINITY, 2.0};
  CHECK_THROWS_AS(quantize(g, inf, 256), std::invalid_argument);
}

TEST_CASE("levels and reconstruction") {
  const auto g = build_grid({LatticeKind::Square, 1.0, 2.0, 0.5});
  const DiscreteImage u(g, 4, {2, 0, 3});
  const auto fam = level_family(u);
  REQUIRE(fam.size() == 3);
  CHECK((fam[0][0] == 1 && fam[1][0] == 1 && fam[2][0] == 0));
  CHECK((fam[0][1] == 0 && fam[1][1] == 0 && fam[2][1] == 0));
  CHECK((fam[0][2] == 1 && fam[1][2] == 1 && fam[2][2] == 1));
  CHECK(reconstruct(fam) == u);
  CHECK_THROWS_AS(level(u, -1), std::out_of_range);
  CHECK_THROWS_AS(level(u, 3), std::out_of_range);

  std::vector<BinaryImage> broken{BinaryImage(g, {0, 0, 0}), BinaryImage(g, {1, 0, 0})};
  CHECK_THROWS_AS(reconstruct(broken), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct(std::vector<BinaryImage>{}), std::invalid_argument);

  std::mt19937_64 rng(3);
  const auto big = build_grid({LatticeKind::Hex, 1.0, 9.0, 7.0});
  for (int t = 0; t < 20; ++t) {
    const auto img = random_image(big, 17, rng);
    CHECK(reconstruct(level_family(img)) == img);
  }
}

TEST_CASE("discrete tv examples") {
  const auto g = square3();
  const auto edges = solver_edges(g, 4);
  std::vector<Label> v(9, 0);
  CHECK(discrete_tv(DiscreteImage(g, 4, v), edges) == 0.0);
  v[4] = 1;
  CHECK(discrete_tv(DiscreteImage(g, 4, v), edges) == doctest::Approx(kPi).epsilon(1e-12));
  v[4] = 3;
  CHECK(discrete_tv(DiscreteImage(g, 4, v), edges) == doctest::Approx(3 * kPi).epsilon(1e-12));

  const auto other = build_grid({LatticeKind::Square, 1.0, 3.0, 2.0});
  CHECK_THROWS_AS(discrete_tv(DiscreteImage(other, 4, std::vector<Label>(other->size(), 0)), edges),
                  std::invalid_argument);
}

TEST_CASE("coarea identity and shift invariance") {
  std::mt19937_64 rng(11);
  for (auto [kind, nu] : {std::pair{LatticeKind::Square, 4}, {LatticeKind::Square, 8},
                          {LatticeKind::Square, 16}, {LatticeKind::Hex, 6}, {LatticeKind::Hex, 12}}) {
    const auto g = build_grid({kind, 1.0, 15.0, 15.0});
    const auto edges = solver_edges(g, nu);
    for (int t = 0; t < 5; ++t) {
      const auto u = random_image(g, 256, rng);
      double sum = 0.0;
      for (const auto& chi : level_family(u)) sum += discrete_tv(chi, edges);
      CHECK(oracle::near(discrete_tv(u, edges), sum, 1e-9));

      std::vector<Label> shifted(u.values().begin(), u.values().end());
      for (auto& x : shifted) x = x / 2 + 7;
      std::vector<Label> base(u.values().begin(), u.values().end());
      for (auto& x : base) x = x / 2;
      CHECK(discrete_tv(DiscreteImage(g, 256, shifted), edges) ==
            discrete_tv(DiscreteImage(g, 256, base), edges));
    }
  }
}

TEST_CASE("pairwise term is submodular") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> wdist(0.01, 10.0);
  for (int L = 2; L <= 8; ++L) {
    const double w = wdist(rng);
    auto g = [&](int a, int b) { return w * std::abs(a - b); };
    for (int x1 = 0; x1 < L; ++x1)
      for (int x2 = 0; x2 < L; ++x2)
        for (int y1 = 0; y1 < L; ++y1)
          for (int y2 = 0; y2 < L; ++y2) {
            const double lhs = g(std::max(x1, y1), std::max(x2, y2)) + g(std::min(x1, y1), std::min(x2, y2));
            CHECK(lhs <= g(x1, x2) + g(y1, y2) + 1e-12);
          }
  }
}

TEST_CASE("fidelity and energy") {
  const auto single = build_grid({LatticeKind::Square, 2.0, 1.0, 1.0});
  REQUIRE(single->size() == 1);
  REQUIRE(single->voronoi_area(0) == doctest::Approx(1.0));
  const auto edges = solver_edges(single, 4);
  const DiscreteImage u(single, 8, {3});
  const DiscreteImage f(single, 8, {5});
  CHECK(energy(u, f, {2.0, 1}, edges) == doctest::Approx(4.0));
  CHECK(energy(u, f, {2.0, 2}, edges) == doctest::Approx(8.0));

  std::mt19937_64 rng(2);
  const auto g = build_grid({LatticeKind::Hex, 0.9, 6.0, 5.0});
  const auto e6 = solver_edges(g, 6);
  const auto img = random_image(g, 32, rng);
  CHECK(energy(img, img, {3.0, 1}, e6) == discrete_tv(img, e6));
  CHECK(fidelity(img, img, 2) == 0.0);
}

TEST_CASE("omega over cell side") {
  for (double d : {0.5, 1.0, 2.0}) {
    CHECK(crofton_weights(LatticeKind::Square, 4, d)[0] / d == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(crofton_weights(LatticeKind::Hex, 6, d)[0] / (d / std::sqrt(3.0)) ==
          doctest::Approx(kPi / 4).epsilon(1e-12));
  }
}

TEST_CASE("gradient discretisation breaks coarea") {
  const auto g = build_grid({LatticeKind::Square, 1.0, 1.0, 1.0});
  const std::vector<int> raw{0, 1, 2, 0};
  const DiscreteImage u(g, 3, {0, 1, 2, 0});
  CHECK(gradient_tv_counterexample(u) == doctest::Approx(gradient_oracle(raw, 2, 2)).epsilon(1e-12));
  CHECK(gradient_tv_counterexample(u) == doctest::Approx(std::sqrt(5.0) + 3.0).epsilon(1e-12));

  double levels = 0.0;
  for (int l = 0; l <= 1; ++l) {
    std::vector<int> chi;
    for (int x : raw) chi.push_back(x > l ? 1 : 0);
    levels += gradient_oracle(chi, 2, 2);
  }
  CHECK(levels == doctest::Approx(std::sqrt(2.0) + 4.0).epsilon(1e-12));
  CHECK(std::abs(gradient_tv_counterexample(u) - levels) > 0.1);

  CHECK(gradient_tv_counterexample(DiscreteImage(g, 3, {1, 1, 1, 1})) == 0.0);

  std::mt19937_64 rng(9);
  const auto big = build_grid({LatticeKind::Square, 1.0, 5.0, 4.0});
  for (int t = 0; t < 5; ++t) {
    const auto b = random_image(big, 2, rng);
    std::vector<Label> bits(b.values().begin(), b.values().end());
    std::vector<int> as_int(bits.begin(), bits.end());
    CHECK(gradient_tv_counterexample(b) == doctest::Approx(gradient_oracle(as_int, 6, 5)).epsilon(1e-12));
  }

  const auto hex = build_grid({LatticeKind::Hex, 1.0, 2.0, 2.0});
  CHECK_THROWS_AS(gradient_tv_counterexample(DiscreteImage(hex, 2, std::vector<Label>(hex->size(), 0))),
                  std::invalid_argument);
}

TEST_CASE("pairwise summation") {
  std::vector<double> terms(1 << 16, 0.1);
  CHECK(pairwise_sum(terms) == doctest::Approx(6553.6).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

}  // TEST_SUITE
