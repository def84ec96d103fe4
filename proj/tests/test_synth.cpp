#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "hextv/synth.hpp"

using namespace hextv;

namespace {

DiscreteImage constant(const GridPtr& g, int labels, Label v) {
  return DiscreteImage(g, labels, std::vector<Label>(g->size(), v));
}

bool near_off_axis_ellipses(double x, double y) {
  auto within = [&](double cx, double cy, double r) { return std::hypot(x - cx, y - cy) < r; };
  return within(0.22, 0.0, 0.45) || within(-0.22, 0.0, 0.45) || within(0.08, -0.605, 0.06) ||
         within(-0.08, -0.605, 0.06);
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("radial cosine") {
  const auto g = build_grid({LatticeKind::Square, 1.0, 63.0, 63.0});
  const auto img = radial_cosine(g, 256);
  CHECK(img[*g->find({0, 0})] == 255);
  for (Label v : img.values()) {
    CHECK(v >= 0);
    CHECK(v <= 255);
  }
  CHECK(radial_cosine_value(0, 0) == 1.0);
  CHECK(radial_cosine_value(30, 0) == doctest::Approx(std::cos(2.0)));

  const auto sq54 = build_grid({LatticeKind::Square, 1.0, 53.0, 53.0});
  const auto hex54 = build_grid({LatticeKind::Hex, match_density(1.0, LatticeKind::Square, LatticeKind::Hex),
                                 53.0, 53.0});
  CHECK(sq54->size() == 54 * 54);
  CHECK(std::abs(double(hex54->size()) - 54.0 * 54.0) < 0.05 * 54 * 54);
}

TEST_CASE("shepp logan") {
  const auto g = build_grid({LatticeKind::Square, 1.0, 63.0, 63.0});
  const auto img = shepp_logan(g, 256);
  CHECK(img[*g->find({0, 0})] == 0);
  CHECK(img[*g->find({63, 63})] == 0);
  CHECK(shepp_logan_value(0.99, 0.99) == 0.0);
  const double centre = shepp_logan_value(0.0, 0.0);
  CHECK(centre > 0.0);
  CHECK(centre < 1.0);

  const auto odd = build_grid({LatticeKind::Square, 1.0, 64.0, 64.0});
  const auto mid = shepp_logan(odd, 256)[*odd->find({32, 32})];
  CHECK(mid > 0);
  CHECK(mid < 255);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int compared = 0;
  for (int k = 0; k < 20000; ++k) {
    const double x = u(rng);
    const double y = u(rng);
    if (near_off_axis_ellipses(x, y)) continue;
    CHECK(shepp_logan_value(x, y) == shepp_logan_value(-x, y));
    ++compared;
  }
  CHECK(compared > 10000);
  // The ventricles differ in size, so the full phantom is not mirror symmetric.
  CHECK(shepp_logan_value(-0.0964, 0.0402) != shepp_logan_value(0.0964, 0.0402));
}

TEST_CASE("same point, same value across lattices") {
  const auto sq = build_grid({LatticeKind::Square, 1.0, 40.0, 40.0});
  const auto hx = build_grid({LatticeKind::Hex, 1.0, 40.0, 40.0});
  const auto a = radial_cosine(sq, 256);
  const auto b = radial_cosine(hx, 256);
  const auto c = shepp_logan(sq, 256);
  const auto d = shepp_logan(hx, 256);
  for (int i = 0; i <= 40; ++i) {
    const auto p = *sq->find({i, 0});
    const auto q = *hx->find({i, 0});
    CHECK(a[p] == b[q]);
    CHECK(c[p] == d[q]);
  }
}

TEST_CASE("salt and pepper") {
  const auto g = build_grid({LatticeKind::Square, 1.0, 99.0, 99.0});
  REQUIRE(g->size() == 10000);
  const auto clean = constant(g, 256, 100);
  CHECK(add_salt_pepper(clean, 0.0, 1) == clean);
  const auto saturated = add_salt_pepper(clean, 1.0, 1);
  for (Label v : saturated.values()) CHECK((v == 0 || v == 255));
  CHECK(add_salt_pepper(clean, 0.6, 42) == add_salt_pepper(clean, 0.6, 42));
  CHECK_FALSE(add_salt_pepper(clean, 0.6, 42) == add_salt_pepper(clean, 0.6, 43));

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto noisy = add_salt_pepper(clean, 0.6, seed);
    int hits = 0, low = 0;
    for (Label v : noisy.values()) {
      hits += v != 100;
      low += v == 0;
    }
    const double band = 4.0 * std::sqrt(1e4 * 0.6 * 0.4);
    CHECK(std::abs(hits - 6000) <= band);
    CHECK(std::abs(low - 3000) <= 4.0 * std::sqrt(1e4 * 0.3 * 0.7));
  }
  CHECK_THROWS_AS(add_salt_pepper(clean, 1.5, 1), std::invalid_argument);
}

TEST_CASE("gaussian") {
  const auto g = build_grid({LatticeKind::Square, 1.0, 399.0, 249.0});
  REQUIRE(g->size() == 100000);
  const auto clean = constant(g, 256, 128);
  CHECK(add_gaussian(clean, 0.0, 3) == clean);
  const double sigma = 10.0;
  const auto noisy = add_gaussian(clean, sigma, 3);
  CHECK(noisy == add_gaussian(clean, sigma, 3));
  double sum = 0.0, sq = 0.0;
  for (std::size_t p = 0; p < noisy.size(); ++p) {
    const double diff = noisy[p] - clean[p];
    sum += diff;
    sq += diff * diff;
  }
  const double n = static_cast<double>(noisy.size());
  CHECK(std::abs(sum / n) <= 3 * sigma / std::sqrt(n));
  // Rounding adds 1/12 to the variance.
  CHECK(std::sqrt(sq / n) == doctest::Approx(std::sqrt(sigma * sigma + 1.0 / 12.0)).epsilon(0.02));
  CHECK_THROWS_AS(add_gaussian(clean, -1.0, 3), std::invalid_argument);

  const auto spec = parse_noise("gauss:0.1", 5);
  const auto viaspec = add_noise(clean, spec);
  CHECK(viaspec == add_gaussian(clean, 0.1 * 255, 5));
}

TEST_CASE("noise spec parsing") {
  const auto sp = parse_noise("sp:0.6", 9);
  CHECK(sp.model == NoiseSpec::Model::SaltPepper);
  CHECK(sp.amount == 0.6);
  CHECK(sp.seed == 9);
  CHECK(to_string(sp) == "sp:0.6");
  CHECK(parse_noise("gauss:0.1").model == NoiseSpec::Model::Gaussian);
  CHECK_THROWS_AS(parse_noise("sp"), std::invalid_argument);
  CHECK_THROWS_AS(parse_noise("sp:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_noise("sp:0.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_noise("poisson:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_noise("gauss:-1"), std::invalid_argument);
}

}  // TEST_SUITE
