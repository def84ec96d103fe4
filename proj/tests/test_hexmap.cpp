#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "hextv/errors.hpp"
#include "hextv/hexmap.hpp"
#include "hextv/synth.hpp"

using namespace hextv;

namespace {

DiscreteImage square_image(int w, int h, int labels, const std::vector<Label>& values) {
  return DiscreteImage(square_raster_grid(w, h), labels, values);
}

DiscreteImage random_square(int w, int h, int labels, std::mt19937_64& rng) {
  std::uniform_int_distribution<Label> dist(0, labels - 1);
  std::vector<Label> v(static_cast<std::size_t>(w) * h);
  for (auto& x : v) x = dist(rng);
  return square_image(w, h, labels, v);
}

DiscreteImage round_trip(const DiscreteImage& img) {
  std::stringstream buf;
  write_image(img, buf);
  return read_image(buf);
}

}  // namespace

TEST_SUITE("hexmap") {

TEST_CASE("size 56 mask") {
  const auto mask = hyperpixel_mask(56);
  CHECK(mask.size() == 56);
  CHECK(mask.height() == 10);
  CHECK(mask.width() == 8);
  const auto rows = mask.rows();
  int total = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    total += rows[r].width;
    CHECK(rows[r].width == rows[rows.size() - 1 - r].width);
    CHECK(rows[r].offset == rows[rows.size() - 1 - r].offset);
    CHECK(2 * rows[r].offset + rows[r].width == 8);
    if (r > 0 && r < rows.size() / 2) CHECK(rows[r].width >= rows[r - 1].width);
  }
  CHECK(total == 56);
  CHECK(std::abs(mask.size() - 7.5 * 7.5) < 1.0);
  CHECK_THROWS_AS(hyperpixel_mask(64), std::invalid_argument);
}

TEST_CASE("brick placement partitions the plane") {
  const auto mask = hyperpixel_mask(56);
  const int W = 160, H = 140;
  std::vector<int> cover(W * H, 0);
  const int pitch_x = mask.column_pitch();
  const int pitch_y = mask.row_pitch();
  for (int j = -3; j * pitch_y < H + 10; ++j) {
    for (int i = -3; i * pitch_x < W + 10; ++i) {
      const int x0 = i * pitch_x + ((j % 2 + 2) % 2) * pitch_x / 2;
      const int y0 = j * pitch_y;
      for (int r = 0; r < mask.height(); ++r) {
        const auto row = mask.rows()[r];
        for (int x = x0 + row.offset; x < x0 + row.offset + row.width; ++x) {
          const int y = y0 + r;
          if (x >= 0 && x < W && y >= 0 && y < H) ++cover[y * W + x];
        }
      }
    }
  }
  CHECK(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
}

TEST_CASE("full-size resampling shape") {
  std::vector<Label> ramp(256 * 256);
  for (std::size_t k = 0; k < ramp.size(); ++k) ramp[k] = static_cast<Label>(k % 256);
  const auto hex = square_to_hex(square_image(256, 256, 256, ramp), 7.5, hyperpixel_mask(56));
  CHECK(hex.grid().kind() == LatticeKind::Hex);
  CHECK(std::abs(double(hex.size()) / 65536.0 - 1.0) < 0.005);
  // Rows run along x, so the long side of 274 x 240 is the row count.
  CHECK(hex.grid().rows().size() == 274);
  CHECK(hex.grid().rows().front().count() == 240);
}

TEST_CASE("resampling preserves constants and value sets") {
  const auto mask = hyperpixel_mask(56);
  const auto flat = square_image(20, 18, 256, std::vector<Label>(360, 77));
  const auto hex = square_to_hex(flat, 7.5, mask);
  for (Label v : hex.values()) CHECK(v == 77);

  const Raster r = render_hex(hex, mask, 0);
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    if (r.owner[k] >= 0) CHECK(r.values[k] == 77);
  }

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Label> binary(400);
  for (auto& v : binary) v = coin(rng) ? 255 : 0;
  const auto binary_hex = square_to_hex(square_image(20, 20, 256, binary), 7.5, mask);
  for (Label v : binary_hex.values()) {
    CHECK((v == 0 || v == 255));
  }

  const auto noise = random_square(24, 21, 256, rng);
  const auto [lo, hi] = std::minmax_element(noise.values().begin(), noise.values().end());
  for (double c : {2.0, 7.5, 9.25}) {
    const auto resampled = square_to_hex(noise, c, mask);
    for (Label v : resampled.values()) {
      CHECK(v >= *lo);
      CHECK(v <= *hi);
    }
  }

  CHECK_THROWS_AS(square_to_hex(flat, 1.0, mask), std::invalid_argument);
  CHECK_THROWS_AS(square_to_hex(square_image(2, 2, 4, {0, 1, 2, 3}), 1.5, mask), std::invalid_argument);
}

TEST_CASE("rendering is a partition") {
  const auto mask = hyperpixel_mask(56);
  std::mt19937_64 rng(12);
  const auto hex = square_to_hex(random_square(30, 26, 256, rng), 7.5, mask);
  const Raster r = render_hex(hex, mask, 0);
  std::vector<int> footprint(hex.size(), 0);
  for (std::size_t k = 0; k < r.owner.size(); ++k) {
    if (r.owner[k] < 0) continue;
    ++footprint[r.owner[k]];
    CHECK(r.values[k] == hex[r.owner[k]]);
  }
  // Every site keeps its full footprint, so no two footprints overlap.
  CHECK(std::all_of(footprint.begin(), footprint.end(), [](int c) { return c == 56; }));

  const auto grid = build_grid({LatticeKind::Hex, 1.0, 1.0, 0.5});
  REQUIRE(grid->size() == 2);
  const DiscreteImage pair(grid, 256, {0, 255});
  const Raster two = render_hex(pair, mask, 9);
  std::set<Label> seen;
  for (std::size_t k = 0; k < two.values.size(); ++k) {
    if (two.owner[k] >= 0) seen.insert(two.values[k]);
  }
  CHECK(seen == std::set<Label>{0, 255});
  CHECK(std::count(two.owner.begin(), two.owner.end(), 0) == 56);
  CHECK(std::count(two.owner.begin(), two.owner.end(), 1) == 56);

  CHECK_THROWS_AS(render_hex(square_image(2, 2, 4, {0, 1, 2, 3}), mask), std::invalid_argument);
}

TEST_CASE("hex to square") {
  const auto mask = hyperpixel_mask(56);
  const auto flat = square_image(32, 32, 256, std::vector<Label>(1024, 200));
  const auto hex = square_to_hex(flat, 7.5, mask);
  const auto back = hex_to_square(hex, 7.5, mask);
  CHECK(back.grid().kind() == LatticeKind::Square);
  CHECK(std::abs(back.grid().rows().front().count() - 32) <= 1);
  CHECK(std::abs(static_cast<int>(back.grid().rows().size()) - 32) <= 1);
  int interior_mismatch = 0;
  for (Label v : back.values()) interior_mismatch += (v != 200 && v != 0);
  CHECK(interior_mismatch == 0);
}

TEST_CASE("file round trips") {
  std::mt19937_64 rng(21);
  const auto sq = random_square(13, 7, 256, rng);
  CHECK(round_trip(sq) == sq);
  const auto wide = random_square(5, 9, 1000, rng);
  CHECK(round_trip(wide) == wide);

  const auto hex_grid = build_grid({LatticeKind::Hex, match_density(1.0, LatticeKind::Square, LatticeKind::Hex),
                                    12.3, 9.7});
  for (int labels : {2, 256, 4096, 65536}) {
    std::uniform_int_distribution<Label> dist(0, labels - 1);
    std::vector<Label> v(hex_grid->size());
    for (auto& x : v) x = dist(rng);
    const DiscreteImage hex(hex_grid, labels, v);
    const auto back = round_trip(hex);
    CHECK(back == hex);
    CHECK(back.grid().spec().d == doctest::Approx(hex_grid->spec().d).epsilon(1e-12));
    CHECK(back.grid().spec().width == doctest::Approx(12.3).epsilon(1e-12));
  }

  const auto scaled = build_grid({LatticeKind::Square, 0.5, 3.0, 2.0});
  const DiscreteImage s(scaled, 16, std::vector<Label>(scaled->size(), 3));
  CHECK(round_trip(s) == s);
}

TEST_CASE("plain PGM input") {
  std::string data = "P5\n# made elsewhere\n2 2\n3\n";
  data += std::string{0, 1, 2, 3};
  std::istringstream in(data);
  const auto img = read_image(in);
  CHECK(img.size() == 4);
  CHECK(img.labels() == 4);
  CHECK(img[0] == 0);
  CHECK(img[3] == 3);
  CHECK(img.grid().spec().d == 1.0);

  std::istringstream bad_value(std::string("P5 2 2 2\n") + std::string{0, 1, 2, 3});
  CHECK_THROWS_AS(read_image(bad_value), IoError);
  std::istringstream truncated(std::string("P5 2 2 3\n") + std::string{0, 1});
  CHECK_THROWS_AS(read_image(truncated), IoError);
  std::istringstream tiny(std::string("P5 1 1 3\n") + std::string{0});
  CHECK_THROWS_AS(read_image(tiny), IoError);
  std::istringstream junk("P6 2 2 3\n");
  CHECK_THROWS_AS(read_image(junk), IoError);
  std::istringstream header("P5 x 2 3\n");
  CHECK_THROWS_AS(read_image(header), IoError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_image(empty), IoError);
}

TEST_CASE("malformed HEXPGM") {
  const auto grid = build_grid({LatticeKind::Hex, 1.0, 2.0, 2.0});
  const DiscreteImage img(grid, 4, std::vector<Label>(grid->size(), 1));
  std::stringstream buf;
  write_image(img, buf);
  const std::string good = buf.str();
  CHECK(good.rfind("HEXPGM 1\n", 0) == 0);

  std::string high = good;
  high.back() = 9;
  std::istringstream a(high);
  CHECK_THROWS_AS(read_image(a), IoError);

  std::istringstream b(good.substr(0, good.size() - 2));
  CHECK_THROWS_AS(read_image(b), IoError);

  std::string version = good;
  version.replace(7, 1, "2");
  std::istringstream c(version);
  CHECK_THROWS_AS(read_image(c), IoError);

  std::string rows = good;
  const auto pos = rows.find("\n0 2\n");
  REQUIRE(pos != std::string::npos);
  rows.replace(pos, 5, "\n0 3\n");
  std::istringstream d(rows);
  CHECK_THROWS_AS(read_image(d), IoError);

  CHECK_THROWS_AS(read_image(std::string("/nonexistent/file.pgm")), IoError);
}

}  // TEST_SUITE
