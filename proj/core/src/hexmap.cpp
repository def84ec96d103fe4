#include "hextv/hexmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hextv {

namespace {

// Supersampling factor per raster axis.
constexpr int kSuper = 2;

Label lower_median(std::vector<Label>& values) {
  const std::size_t k = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

struct SquareLayout {
  int width = 0;
  int height = 0;
};

SquareLayout square_layout(const DiscreteImage& img) {
  const Grid& grid = img.grid();
  if (grid.kind() != LatticeKind::Square) throw std::invalid_argument("expected a square-lattice image");
  const auto rows = grid.rows();
  for (const RowRange& r : rows) {
    if (r.imin != rows.front().imin || r.imax != rows.front().imax) {
      throw std::invalid_argument("square image rows must have equal extent");
    }
  }
  return {rows.front().count(), static_cast<int>(rows.size())};
}

// Source pixel hit by supersample s of an enlargement by c.
int source_of(int s, double c) {
  return static_cast<int>(std::floor((s + 0.5) / (kSuper * c)));
}

}  // namespace

HyperpixelMask::HyperpixelMask(std::vector<HyperpixelRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("HyperpixelMask: no rows");
  int taper = 0;
  for (const HyperpixelRow& r : rows_) {
    size_ += r.width;
    width_ = std::max(width_, r.offset + r.width);
  }
  for (auto it = rows_.rbegin(); it != rows_.rend() && it->width < width_; ++it) ++taper;
  row_pitch_ = height() - taper;
}

HyperpixelMask hyperpixel_mask(int size) {
  if (size != 56) throw std::invalid_argument("hyperpixel_mask: only size 56 is supported");
  std::vector<HyperpixelRow> rows;
  for (int w : {2, 4, 6, 8, 8, 8, 8, 6, 4, 2}) rows.push_back({(8 - w) / 2, w});
  return HyperpixelMask(std::move(rows));
}

GridPtr square_raster_grid(int width, int height) {
  if (width < 2 || height < 2) throw std::invalid_argument("raster images must be at least 2x2");
  return build_grid({LatticeKind::Square, 1.0, static_cast<double>(width - 1),
                     static_cast<double>(height - 1)});
}

DiscreteImage raster_to_image(const Raster& raster, int labels) {
  auto grid = square_raster_grid(raster.width, raster.height);
  return DiscreteImage(grid, labels, raster.values);
}

DiscreteImage square_to_hex(const DiscreteImage& square, double c, const HyperpixelMask& mask) {
  if (!(c > 1.0) || !std::isfinite(c)) throw std::invalid_argument("square_to_hex: scale must exceed 1");
  const SquareLayout src = square_layout(square);
  const int raster_w = static_cast<int>(std::floor(c * src.width + 1e-9));
  const int raster_h = static_cast<int>(std::floor(c * src.height + 1e-9));
  if (raster_w < mask.width() || raster_h < mask.height()) {
    throw std::invalid_argument("square_to_hex: image too small for one hyperpixel");
  }
  const int ncols = raster_w / mask.column_pitch();
  const int nrows = (raster_h - mask.height() / 2) / mask.row_pitch() + 1;

  // One hex site per hyperpixel area; the domain is chosen so that every row
  // holds exactly ncols sites.
  const double d = std::sqrt(2.0 * mask.size() / std::numbers::sqrt3) / c;
  const GridSpec spec{LatticeKind::Hex, d, d * (ncols - 0.25),
                      d * std::numbers::sqrt3 / 2.0 * (nrows - 0.5)};
  GridPtr hex = build_grid(spec);
  if (static_cast<int>(hex->rows().size()) != nrows) throw std::logic_error("square_to_hex: row count");
  for (const RowRange& r : hex->rows()) {
    if (r.count() != ncols) throw std::logic_error("square_to_hex: column count");
  }

  const auto src_values = square.values();
  std::vector<Label> out(hex->size());
  std::vector<Label> bag;
  bag.reserve(static_cast<std::size_t>(mask.size() * kSuper * kSuper));
  for (std::size_t p = 0; p < hex->size(); ++p) {
    const LatticeIndex idx = hex->site(p).index;
    const int x0 = hyperpixel_x(mask, idx);
    const int y0 = hyperpixel_y(mask, idx);
    bag.clear();
    for (int r = 0; r < mask.height(); ++r) {
      const int y = y0 + r;
      if (y < 0 || y >= raster_h) continue;
      const HyperpixelRow& row = mask.rows()[static_cast<std::size_t>(r)];
      for (int x = x0 + row.offset; x < x0 + row.offset + row.width; ++x) {
        if (x < 0 || x >= raster_w) continue;
        for (int b = 0; b < kSuper; ++b) {
          const int sy = source_of(kSuper * y + b, c);
          for (int a = 0; a < kSuper; ++a) {
            const int sx = source_of(kSuper * x + a, c);
            bag.push_back(src_values[static_cast<std::size_t>(sy) * src.width + sx]);
          }
        }
      }
    }
    if (bag.empty()) throw std::logic_error("square_to_hex: empty hyperpixel");
    out[p] = lower_median(bag);
  }
  return DiscreteImage(hex, square.labels(), std::move(out));
}

Raster render_hex(const DiscreteImage& hex, const HyperpixelMask& mask, Label background) {
  const Grid& grid = hex.grid();
  if (grid.kind() != LatticeKind::Hex) throw std::invalid_argument("render_hex: hex image required");
  int xmin = std::numeric_limits<int>::max();
  int xmax = std::numeric_limits<int>::min();
  int ymax = 0;
  for (const Site& s : grid.sites()) {
    xmin = std::min(xmin, hyperpixel_x(mask, s.index));
    xmax = std::max(xmax, hyperpixel_x(mask, s.index));
    ymax = std::max(ymax, hyperpixel_y(mask, s.index));
  }
  Raster raster;
  raster.width = xmax - xmin + mask.width();
  raster.height = ymax + mask.height();
  const auto cells = static_cast<std::size_t>(raster.width) * raster.height;
  raster.values.assign(cells, background);
  raster.owner.assign(cells, -1);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const LatticeIndex idx = grid.site(p).index;
    const int x0 = hyperpixel_x(mask, idx) - xmin;
    const int y0 = hyperpixel_y(mask, idx);
    for (int r = 0; r < mask.height(); ++r) {
      const HyperpixelRow& row = mask.rows()[static_cast<std::size_t>(r)];
      for (int x = x0 + row.offset; x < x0 + row.offset + row.width; ++x) {
        const auto cell = static_cast<std::size_t>(y0 + r) * raster.width + x;
        raster.values[cell] = hex[p];
        raster.owner[cell] = static_cast<std::int32_t>(p);
      }
    }
  }
  return raster;
}

DiscreteImage hex_to_square(const DiscreteImage& hex, double c, const HyperpixelMask& mask) {
  if (!(c > 1.0) || !std::isfinite(c)) throw std::invalid_argument("hex_to_square: scale must exceed 1");
  const Raster raster = render_hex(hex, mask);
  const int w = static_cast<int>(std::floor(raster.width / c + 1e-9));
  const int h = static_cast<int>(std::floor(raster.height / c + 1e-9));
  GridPtr grid = square_raster_grid(w, h);

  std::vector<std::vector<Label>> bags(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < raster.height; ++y) {
    for (int x = 0; x < raster.width; ++x) {
      const auto cell = static_cast<std::size_t>(y) * raster.width + x;
      if (raster.owner[cell] < 0) continue;
      for (int b = 0; b < kSuper; ++b) {
        const int ty = source_of(kSuper * y + b, c);
        if (ty >= h) continue;
        for (int a = 0; a < kSuper; ++a) {
          const int tx = source_of(kSuper * x + a, c);
          if (tx >= w) continue;
          bags[static_cast<std::size_t>(ty) * w + tx].push_back(raster.values[cell]);
        }
      }
    }
  }
  std::vector<Label> values(bags.size(), 0);
  for (std::size_t k = 0; k < bags.size(); ++k) {
    if (!bags[k].empty()) values[k] = lower_median(bags[k]);
  }
  return DiscreteImage(grid, hex.labels(), std::move(values));
}

}  // namespace hextv
