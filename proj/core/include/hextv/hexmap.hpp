#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hextv/image.hpp"

namespace hextv {

struct HyperpixelRow {
  int offset = 0;
  int width = 0;
};

/// An approximately hexagonal group of raster cells. Copies tile the plane
/// when placed every column_pitch() cells horizontally and row_pitch() rows
/// vertically, alternate rows shifted by half a column pitch.
class HyperpixelMask {
 public:
  explicit HyperpixelMask(std::vector<HyperpixelRow> rows);

  std::span<const HyperpixelRow> rows() const { return rows_; }
  int size() const { return size_; }
  int width() const { return width_; }
  int height() const { return static_cast<int>(rows_.size()); }
  int column_pitch() const { return width_; }
  int row_pitch() const { return row_pitch_; }

 private:
  std::vector<HyperpixelRow> rows_;
  int size_ = 0;
  int width_ = 0;
  int row_pitch_ = 0;
};

/// Only size 56 is built in: row widths 2,4,6,8,8,8,8,6,4,2.
HyperpixelMask hyperpixel_mask(int size = 56);

/// Rectangular raster; `owner` holds the hex site painted into each cell or -1.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<Label> values;
  std::vector<std::int32_t> owner;

  Label at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Top-left raster cell of the hyperpixel of hex site (i, j), before the
/// layout shift that makes all x non-negative.
inline int hyperpixel_x(const HyperpixelMask& mask, LatticeIndex idx) {
  return mask.column_pitch() * idx.i + (mask.column_pitch() / 2) * idx.j;
}
inline int hyperpixel_y(const HyperpixelMask& mask, LatticeIndex idx) {
  return mask.row_pitch() * idx.j;
}

/// Enlarges a square image by c (each source pixel becomes a c x c block,
/// supersampled 2x so that non-integer c is exact), tiles the enlargement with
/// brick-offset hyperpixels and gives each hex site the lower median of the
/// cells its hyperpixel covers. The hex spacing matches one site per
/// hyperpixel area.
DiscreteImage square_to_hex(const DiscreteImage& square, double c, const HyperpixelMask& mask);

/// Paints every hex site's label into its hyperpixel footprint.
Raster render_hex(const DiscreteImage& hex, const HyperpixelMask& mask, Label background = 0);

/// Reverse of square_to_hex: render, then take the lower median over each
/// c x c block.
DiscreteImage hex_to_square(const DiscreteImage& hex, double c, const HyperpixelMask& mask);

/// Square unit-spacing image of a raster: grid [0, w-1] x [0, h-1].
DiscreteImage raster_to_image(const Raster& raster, int labels);

/// Square grid of a w x h raster image (at least 2 x 2).
GridPtr square_raster_grid(int width, int height);

/// Square images are binary PGM (P5, maxval L-1); hex images use HEXPGM.
void write_image(const DiscreteImage& img, std::ostream& out);
void write_image(const DiscreteImage& img, const std::string& path);
DiscreteImage read_image(std::istream& in);
DiscreteImage read_image(const std::string& path);

}  // namespace hextv
