#pragma once

#include <vector>

#include "hextv/lattice.hpp"

namespace hextv::detail {

using Polygon = std::vector<Vec2>;

inline double shoelace_area(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    twice += cross(poly[k], poly[(k + 1) % n]);
  }
  return 0.5 * std::abs(twice);
}

// Keeps the part of a convex polygon where dot(x, normal) <= offset.
inline Polygon clip_half_plane(const Polygon& poly, Vec2 normal, double offset) {
  Polygon out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = poly[k];
    const Vec2 b = poly[(k + 1) % n];
    const double sa = dot(a, normal) - offset;
    const double sb = dot(b, normal) - offset;
    if (sa <= 0.0) out.push_back(a);
    if ((sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0)) {
      const double t = sa / (sa - sb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

inline Polygon rectangle(double width, double height) {
  return {{0.0, 0.0}, {width, 0.0}, {width, height}, {0.0, height}};
}

}  // namespace hextv::detail
