#pragma once

#include <span>
#include <vector>

#include "hextv/lattice.hpp"

namespace hextv {

/// Parallel lines {rho = j * spacing : j in Z} at angle `angle` to the x-axis.
/// `angular_share` is the slice of [0, pi) the family stands for.
struct LineFamily {
  double angle = 0.0;
  double spacing = 0.0;
  double angular_share = 0.0;
};

/// Line families induced by a grid graph, sorted by angle starting at 0.
std::vector<LineFamily> line_families(LatticeKind kind, int size, double d);

/// Per-direction edge weights spacing * share / 2, in neighbourhood_vectors order.
std::vector<double> crofton_weights(LatticeKind kind, int size, double d);

struct Polyline {
  std::vector<Vec2> points;
  bool closed = false;
};

/// Cauchy-Crofton length estimate: sum over families of (number of lines
/// crossed by the curve) * spacing * share / 2. Validation oracle only.
double estimate_length(const Polyline& curve, std::span<const LineFamily> families);

}  // namespace hextv
