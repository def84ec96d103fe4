#include "hextv/crofton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace hextv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;

void fill_shares(std::vector<LineFamily>& families) {
  for (std::size_t k = 0; k < families.size(); ++k) {
    const double next = k + 1 < families.size() ? families[k + 1].angle : kPi;
    families[k].angular_share = next - families[k].angle;
  }
}

double normalised_angle(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

}  // namespace

std::vector<LineFamily> line_families(LatticeKind kind, int size, double d) {
  if (!is_supported_neighbourhood(kind, size)) {
    throw std::invalid_argument("line_families: unsupported neighbourhood");
  }
  if (!(d > 0.0)) throw std::invalid_argument("line_families: spacing must be positive");

  std::vector<LineFamily> families;
  if (kind == LatticeKind::Hex) {
    const int m = size / 2;
    for (int k = 0; k < m; ++k) {
      const double angle = k * kPi / m;
      // N12 interleaves the sqrt(3)-long directions at odd multiples of pi/6.
      const bool long_edge = (m == 6) && (k % 2 == 1);
      families.push_back({angle, long_edge ? d / 2.0 : d * kSqrt3 / 2.0, 0.0});
    }
  } else {
    const double axis = d;
    const double diag = d / std::numbers::sqrt2;
    const double knight = d / std::sqrt(5.0);
    const double a_half = std::atan(0.5);
    const double a_two = std::atan(2.0);
    switch (size) {
      case 4:
        families = {{0.0, axis, 0}, {kPi / 2, axis, 0}};
        break;
      case 8:
        families = {{0.0, axis, 0}, {kPi / 4, diag, 0}, {kPi / 2, axis, 0}, {3 * kPi / 4, diag, 0}};
        break;
      default:
        families = {{0.0, axis, 0},         {a_half, knight, 0},     {kPi / 4, diag, 0},
                    {a_two, knight, 0},     {kPi / 2, axis, 0},      {kPi - a_two, knight, 0},
                    {3 * kPi / 4, diag, 0}, {kPi - a_half, knight, 0}};
        break;
    }
  }
  fill_shares(families);
  return families;
}

std::vector<double> crofton_weights(LatticeKind kind, int size, double d) {
  const auto families = line_families(kind, size, d);
  const Neighbourhood nb = neighbourhood_vectors(kind, size);
  std::vector<double> weights;
  weights.reserve(nb.vectors.size());
  for (const Vec2& v : nb.vectors) {
    const double angle = normalised_angle(v);
    auto it = std::find_if(families.begin(), families.end(), [&](const LineFamily& f) {
      return std::abs(f.angle - angle) < 1e-9;
    });
    if (it == families.end()) throw std::logic_error("crofton_weights: direction without family");
    weights.push_back(it->spacing * it->angular_share / 2.0);
  }
  return weights;
}

double estimate_length(const Polyline& curve, std::span<const LineFamily> families) {
  const auto& pts = curve.points;
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  std::vector<double> t(n);
  std::vector<std::uint8_t> on_line(n);
  std::vector<double> level(n);
  for (const LineFamily& family : families) {
    // Lines of the family are {x : dot(x, n) = j * spacing}.
    const Vec2 normal{std::sin(family.angle), -std::cos(family.angle)};
    for (std::size_t k = 0; k < n; ++k) {
      t[k] = dot(pts[k], normal) / family.spacing;
      const double r = std::round(t[k]);
      on_line[k] = std::abs(t[k] - r) <= 1e-12 * std::max(1.0, std::abs(t[k]));
      if (on_line[k]) t[k] = r;
    }
    // A vertex on a line joins the side of the nearest preceding vertex off
    // it, so touching a line crosses it zero times and passing through once.
    for (std::size_t k = 0; k < n; ++k) {
      if (!on_line[k]) {
        level[k] = std::floor(t[k]);
        continue;
      }
      std::optional<std::size_t> ref;
      for (std::size_t s = 1; s < n && !ref; ++s) {
        if (curve.closed) {
          const std::size_t m = (k + n - s) % n;
          if (!on_line[m]) ref = m;
        } else if (s <= k && !on_line[k - s]) {
          ref = k - s;
        }
      }
      for (std::size_t m = k + 1; m < n && !ref && !curve.closed; ++m) {
        if (!on_line[m]) ref = m;
      }
      level[k] = ref && t[*ref] < t[k] ? t[k] - 1.0 : t[k];
    }
    long long crossings = 0;
    const std::size_t segments = curve.closed ? n : n - 1;
    for (std::size_t k = 0; k < segments; ++k) {
      crossings += static_cast<long long>(std::abs(level[(k + 1) % n] - level[k]));
    }
    total += static_cast<double>(crossings) * family.spacing * family.angular_share / 2.0;
  }
  return total;
}

}  // namespace hextv
