#pragma once

#include <cstdint>
#include <string>

#include "hextv/image.hpp"

namespace hextv {

/// cos((x^2 + y^2) / 450) on (x, y) in [0,100] x [-100,0].
double radial_cosine_value(double x, double y);

/// Modified (contrast-enhanced) Shepp-Logan phantom on [-1,1]^2, y up.
double shepp_logan_value(double x, double y);

/// The grid domain maps affinely onto [0,100] x [-100,0], with domain y = 0
/// (the top raster row) at caption y = 0. Values are scaled from [-1,1] to
/// [0, L-1] and quantized.
DiscreteImage radial_cosine(GridPtr grid, int labels = 256);

/// The grid domain maps onto [-1,1]^2, with domain y = 0 at the top (+1).
/// Intensities are clamped to [0,1] and scaled to [0, L-1].
DiscreteImage shepp_logan(GridPtr grid, int labels = 256);

struct NoiseSpec {
  enum class Model { SaltPepper, Gaussian };
  Model model = Model::SaltPepper;
  /// Replacement probability for salt & pepper; for Gaussian, the standard
  /// deviation as a fraction of the dynamic range L-1.
  double amount = 0.0;
  std::uint64_t seed = 0;
};

/// Parses "sp:<rho>" or "gauss:<fraction>".
NoiseSpec parse_noise(const std::string& text, std::uint64_t seed = 0);
std::string to_string(const NoiseSpec& spec);

/// Each site is replaced with probability rho by 0 or L-1 (equally likely).
DiscreteImage add_salt_pepper(const DiscreteImage& u, double rho, std::uint64_t seed);

/// u_p + round(xi_p), xi_p ~ N(0, sigma^2) in label units, clamped.
DiscreteImage add_gaussian(const DiscreteImage& u, double sigma, std::uint64_t seed);

DiscreteImage add_noise(const DiscreteImage& u, const NoiseSpec& spec);

}  // namespace hextv
