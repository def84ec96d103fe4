#include "hextv/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hextv {

namespace {

struct Ellipse {
  double intensity;
  double a;
  double b;
  double x0;
  double y0;
  double phi_deg;
};

// Modified Shepp-Logan table (Toft's high-contrast intensities).
constexpr std::array<Ellipse, 10> kPhantom = {{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

template <typename Fn>
DiscreteImage sample(const GridPtr& grid, int labels, Fn&& value) {
  std::vector<double> samples;
  samples.reserve(grid->size());
  for (const Site& s : grid->sites()) samples.push_back(value(s.point));
  return quantize(grid, samples, labels);
}

}  // namespace

double radial_cosine_value(double x, double y) { return std::cos((x * x + y * y) / 450.0); }

double shepp_logan_value(double x, double y) {
  double total = 0.0;
  for (const Ellipse& e : kPhantom) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double dx = x - e.x0;
    const double dy = y - e.y0;
    const double u = dx * c + dy * s;
    const double v = -dx * s + dy * c;
    if ((u * u) / (e.a * e.a) + (v * v) / (e.b * e.b) <= 1.0) total += e.intensity;
  }
  return total;
}

DiscreteImage radial_cosine(GridPtr grid, int labels) {
  const GridSpec& spec = grid->spec();
  const double top = labels - 1;
  return sample(grid, labels, [&](Vec2 pt) {
    const double x = 100.0 * pt.x / spec.width;
    const double y = -100.0 * pt.y / spec.height;
    return (radial_cosine_value(x, y) + 1.0) / 2.0 * top;
  });
}

DiscreteImage shepp_logan(GridPtr grid, int labels) {
  const GridSpec& spec = grid->spec();
  const double top = labels - 1;
  return sample(grid, labels, [&](Vec2 pt) {
    const double x = 2.0 * pt.x / spec.width - 1.0;
    const double y = 1.0 - 2.0 * pt.y / spec.height;
    return std::clamp(shepp_logan_value(x, y), 0.0, 1.0) * top;
  });
}

NoiseSpec parse_noise(const std::string& text, std::uint64_t seed) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("noise: expected <model>:<amount>");
  const std::string model = text.substr(0, colon);
  double amount = 0.0;
  try {
    std::size_t used = 0;
    amount = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("noise: bad amount in '" + text + "'");
  }
  NoiseSpec spec;
  spec.seed = seed;
  spec.amount = amount;
  if (model == "sp") {
    spec.model = NoiseSpec::Model::SaltPepper;
    if (!(amount >= 0.0 && amount <= 1.0)) throw std::invalid_argument("noise: rho must be in [0,1]");
  } else if (model == "gauss") {
    spec.model = NoiseSpec::Model::Gaussian;
    if (!(amount >= 0.0) || !std::isfinite(amount)) {
      throw std::invalid_argument("noise: sigma must be non-negative");
    }
  } else {
    throw std::invalid_argument("noise: unknown model '" + model + "'");
  }
  return spec;
}

std::string to_string(const NoiseSpec& spec) {
  std::ostringstream os;
  os << (spec.model == NoiseSpec::Model::SaltPepper ? "sp:" : "gauss:") << spec.amount;
  return os.str();
}

DiscreteImage add_salt_pepper(const DiscreteImage& u, double rho, std::uint64_t seed) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("add_salt_pepper: rho must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Label> values(u.values().begin(), u.values().end());
  const Label top = u.labels() - 1;
  for (Label& v : values) {
    const double hit = unit(rng);
    const double side = unit(rng);
    if (hit < rho) v = side < 0.5 ? 0 : top;
  }
  return DiscreteImage(u.grid_ptr(), u.labels(), std::move(values));
}

DiscreteImage add_gaussian(const DiscreteImage& u, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("add_gaussian: sigma must be non-negative");
  }
  if (sigma == 0.0) return u;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<Label> values(u.values().begin(), u.values().end());
  const long top = u.labels() - 1;
  for (Label& v : values) {
    const long noisy = v + std::lround(normal(rng));
    v = static_cast<Label>(std::clamp(noisy, 0L, top));
  }
  return DiscreteImage(u.grid_ptr(), u.labels(), std::move(values));
}

DiscreteImage add_noise(const DiscreteImage& u, const NoiseSpec& spec) {
  if (spec.model == NoiseSpec::Model::SaltPepper) return add_salt_pepper(u, spec.amount, spec.seed);
  return add_gaussian(u, spec.amount * (u.labels() - 1), spec.seed);
}

}  // namespace hextv
