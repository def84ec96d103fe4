#include "hextv/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hextv {

DiscreteImage::DiscreteImage(GridPtr grid, int labels, std::vector<Label> values)
    : grid_(std::move(grid)), labels_(labels), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("DiscreteImage: null grid");
  if (labels_ < 2) throw std::invalid_argument("DiscreteImage: need at least two labels");
  if (values_.size() != grid_->size()) {
    throw std::invalid_argument("DiscreteImage: value count does not match the grid");
  }
  for (Label v : values_) {
    if (v < 0 || v >= labels_) throw std::out_of_range("DiscreteImage: label out of range");
  }
}

BinaryImage::BinaryImage(GridPtr grid, std::vector<std::uint8_t> bits)
    : grid_(std::move(grid)), bits_(std::move(bits)) {
  if (!grid_) throw std::invalid_argument("BinaryImage: null grid");
  if (bits_.size() != grid_->size()) {
    throw std::invalid_argument("BinaryImage: bit count does not match the grid");
  }
  for (auto b : bits_) {
    if (b > 1) throw std::out_of_range("BinaryImage: bits must be 0 or 1");
  }
}

void validate(const EnergyParams& params) {
  if (!(params.lambda >= 0.0) || !std::isfinite(params.lambda)) {
    throw std::invalid_argument("EnergyParams: lambda must be finite and non-negative");
  }
  if (params.alpha != 1 && params.alpha != 2) {
    throw std::invalid_argument("EnergyParams: alpha must be 1 or 2");
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!a.same_layout(b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

DiscreteImage quantize(GridPtr grid, std::span<const double> samples, int labels) {
  if (labels < 2) throw std::invalid_argument("quantize: need at least two labels");
  std::vector<Label> values;
  values.reserve(samples.size());
  for (double s : samples) {
    if (!std::isfinite(s)) throw std::invalid_argument("quantize: non-finite sample");
    const double r = std::floor(s + 0.5);
    values.push_back(static_cast<Label>(std::clamp(r, 0.0, static_cast<double>(labels - 1))));
  }
  return DiscreteImage(std::move(grid), labels, std::move(values));
}

BinaryImage level(const DiscreteImage& u, int l) {
  if (l < 0 || l > u.labels() - 2) throw std::out_of_range("level: label out of range");
  std::vector<std::uint8_t> bits(u.size());
  for (std::size_t p = 0; p < u.size(); ++p) bits[p] = u[p] > l ? 1 : 0;
  return BinaryImage(u.grid_ptr(), std::move(bits));
}

std::vector<BinaryImage> level_family(const DiscreteImage& u) {
  std::vector<BinaryImage> levels;
  levels.reserve(static_cast<std::size_t>(u.labels() - 1));
  for (int l = 0; l <= u.labels() - 2; ++l) levels.push_back(level(u, l));
  return levels;
}

DiscreteImage reconstruct(std::span<const BinaryImage> levels) {
  if (levels.empty()) throw std::invalid_argument("reconstruct: empty level family");
  const GridPtr& grid = levels.front().grid_ptr();
  std::vector<Label> values(grid->size(), 0);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    require_same_grid(*grid, levels[l].grid(), "reconstruct");
    for (std::size_t p = 0; p < values.size(); ++p) {
      const auto bit = levels[l][p];
      if (bit && values[p] != static_cast<Label>(l)) {
        throw std::invalid_argument("reconstruct: level family is not monotone");
      }
      values[p] += bit;
    }
  }
  return DiscreteImage(grid, static_cast<int>(levels.size()) + 1, std::move(values));
}

namespace {

// Per-family integer sums keep the coarea identity exact up to the final
// weighting.
template <typename Values>
double weighted_abs_differences(const Values& values, const WeightedEdgeSet& edges) {
  std::vector<long long> per_family(edges.family_count(), 0);
  for (const Edge& e : edges.edges()) {
    const long long a = values[e.p];
    const long long b = values[e.q];
    per_family[e.family] += a > b ? a - b : b - a;
  }
  std::vector<double> terms(per_family.size());
  for (std::size_t f = 0; f < per_family.size(); ++f) {
    terms[f] = edges.weights()[f] * static_cast<double>(per_family[f]);
  }
  return pairwise_sum(terms);
}

}  // namespace

double discrete_tv(const DiscreteImage& u, const WeightedEdgeSet& edges) {
  require_same_grid(u.grid(), edges.grid(), "discrete_tv");
  return weighted_abs_differences(u.values(), edges);
}

double discrete_tv(const BinaryImage& chi, const WeightedEdgeSet& edges) {
  require_same_grid(chi.grid(), edges.grid(), "discrete_tv");
  return weighted_abs_differences(chi.bits(), edges);
}

double fidelity(const DiscreteImage& u, const DiscreteImage& f, int alpha) {
  require_same_grid(u.grid(), f.grid(), "fidelity");
  if (alpha != 1 && alpha != 2) throw std::invalid_argument("fidelity: alpha must be 1 or 2");
  const auto areas = u.grid().voronoi_areas();
  std::vector<double> terms(u.size());
  for (std::size_t p = 0; p < u.size(); ++p) {
    const double diff = std::abs(static_cast<double>(u[p]) - static_cast<double>(f[p]));
    terms[p] = areas[p] * (alpha == 1 ? diff : diff * diff);
  }
  return pairwise_sum(terms);
}

double energy(const DiscreteImage& u, const DiscreteImage& f, const EnergyParams& params,
              const WeightedEdgeSet& edges) {
  validate(params);
  return params.lambda * fidelity(u, f, params.alpha) + discrete_tv(u, edges);
}

double gradient_tv_counterexample(const DiscreteImage& u) {
  const Grid& grid = u.grid();
  if (grid.kind() != LatticeKind::Square) {
    throw std::invalid_argument("gradient_tv_counterexample: square lattice required");
  }
  const auto rows = grid.rows();
  for (const RowRange& r : rows) {
    if (r.imin != rows.front().imin || r.imax != rows.front().imax) {
      throw std::invalid_argument("gradient_tv_counterexample: full rectangular grid required");
    }
  }
  std::vector<double> terms;
  terms.reserve(u.size());
  for (const RowRange& r : rows) {
    for (int i = r.imin; i <= r.imax; ++i) {
      const std::size_t p = *grid.find({i, r.j});
      const auto right = grid.find({i + 1, r.j});
      const auto down = grid.find({i, r.j + 1});
      const double dx = right ? u[*right] - u[p] : 0.0;
      const double dy = down ? u[*down] - u[p] : 0.0;
      terms.push_back(std::sqrt(dx * dx + dy * dy));
    }
  }
  return pairwise_sum(terms);
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace hextv
