#include "hextv/lattice.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "polygon.hpp"

namespace hextv {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

// Relative slack for points that sit on the domain boundary.
constexpr double kBoundaryTol = 1e-12;

// Index window searched for Voronoi competitors. Any competitor that can clip a
// cell lies within twice the covering radius (< 1.5 d) of the site.
constexpr int kCompetitorWindow = 8;

}  // namespace

std::string to_string(LatticeKind kind) {
  return kind == LatticeKind::Square ? "square" : "hex";
}

LatticeKind parse_lattice_kind(const std::string& name) {
  if (name == "square") return LatticeKind::Square;
  if (name == "hex") return LatticeKind::Hex;
  throw std::invalid_argument("unknown lattice kind '" + name + "'");
}

LatticeBasis make_basis(LatticeKind kind) {
  if (kind == LatticeKind::Square) {
    return {kind, {1.0, 0.0}, {0.0, 1.0}};
  }
  return {kind, {1.0, 0.0}, {0.5, kSqrt3 / 2.0}};
}

double match_density(double d_ref, LatticeKind from, LatticeKind to) {
  if (!(d_ref > 0.0) || !std::isfinite(d_ref)) {
    throw std::invalid_argument("match_density: spacing must be positive");
  }
  return d_ref * std::sqrt(make_basis(from).det() / make_basis(to).det());
}

Grid::Grid(const GridSpec& spec) : spec_(spec), basis_(make_basis(spec.kind)) {}

GridPtr Grid::build(const GridSpec& spec) {
  if (!(spec.d > 0.0) || !(spec.width > 0.0) || !(spec.height > 0.0) ||
      !std::isfinite(spec.d) || !std::isfinite(spec.width) || !std::isfinite(spec.height)) {
    throw std::invalid_argument("GridSpec: spacing and domain extents must be positive and finite");
  }
  auto grid = std::shared_ptr<Grid>(new Grid(spec));
  grid->enumerate();
  if (grid->sites_.empty()) {
    throw std::invalid_argument("GridSpec: domain contains no lattice point");
  }
  grid->compute_areas();
  return grid;
}

GridPtr build_grid(const GridSpec& spec) { return Grid::build(spec); }

void Grid::enumerate() {
  const double d = spec_.d;
  const double row_height = d * basis_.b2.y;
  const double tol_y = kBoundaryTol * std::max(spec_.height, d);
  const double tol_x = kBoundaryTol * std::max(spec_.width, d);
  const int jmax = static_cast<int>(std::floor((spec_.height + tol_y) / row_height));

  for (int j = 0; j <= jmax; ++j) {
    const double shift = j * basis_.b2.x;
    const int imin = static_cast<int>(std::ceil(-shift - tol_x / d));
    const int imax = static_cast<int>(std::floor((spec_.width + tol_x) / d - shift));
    RowRange row{j, imin, imax, sites_.size()};
    if (imax < imin) {
      row.imax = imin - 1;
      rows_.push_back(row);
      continue;
    }
    for (int i = imin; i <= imax; ++i) {
      Vec2 pt = position({i, j});
      pt.x = std::clamp(pt.x, 0.0, spec_.width);
      pt.y = std::clamp(pt.y, 0.0, spec_.height);
      sites_.push_back({{i, j}, pt});
    }
    rows_.push_back(row);
  }
}

Vec2 Grid::position(LatticeIndex index) const {
  return spec_.d * basis_.map(index.i, index.j);
}

std::optional<std::size_t> Grid::find(LatticeIndex index) const {
  if (index.j < 0 || index.j >= static_cast<int>(rows_.size())) return std::nullopt;
  const RowRange& row = rows_[static_cast<std::size_t>(index.j)];
  if (index.i < row.imin || index.i > row.imax) return std::nullopt;
  return row.offset + static_cast<std::size_t>(index.i - row.imin);
}

bool Grid::same_layout(const Grid& other) const {
  if (this == &other) return true;
  // Specs read back from files may differ from the originals in the last bits.
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b)); };
  if (spec_.kind != other.spec_.kind || sites_.size() != other.sites_.size() ||
      rows_.size() != other.rows_.size()) {
    return false;
  }
  if (!close(spec_.d, other.spec_.d) || !close(spec_.width, other.spec_.width) ||
      !close(spec_.height, other.spec_.height)) {
    return false;
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].imin != other.rows_[r].imin || rows_[r].imax != other.rows_[r].imax) return false;
  }
  return true;
}

void Grid::compute_areas() {
  areas_.resize(sites_.size());
  for (std::size_t p = 0; p < sites_.size(); ++p) {
    areas_[p] = clipped_cell_area(p);
  }
}

// Voronoi cell of a site with respect to the other grid sites, intersected
// with the domain. Interior cells reduce to the regular lattice cell.
double Grid::clipped_cell_area(std::size_t p) const {
  const double d = spec_.d;
  const Site& s = sites_[p];
  const bool hex = spec_.kind == LatticeKind::Hex;

  static const std::vector<LatticeIndex> square_ring = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  static const std::vector<LatticeIndex> hex_ring = {{1, 0}, {-1, 0}, {0, 1},
                                                     {0, -1}, {-1, 1}, {1, -1}};
  const auto& ring = hex ? hex_ring : square_ring;

  // Regular lattice cell: square of side d, or pointy-top hexagon of
  // circumradius d / sqrt(3).
  bool interior = std::all_of(ring.begin(), ring.end(), [&](LatticeIndex o) {
    return find({s.index.i + o.i, s.index.j + o.j}).has_value();
  });
  if (interior) {
    const double rx = d / 2.0;
    const double ry = hex ? d / kSqrt3 : d / 2.0;
    interior = s.point.x - rx >= 0.0 && s.point.x + rx <= spec_.width &&
               s.point.y - ry >= 0.0 && s.point.y + ry <= spec_.height;
  }
  if (interior) return basis_.det() * d * d;

  struct Competitor {
    LatticeIndex offset;
    double distance;
  };
  static thread_local std::vector<Competitor> square_order, hex_order;
  auto& order = hex ? hex_order : square_order;
  if (order.empty()) {
    for (int b = -kCompetitorWindow; b <= kCompetitorWindow; ++b) {
      for (int a = -kCompetitorWindow; a <= kCompetitorWindow; ++a) {
        if (a == 0 && b == 0) continue;
        order.push_back({{a, b}, norm(basis_.map(a, b))});
      }
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const Competitor& x, const Competitor& y) { return x.distance < y.distance; });
  }

  detail::Polygon cell = detail::rectangle(spec_.width, spec_.height);
  for (const Competitor& c : order) {
    double reach = 0.0;
    for (const Vec2& v : cell) reach = std::max(reach, norm(v - s.point));
    if (c.distance * d > 2.0 * reach) break;
    auto q = find({s.index.i + c.offset.i, s.index.j + c.offset.j});
    if (!q) continue;
    const Vec2 other = sites_[*q].point;
    const Vec2 normal = other - s.point;
    const double offset = dot(0.5 * (other + s.point), normal);
    cell = detail::clip_half_plane(cell, normal, offset);
  }
  return detail::shoelace_area(cell);
}

bool is_supported_neighbourhood(LatticeKind kind, int size) {
  if (kind == LatticeKind::Square) return size == 4 || size == 8 || size == 16;
  return size == 6 || size == 12;
}

Neighbourhood neighbourhood_vectors(LatticeKind kind, int size) {
  if (!is_supported_neighbourhood(kind, size)) {
    throw std::invalid_argument("unsupported neighbourhood N" + std::to_string(size) + " on " +
                                to_string(kind) + " lattice");
  }
  Neighbourhood nb;
  nb.kind = kind;
  nb.size = size;
  if (kind == LatticeKind::Square) {
    nb.offsets = {{1, 0}, {0, 1}};
    if (size >= 8) nb.offsets.insert(nb.offsets.end(), {{1, 1}, {-1, 1}});
    if (size >= 16) nb.offsets.insert(nb.offsets.end(), {{2, 1}, {1, 2}, {-1, 2}, {-2, 1}});
  } else {
    // h1, h2, h2 - h1; then h1 + h2, 2 h2 - h1, h2 - 2 h1.
    nb.offsets = {{1, 0}, {0, 1}, {-1, 1}};
    if (size >= 12) nb.offsets.insert(nb.offsets.end(), {{1, 1}, {-1, 2}, {-2, 1}});
  }
  const LatticeBasis basis = make_basis(kind);
  for (LatticeIndex o : nb.offsets) nb.vectors.push_back(basis.map(o.i, o.j));
  return nb;
}

WeightedEdgeSet::WeightedEdgeSet(GridPtr grid, std::vector<Edge> edges, std::vector<double> weights)
    : grid_(std::move(grid)), edges_(std::move(edges)), weights_(std::move(weights)) {
  if (!grid_) throw std::invalid_argument("WeightedEdgeSet: null grid");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("WeightedEdgeSet: weights must be positive and finite");
    }
  }
  for (const Edge& e : edges_) {
    if (e.p >= grid_->size() || e.q >= grid_->size() || e.p == e.q || e.family >= weights_.size()) {
      throw std::invalid_argument("WeightedEdgeSet: invalid edge");
    }
  }
}

WeightedEdgeSet build_edges(GridPtr grid, const Neighbourhood& nb, std::span<const double> weights) {
  if (!grid) throw std::invalid_argument("build_edges: null grid");
  if (weights.size() != nb.offsets.size()) {
    throw std::invalid_argument("build_edges: need one weight per neighbourhood direction");
  }
  if (nb.kind != grid->kind()) {
    throw std::invalid_argument("build_edges: neighbourhood does not match the grid lattice");
  }
  std::vector<Edge> edges;
  edges.reserve(grid->size() * nb.offsets.size());
  for (std::size_t p = 0; p < grid->size(); ++p) {
    const LatticeIndex idx = grid->site(p).index;
    for (std::size_t f = 0; f < nb.offsets.size(); ++f) {
      const LatticeIndex o = nb.offsets[f];
      if (auto q = grid->find({idx.i + o.i, idx.j + o.j})) {
        edges.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(*q),
                         static_cast<std::uint16_t>(f)});
      }
    }
  }
  return WeightedEdgeSet(std::move(grid), std::move(edges),
                         std::vector<double>(weights.begin(), weights.end()));
}

}  // namespace hextv
