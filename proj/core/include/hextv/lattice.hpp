#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hextv {

enum class LatticeKind { Square, Hex };

std::string to_string(LatticeKind kind);
LatticeKind parse_lattice_kind(const std::string& name);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Unit-length basis columns of a planar lattice. Square uses e1, e2; Hex
/// uses h1 = (1, 0), h2 = (1/2, sqrt(3)/2), the horizontally aligned
/// hexagonal lattice.
struct LatticeBasis {
  LatticeKind kind = LatticeKind::Square;
  Vec2 b1;
  Vec2 b2;

  /// |det B|: area of the fundamental parallelogram at unit spacing.
  double det() const { return std::abs(cross(b1, b2)); }
  Vec2 map(double i, double j) const { return i * b1 + j * b2; }
};

LatticeBasis make_basis(LatticeKind kind);

/// Spacing for lattice `to` whose cell area equals that of `from` at `d_ref`.
double match_density(double d_ref, LatticeKind from, LatticeKind to);

/// A lattice of spacing d intersected with the closed rectangle [0,W]x[0,H].
/// The lattice point with index (0,0) sits at the origin.
struct GridSpec {
  LatticeKind kind = LatticeKind::Square;
  double d = 1.0;
  double width = 1.0;
  double height = 1.0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct LatticeIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(LatticeIndex, LatticeIndex) = default;
};

struct Site {
  LatticeIndex index;
  Vec2 point;
};

/// Sites of one lattice row j occupy the contiguous index range [imin, imax].
struct RowRange {
  int j = 0;
  int imin = 0;
  int imax = -1;
  std::size_t offset = 0;

  int count() const { return imax - imin + 1; }
};

class Grid {
 public:
  static std::shared_ptr<const Grid> build(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const LatticeBasis& basis() const { return basis_; }
  LatticeKind kind() const { return spec_.kind; }
  double spacing() const { return spec_.d; }

  std::size_t size() const { return sites_.size(); }
  std::span<const Site> sites() const { return sites_; }
  const Site& site(std::size_t p) const { return sites_[p]; }
  std::span<const double> voronoi_areas() const { return areas_; }
  double voronoi_area(std::size_t p) const { return areas_[p]; }
  std::span<const RowRange> rows() const { return rows_; }

  std::optional<std::size_t> find(LatticeIndex index) const;

  /// Physical position of an arbitrary lattice index (need not be in the grid).
  Vec2 position(LatticeIndex index) const;

  /// Same lattice and rows, with spacing and domain equal to 1e-10 relative.
  bool same_layout(const Grid& other) const;

 private:
  explicit Grid(const GridSpec& spec);
  void enumerate();
  void compute_areas();
  double clipped_cell_area(std::size_t p) const;

  GridSpec spec_;
  LatticeBasis basis_;
  std::vector<Site> sites_;
  std::vector<double> areas_;
  std::vector<RowRange> rows_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Enumerates the lattice points of the closed domain and their Voronoi cells
/// clipped to the domain. Throws std::invalid_argument for invalid specs or
/// domains that contain no lattice point.
GridPtr build_grid(const GridSpec& spec);

/// Neighbourhood system: one offset per direction (standing for +-v).
struct Neighbourhood {
  LatticeKind kind = LatticeKind::Square;
  int size = 4;
  std::vector<LatticeIndex> offsets;
  /// Physical offsets at unit spacing, in the same order as `offsets`.
  std::vector<Vec2> vectors;
};

bool is_supported_neighbourhood(LatticeKind kind, int size);

/// N4, N8, N16 on the square lattice; N6, N12 on the hexagonal lattice.
Neighbourhood neighbourhood_vectors(LatticeKind kind, int size);

struct Edge {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::uint16_t family = 0;
};

/// Undirected neighbour pairs of a grid, tagged with their direction family.
class WeightedEdgeSet {
 public:
  WeightedEdgeSet(GridPtr grid, std::vector<Edge> edges, std::vector<double> weights);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> weights() const { return weights_; }
  double weight(const Edge& e) const { return weights_[e.family]; }
  std::size_t family_count() const { return weights_.size(); }

 private:
  GridPtr grid_;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
};

WeightedEdgeSet build_edges(GridPtr grid, const Neighbourhood& nb, std::span<const double> weights);

}  // namespace hextv
