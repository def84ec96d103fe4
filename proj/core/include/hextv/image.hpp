#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hextv/lattice.hpp"

namespace hextv {

using Label = std::int32_t;

/// Per-site labels in {0, ..., L-1} over a grid.
class DiscreteImage {
 public:
  DiscreteImage(GridPtr grid, int labels, std::vector<Label> values);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int labels() const { return labels_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Label> values() const { return values_; }
  Label operator[](std::size_t p) const { return values_[p]; }

  friend bool operator==(const DiscreteImage& a, const DiscreteImage& b) {
    return a.labels_ == b.labels_ && a.values_ == b.values_ && a.grid_->same_layout(*b.grid_);
  }

 private:
  GridPtr grid_;
  int labels_;
  std::vector<Label> values_;
};

class BinaryImage {
 public:
  BinaryImage(GridPtr grid, std::vector<std::uint8_t> bits);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return bits_.size(); }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::uint8_t operator[](std::size_t p) const { return bits_[p]; }

 private:
  GridPtr grid_;
  std::vector<std::uint8_t> bits_;
};

struct EnergyParams {
  double lambda = 1.0;
  int alpha = 1;
};

void validate(const EnergyParams& params);

/// Rounds half up and clamps to [0, L-1]. Throws on non-finite samples.
DiscreteImage quantize(GridPtr grid, std::span<const double> samples, int labels);

/// Super-level characteristic: bit set iff u_p > l, for 0 <= l <= L-2.
BinaryImage level(const DiscreteImage& u, int l);
std::vector<BinaryImage> level_family(const DiscreteImage& u);

/// Inverse of level_family: u_p = number of set levels. The family must be
/// monotone decreasing in l at every site. The result has levels.size()+1
/// labels.
DiscreteImage reconstruct(std::span<const BinaryImage> levels);

double discrete_tv(const DiscreteImage& u, const WeightedEdgeSet& edges);
double discrete_tv(const BinaryImage& chi, const WeightedEdgeSet& edges);

/// sum_p |V_p| |u_p - f_p|^alpha
double fidelity(const DiscreteImage& u, const DiscreteImage& f, int alpha);

/// lambda * fidelity(u, f) + discrete_tv(u).
double energy(const DiscreteImage& u, const DiscreteImage& f, const EnergyParams& params,
              const WeightedEdgeSet& edges);

/// Forward-difference l2 gradient magnitude summed over a full square grid,
/// with differences past the last row/column taken as zero. It violates the
/// discrete coarea formula for multi-level images and is never used for
/// solving.
double gradient_tv_counterexample(const DiscreteImage& u);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> terms);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace hextv
