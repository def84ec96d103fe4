#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hextv/image.hpp"
#include "hextv/maxflow.hpp"

namespace hextv {

struct SolverConfig {
  EnergyParams params;
  /// 4, 8, 16 (square) or 6, 12 (hex); 0 picks N4 or N6.
  int neighbourhood = 0;
  /// Reuse flow across levels and drop sites already decided to be below the
  /// current level.
  bool reuse = true;
};

int resolve_neighbourhood(LatticeKind kind, int requested);

/// Crofton-weighted edges of the configured neighbourhood on `grid`.
WeightedEdgeSet solver_edges(const GridPtr& grid, int neighbourhood);

/// Unary part of the binary energy of level l:
///   E^l(theta) = sum_p c_p theta_p + sum_{p~q} w_pq |theta_p - theta_q|.
/// The full energy is offset + sum_l E^l(chi^l).
struct LevelCoeffs {
  std::vector<double> coeffs;
  double offset = 0.0;
};

LevelCoeffs binary_coeffs(const DiscreteImage& f, const EnergyParams& params, int l);

/// Global minimizer of E^l with the smallest set of ones.
BinaryImage solve_level(const LevelCoeffs& coeffs, const WeightedEdgeSet& edges);

/// Solves levels in ascending order on one shared network.
class LevelSequence {
 public:
  LevelSequence(const WeightedEdgeSet& edges, bool reuse);

  BinaryImage solve(const LevelCoeffs& coeffs);

  /// Whether the last level's minimum cut was unique.
  bool last_unique() const { return last_unique_; }
  /// True once every site has been decided to lie below the current level.
  bool exhausted() const { return active_ == 0; }

 private:
  const WeightedEdgeSet* edges_;
  bool reuse_;
  FlowNetwork net_;
  std::optional<MaxflowState> state_;
  std::size_t active_;
  bool last_unique_ = true;
};

struct DenoiseReport {
  DiscreteImage result;
  /// Per solved level: 1 if its minimum cut was unique.
  std::vector<std::uint8_t> unique_cuts;
  int levels_solved = 0;

  bool all_unique() const;
};

DiscreteImage denoise(const DiscreteImage& f, const SolverConfig& cfg);
DiscreteImage denoise(const DiscreteImage& f, const SolverConfig& cfg, const WeightedEdgeSet& edges);
DenoiseReport denoise_report(const DiscreteImage& f, const SolverConfig& cfg,
                             const WeightedEdgeSet& edges);

}  // namespace hextv
