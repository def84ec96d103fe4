#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hextv/solver.hpp"
#include "hextv/synth.hpp"

namespace hextv {

/// Mean absolute label difference per site.
double l1_error(const DiscreteImage& truth, const DiscreteImage& restored);
/// Fraction of sites restored exactly.
double correct_ratio(const DiscreteImage& truth, const DiscreteImage& restored);

struct SweepRow {
  LatticeKind lattice = LatticeKind::Square;
  int nu = 4;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  double l1_per_site = 0.0;
  double correct_ratio = 0.0;
  double energy = 0.0;
  double runtime_ms = 0.0;
};

struct LatticeConfig {
  LatticeKind lattice = LatticeKind::Square;
  int nu = 4;
};

struct ExperimentDescriptor {
  /// "shepplogan", "cosine" or "file:<path>" (a square PGM).
  std::string image = "shepplogan";
  int size = 64;
  int labels = 256;
  std::vector<LatticeConfig> configs{{LatticeKind::Square, 4}, {LatticeKind::Hex, 6}};
  int alpha = 1;
  NoiseSpec noise{NoiseSpec::Model::SaltPepper, 0.6, 0};
  std::vector<double> lambdas{1.0};
  int seeds = 10;
  std::uint64_t seed_base = 0;
  /// Enlargement factor used to carry file images onto the hex lattice.
  double hex_scale = 7.5;
  int threads = 1;
  std::string out;
  std::string svg;
};

/// Flat key=value lines; '#' starts a comment. Lists are comma separated and
/// lambda also accepts start:stop:step.
ExperimentDescriptor parse_descriptor(std::istream& in);
ExperimentDescriptor read_descriptor(const std::string& path);

std::vector<double> parse_lambda_grid(const std::string& text);

/// Noise-free ground truth of the descriptor on the lattice of `config`.
DiscreteImage ground_truth(const ExperimentDescriptor& desc, LatticeKind lattice);

/// One row per (config, lambda, seed), ordered config-major, then lambda,
/// then seed, independent of the thread count.
std::vector<SweepRow> run_experiment(const ExperimentDescriptor& desc);

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Line chart of mean l1_per_site against lambda with a +-1 std band per
/// lattice configuration.
void write_svg(const std::vector<SweepRow>& rows, std::ostream& out);
void write_svg(const std::vector<SweepRow>& rows, const std::string& path);

struct PathPoint {
  double lambda = 0.0;
  double tv = 0.0;
  double fidelity = 0.0;
};

/// Minimizers of one noisy image along a lambda grid.
std::vector<PathPoint> lambda_path(const DiscreteImage& f, const SolverConfig& cfg,
                                   const std::vector<double>& lambdas);

/// Adjacent lambda pairs where the minimizer's TV changes by more than
/// `threshold` relative to the smaller-lambda value.
std::vector<std::pair<double, double>> detect_jump(const std::vector<PathPoint>& path,
                                                   double threshold = 0.1);

}  // namespace hextv
