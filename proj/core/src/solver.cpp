#include "hextv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hextv/crofton.hpp"
#include "hextv/errors.hpp"

namespace hextv {

namespace {

double power(double x, int alpha) { return alpha == 1 ? x : x * x; }

FlowNetwork network_for(const WeightedEdgeSet& edges) {
  FlowNetwork net(edges.grid().size());
  net.arcs.reserve(edges.edges().size());
  for (const Edge& e : edges.edges()) {
    const double w = edges.weight(e);
    net.arcs.push_back({e.p, e.q, w, w});
  }
  return net;
}

void set_terminals(FlowNetwork& net, const std::vector<double>& coeffs) {
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    const double c = coeffs[p];
    net.source_cap[p] = c < 0.0 ? -c : 0.0;
    net.sink_cap[p] = c > 0.0 ? c : 0.0;
  }
}

}  // namespace

int resolve_neighbourhood(LatticeKind kind, int requested) {
  const int size = requested == 0 ? (kind == LatticeKind::Hex ? 6 : 4) : requested;
  if (!is_supported_neighbourhood(kind, size)) {
    throw std::invalid_argument("unsupported neighbourhood N" + std::to_string(size) + " on " +
                                to_string(kind) + " lattice");
  }
  return size;
}

WeightedEdgeSet solver_edges(const GridPtr& grid, int neighbourhood) {
  const int size = resolve_neighbourhood(grid->kind(), neighbourhood);
  const std::vector<double> weights = crofton_weights(grid->kind(), size, grid->spacing());
  return build_edges(grid, neighbourhood_vectors(grid->kind(), size), weights);
}

LevelCoeffs binary_coeffs(const DiscreteImage& f, const EnergyParams& params, int l) {
  validate(params);
  if (l < 0 || l > f.labels() - 2) {
    throw std::out_of_range("binary_coeffs: level " + std::to_string(l) + " outside [0, " +
                            std::to_string(f.labels() - 2) + "]");
  }
  const auto areas = f.grid().voronoi_areas();
  LevelCoeffs out;
  out.coeffs.resize(f.size());
  std::vector<double> base(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) {
    const double fp = f[p];
    const double scale = params.lambda * areas[p];
    out.coeffs[p] = scale * (power(std::abs(fp - (l + 1)), params.alpha) -
                             power(std::abs(fp - l), params.alpha));
    base[p] = scale * power(fp, params.alpha);
  }
  out.offset = pairwise_sum(base);
  return out;
}

BinaryImage solve_level(const LevelCoeffs& coeffs, const WeightedEdgeSet& edges) {
  LevelSequence seq(edges, false);
  return seq.solve(coeffs);
}

LevelSequence::LevelSequence(const WeightedEdgeSet& edges, bool reuse)
    : edges_(&edges), reuse_(reuse), net_(network_for(edges)), active_(edges.grid().size()) {
  if (reuse_) net_.fixed_sink.assign(net_.node_count, 0);
}

BinaryImage LevelSequence::solve(const LevelCoeffs& coeffs) {
  if (coeffs.coeffs.size() != net_.node_count) {
    throw std::invalid_argument("solve_level: coefficients do not match the edge set's grid");
  }
  for (double c : coeffs.coeffs) {
    if (!std::isfinite(c)) throw NumericalError("solve_level: non-finite level coefficient");
  }
  set_terminals(net_, coeffs.coeffs);

  std::vector<std::uint8_t> bits(net_.node_count, 0);
  if (active_ == 0) {
    last_unique_ = true;
    return BinaryImage(edges_->grid_ptr(), std::move(bits));
  }

  CutResult cut;
  if (reuse_) {
    ReuseResult r = solve_reusing(net_, std::move(state_));
    cut = std::move(r.cut);
    state_.emplace(std::move(r.state));
    for (std::size_t p = 0; p < net_.node_count; ++p) {
      if (!net_.fixed_sink[p] && !cut.source_side[p]) {
        net_.fixed_sink[p] = 1;
        --active_;
      }
    }
  } else {
    cut = max_flow(net_);
  }
  last_unique_ = cut.unique;
  for (std::size_t p = 0; p < net_.node_count; ++p) bits[p] = cut.source_side[p];
  return BinaryImage(edges_->grid_ptr(), std::move(bits));
}

bool DenoiseReport::all_unique() const {
  return std::all_of(unique_cuts.begin(), unique_cuts.end(), [](std::uint8_t u) { return u != 0; });
}

DiscreteImage denoise(const DiscreteImage& f, const SolverConfig& cfg) {
  const WeightedEdgeSet edges = solver_edges(f.grid_ptr(), cfg.neighbourhood);
  return denoise_report(f, cfg, edges).result;
}

DiscreteImage denoise(const DiscreteImage& f, const SolverConfig& cfg, const WeightedEdgeSet& edges) {
  return denoise_report(f, cfg, edges).result;
}

DenoiseReport denoise_report(const DiscreteImage& f, const SolverConfig& cfg,
                             const WeightedEdgeSet& edges) {
  validate(cfg.params);
  require_same_grid(f.grid(), edges.grid(), "denoise");
  const int labels = f.labels();
  const std::size_t n = f.size();

  DenoiseReport report{DiscreteImage(f.grid_ptr(), labels, std::vector<Label>(n, 0)), {}, 0};
  if (labels < 2) return report;

  LevelSequence seq(edges, cfg.reuse);
  std::vector<Label> values(n, 0);
  for (int l = 0; l <= labels - 2; ++l) {
    if (seq.exhausted()) break;
    const BinaryImage chi = seq.solve(binary_coeffs(f, cfg.params, l));
    report.unique_cuts.push_back(seq.last_unique() ? 1 : 0);
    ++report.levels_solved;
    for (std::size_t p = 0; p < n; ++p) {
      if (!chi[p]) continue;
      // Level sets must nest: a site above level l was above every lower level.
      if (values[p] != l) throw NumericalError("denoise: level family lost monotonicity");
      values[p] = l + 1;
    }
  }
  report.result = DiscreteImage(f.grid_ptr(), labels, std::move(values));
  return report;
}

}  // namespace hextv
