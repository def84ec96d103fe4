#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace hextv {

/// Symmetric-pair neighbour arc u -> v (cap_uv) and v -> u (cap_vu).
struct NeighbourArc {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double cap_uv = 0.0;
  double cap_vu = 0.0;

  friend bool operator==(const NeighbourArc&, const NeighbourArc&) = default;
};

/// s-t network over `node_count` nodes. Terminal arcs s -> p carry
/// source_cap[p], p -> t carry sink_cap[p]. Nodes flagged in `fixed_sink`
/// are removed from the search: they are constrained to the sink side.
struct FlowNetwork {
  explicit FlowNetwork(std::size_t nodes = 0)
      : node_count(nodes), source_cap(nodes, 0.0), sink_cap(nodes, 0.0) {}

  std::size_t node_count = 0;
  std::vector<double> source_cap;
  std::vector<double> sink_cap;
  std::vector<NeighbourArc> arcs;
  std::vector<std::uint8_t> fixed_sink;  // empty: no node fixed

  bool is_fixed(std::size_t p) const { return !fixed_sink.empty() && fixed_sink[p] != 0; }
  void validate() const;
  double max_capacity() const;
};

struct CutResult {
  double flow = 0.0;
  /// 1 for nodes in the minimal source set (reachable from s in the residual).
  std::vector<std::uint8_t> source_side;
  /// True when the minimum cut is unique: every free node reaches s or t.
  bool unique = true;
};

/// Capacity of the cut with `source_side` on the source side; fixed nodes are
/// counted on the sink side.
double cut_capacity(const FlowNetwork& net, std::span<const std::uint8_t> source_side);

/// Bidirectional search-tree augmenting paths over a residual graph that
/// persists between solves. Terminal capacities may change and nodes may be
/// fixed to the sink between solves; arc structure may not.
class MaxflowSolver {
 public:
  explicit MaxflowSolver(const FlowNetwork& net);

  CutResult solve();

  /// Moves to `net`, keeping the current flow. Throws std::invalid_argument
  /// if the arcs differ or a previously fixed node is released.
  void update(const FlowNetwork& net);

  std::size_t node_count() const { return tr_.size(); }
  /// Net flow along neighbour arc k, positive in the u -> v direction.
  double arc_flow(std::size_t k) const;
  /// Net flow entering p from the terminals (s inflow minus t outflow).
  /// Fixed nodes drain into t without limit.
  double terminal_inflow(std::size_t p) const;
  std::size_t augmentations() const { return augmentations_; }

 private:
  static constexpr int kNone = -1;
  static constexpr int kTerminal = -2;
  static constexpr int kOrphan = -3;

  void fix_node(std::uint32_t q);
  void init_trees();
  void activate(int i, bool front = false);
  int next_active();
  int grow(int i);
  void augment(int middle);
  void adopt_orphans();
  void adopt_source_orphan(int i);
  void adopt_sink_orphan(int i);
  int origin_distance(int j);
  CutResult extract_cut() const;

  // Static structure.
  std::vector<NeighbourArc> arcs_;
  std::vector<int> first_;      // CSR offsets, size n + 1
  std::vector<int> head_;       // per half-arc
  std::vector<int> sister_;     // per half-arc
  std::vector<int> half_of_arc_;  // half-arc index of u -> v for arc k
  std::vector<std::size_t> arc_of_half_;

  // Residual state.
  std::vector<double> r_;
  std::vector<double> tr_;  // > 0: residual s -> p, < 0: residual p -> t
  std::vector<double> source_cap_;
  std::vector<double> sink_cap_;
  std::vector<std::uint8_t> fixed_;
  std::vector<double> frozen_flow_;
  std::vector<double> dead_room_;  // residual toward the fixed end when the arc died
  std::vector<std::uint8_t> dead_arc_;
  std::vector<double> extra_sink_;  // sum of dead_room_ over the arcs of a free node

  double dead_arc_share(std::size_t p) const;
  double dead_arc_take(int a, double& left) const;

  // Search state.
  std::vector<int> parent_;
  std::vector<std::uint8_t> is_sink_;
  std::vector<std::uint8_t> queued_;
  std::vector<int> ts_;
  std::vector<int> dist_;
  std::deque<int> active_;
  std::deque<int> orphans_;
  int time_ = 0;
  double eps_ = 0.0;
  double max_cap_ = 0.0;
  std::size_t augmentations_ = 0;
};

using MaxflowState = MaxflowSolver;

CutResult max_flow(const FlowNetwork& net);

struct ReuseResult {
  CutResult cut;
  MaxflowState state;
};

/// Solves `net`, continuing from `prev` when given. The cut is identical to a
/// cold max_flow(net).
ReuseResult solve_reusing(const FlowNetwork& net, std::optional<MaxflowState> prev = std::nullopt);

}  // namespace hextv
