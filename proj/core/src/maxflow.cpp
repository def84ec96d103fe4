#include "hextv/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hextv/errors.hpp"

namespace hextv {

namespace {

// Residuals at or below this fraction of the largest capacity count as zero.
constexpr double kRelativeEps = 1e-12;

constexpr std::size_t kMaxAugmentations = 200'000'000;

constexpr int kInfinity = std::numeric_limits<int>::max();

}  // namespace

void FlowNetwork::validate() const {
  if (source_cap.size() != node_count || sink_cap.size() != node_count) {
    throw std::invalid_argument("FlowNetwork: terminal capacity arrays must match node count");
  }
  if (!fixed_sink.empty() && fixed_sink.size() != node_count) {
    throw std::invalid_argument("FlowNetwork: fixed_sink must be empty or match node count");
  }
  auto ok = [](double c) { return c >= 0.0 && std::isfinite(c); };
  for (std::size_t p = 0; p < node_count; ++p) {
    if (!ok(source_cap[p]) || !ok(sink_cap[p])) {
      throw std::invalid_argument("FlowNetwork: capacities must be finite and non-negative");
    }
  }
  for (const NeighbourArc& a : arcs) {
    if (a.u >= node_count || a.v >= node_count || a.u == a.v) {
      throw std::invalid_argument("FlowNetwork: invalid arc endpoints");
    }
    if (!ok(a.cap_uv) || !ok(a.cap_vu)) {
      throw std::invalid_argument("FlowNetwork: capacities must be finite and non-negative");
    }
  }
}

double FlowNetwork::max_capacity() const {
  double m = 0.0;
  for (std::size_t p = 0; p < node_count; ++p) m = std::max({m, source_cap[p], sink_cap[p]});
  for (const NeighbourArc& a : arcs) m = std::max({m, a.cap_uv, a.cap_vu});
  return m;
}

double cut_capacity(const FlowNetwork& net, std::span<const std::uint8_t> source_side) {
  auto in_s = [&](std::size_t p) { return source_side[p] != 0 && !net.is_fixed(p); };
  double total = 0.0;
  for (std::size_t p = 0; p < net.node_count; ++p) {
    total += in_s(p) ? net.sink_cap[p] : net.source_cap[p];
  }
  for (const NeighbourArc& a : net.arcs) {
    const bool su = in_s(a.u);
    const bool sv = in_s(a.v);
    if (su && !sv) total += a.cap_uv;
    if (sv && !su) total += a.cap_vu;
  }
  return total;
}

MaxflowSolver::MaxflowSolver(const FlowNetwork& net) {
  net.validate();
  const std::size_t n = net.node_count;
  arcs_ = net.arcs;

  std::vector<int> degree(n + 1, 0);
  for (const NeighbourArc& a : arcs_) {
    ++degree[a.u + 1];
    ++degree[a.v + 1];
  }
  first_.assign(n + 1, 0);
  for (std::size_t p = 0; p < n; ++p) first_[p + 1] = first_[p] + degree[p + 1];
  const std::size_t halves = 2 * arcs_.size();
  head_.resize(halves);
  sister_.resize(halves);
  r_.resize(halves);
  half_of_arc_.resize(arcs_.size());
  arc_of_half_.resize(halves);
  std::vector<int> cursor(first_.begin(), first_.end() - 1);
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const NeighbourArc& a = arcs_[k];
    const int fwd = cursor[a.u]++;
    const int bwd = cursor[a.v]++;
    head_[fwd] = static_cast<int>(a.v);
    head_[bwd] = static_cast<int>(a.u);
    sister_[fwd] = bwd;
    sister_[bwd] = fwd;
    r_[fwd] = a.cap_uv;
    r_[bwd] = a.cap_vu;
    half_of_arc_[k] = fwd;
    arc_of_half_[fwd] = k;
    arc_of_half_[bwd] = k;
  }

  source_cap_ = net.source_cap;
  sink_cap_ = net.sink_cap;
  tr_.resize(n);
  for (std::size_t p = 0; p < n; ++p) tr_[p] = source_cap_[p] - sink_cap_[p];
  fixed_.assign(n, 0);
  frozen_flow_.assign(arcs_.size(), 0.0);
  dead_room_.assign(arcs_.size(), 0.0);
  dead_arc_.assign(arcs_.size(), 0);
  extra_sink_.assign(n, 0.0);

  parent_.assign(n, kNone);
  is_sink_.assign(n, 0);
  queued_.assign(n, 0);
  ts_.assign(n, 0);
  dist_.assign(n, 0);
  max_cap_ = net.max_capacity();

  for (std::size_t p = 0; p < n; ++p) {
    if (net.is_fixed(p)) fix_node(static_cast<std::uint32_t>(p));
  }
}

// Merges q into the sink: residual capacity toward q becomes residual
// capacity toward t.
void MaxflowSolver::fix_node(std::uint32_t q) {
  if (fixed_[q]) return;
  // Flow q already routes into its dead arcs becomes permanent.
  double left = dead_arc_share(q);
  for (int a = first_[q]; a < first_[q + 1]; ++a) {
    const std::size_t k = arc_of_half_[a];
    if (!dead_arc_[k]) continue;
    const double before = left;
    dead_arc_take(a, left);
    const double sent = before - left;
    frozen_flow_[k] += half_of_arc_[k] == a ? sent : -sent;
    dead_room_[k] = 0.0;
  }
  for (int a = first_[q]; a < first_[q + 1]; ++a) {
    const int p = head_[a];
    const int toward_q = sister_[a];
    const std::size_t k = arc_of_half_[a];
    if (fixed_[p]) continue;
    tr_[p] -= r_[toward_q];
    extra_sink_[p] += r_[toward_q];
    frozen_flow_[k] = arcs_[k].cap_uv - r_[half_of_arc_[k]];
    dead_room_[k] = r_[toward_q];
    dead_arc_[k] = 1;
    r_[a] = 0.0;
    r_[toward_q] = 0.0;
  }
  fixed_[q] = 1;
  tr_[q] = 0.0;
}

// Part of the virtual sink flow of free node p that really runs through
// its dead arcs: the real sink capacity is used first.
double MaxflowSolver::dead_arc_share(std::size_t p) const {
  const double w = (source_cap_[p] - sink_cap_[p] - extra_sink_[p]) - tr_[p];
  return std::clamp(-sink_cap_[p] - w, 0.0, extra_sink_[p]);
}

// Extra flow sent out of free node p along half arc a, drawn from `left`.
double MaxflowSolver::dead_arc_take(int a, double& left) const {
  const std::size_t k = arc_of_half_[a];
  const double sent = std::min(left, dead_room_[k]);
  left -= sent;
  return sent;
}

void MaxflowSolver::update(const FlowNetwork& net) {
  net.validate();
  if (net.node_count != tr_.size() || net.arcs != arcs_) {
    throw std::invalid_argument("solve_reusing: structural mismatch with previous network");
  }
  for (std::size_t p = 0; p < tr_.size(); ++p) {
    if (fixed_[p] && !net.is_fixed(p)) {
      throw std::invalid_argument("solve_reusing: a fixed node cannot be released");
    }
  }
  for (std::size_t p = 0; p < tr_.size(); ++p) {
    if (!fixed_[p]) {
      tr_[p] += (net.source_cap[p] - source_cap_[p]) - (net.sink_cap[p] - sink_cap_[p]);
    }
  }
  source_cap_ = net.source_cap;
  sink_cap_ = net.sink_cap;
  for (std::size_t p = 0; p < tr_.size(); ++p) {
    if (net.is_fixed(p)) fix_node(static_cast<std::uint32_t>(p));
  }
  max_cap_ = net.max_capacity();
}

double MaxflowSolver::arc_flow(std::size_t k) const {
  if (!dead_arc_[k]) return arcs_[k].cap_uv - r_[half_of_arc_[k]];
  const std::uint32_t u = arcs_[k].u;
  const std::uint32_t v = arcs_[k].v;
  if (fixed_[u] && fixed_[v]) return frozen_flow_[k];
  const std::uint32_t p = fixed_[u] ? v : u;
  double left = dead_arc_share(p);
  for (int a = first_[p]; a < first_[p + 1]; ++a) {
    if (!dead_arc_[arc_of_half_[a]]) continue;
    const double sent = dead_arc_take(a, left);
    if (arc_of_half_[a] == k) return frozen_flow_[k] + (p == u ? sent : -sent);
  }
  return frozen_flow_[k];
}

double MaxflowSolver::terminal_inflow(std::size_t p) const {
  if (!fixed_[p]) {
    const double w = (source_cap_[p] - sink_cap_[p] - extra_sink_[p]) - tr_[p];
    return std::max(w, -sink_cap_[p]);
  }
  double out = 0.0;
  for (int a = first_[p]; a < first_[p + 1]; ++a) {
    const std::size_t k = arc_of_half_[a];
    out += half_of_arc_[k] == a ? arc_flow(k) : -arc_flow(k);
  }
  return out;
}

void MaxflowSolver::activate(int i, bool front) {
  if (queued_[i]) return;
  queued_[i] = 1;
  if (front) {
    active_.push_front(i);
  } else {
    active_.push_back(i);
  }
}

int MaxflowSolver::next_active() {
  while (!active_.empty()) {
    const int i = active_.front();
    active_.pop_front();
    queued_[i] = 0;
    if (parent_[i] != kNone) return i;
  }
  return -1;
}

void MaxflowSolver::init_trees() {
  active_.clear();
  orphans_.clear();
  time_ = 0;
  const std::size_t n = tr_.size();
  for (std::size_t p = 0; p < n; ++p) {
    queued_[p] = 0;
    ts_[p] = 0;
    if (fixed_[p]) {
      parent_[p] = kNone;
      continue;
    }
    if (tr_[p] > eps_) {
      parent_[p] = kTerminal;
      is_sink_[p] = 0;
      dist_[p] = 1;
      activate(static_cast<int>(p));
    } else if (tr_[p] < -eps_) {
      parent_[p] = kTerminal;
      is_sink_[p] = 1;
      dist_[p] = 1;
      activate(static_cast<int>(p));
    } else {
      parent_[p] = kNone;
    }
  }
}

// Extends the tree of i by one layer. Returns a half-arc from the source tree
// into the sink tree when the trees touch, otherwise -1.
int MaxflowSolver::grow(int i) {
  if (!is_sink_[i]) {
    for (int a = first_[i]; a < first_[i + 1]; ++a) {
      if (r_[a] <= eps_) continue;
      const int j = head_[a];
      if (parent_[j] == kNone) {
        is_sink_[j] = 0;
        parent_[j] = sister_[a];
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
        activate(j);
      } else if (is_sink_[j]) {
        return a;
      } else if (ts_[j] <= ts_[i] && dist_[j] > dist_[i]) {
        parent_[j] = sister_[a];
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
      }
    }
  } else {
    for (int a = first_[i]; a < first_[i + 1]; ++a) {
      if (r_[sister_[a]] <= eps_) continue;
      const int j = head_[a];
      if (parent_[j] == kNone) {
        is_sink_[j] = 1;
        parent_[j] = sister_[a];
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
        activate(j);
      } else if (!is_sink_[j]) {
        return sister_[a];
      } else if (ts_[j] <= ts_[i] && dist_[j] > dist_[i]) {
        parent_[j] = sister_[a];
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
      }
    }
  }
  return -1;
}

void MaxflowSolver::augment(int middle) {
  double bottleneck = r_[middle];
  int i = head_[sister_[middle]];
  for (;; i = head_[parent_[i]]) {
    const int a = parent_[i];
    if (a == kTerminal) break;
    bottleneck = std::min(bottleneck, r_[sister_[a]]);
  }
  bottleneck = std::min(bottleneck, tr_[i]);
  i = head_[middle];
  for (;; i = head_[parent_[i]]) {
    const int a = parent_[i];
    if (a == kTerminal) break;
    bottleneck = std::min(bottleneck, r_[a]);
  }
  bottleneck = std::min(bottleneck, -tr_[i]);

  r_[sister_[middle]] += bottleneck;
  r_[middle] -= bottleneck;

  for (i = head_[sister_[middle]];;) {
    const int a = parent_[i];
    if (a == kTerminal) {
      tr_[i] -= bottleneck;
      if (tr_[i] <= eps_) {
        parent_[i] = kOrphan;
        orphans_.push_front(i);
      }
      break;
    }
    r_[a] += bottleneck;
    r_[sister_[a]] -= bottleneck;
    if (r_[sister_[a]] <= eps_) {
      parent_[i] = kOrphan;
      orphans_.push_front(i);
    }
    i = head_[a];
  }
  for (i = head_[middle];;) {
    const int a = parent_[i];
    if (a == kTerminal) {
      tr_[i] += bottleneck;
      if (tr_[i] >= -eps_) {
        parent_[i] = kOrphan;
        orphans_.push_front(i);
      }
      break;
    }
    r_[sister_[a]] += bottleneck;
    r_[a] -= bottleneck;
    if (r_[a] <= eps_) {
      parent_[i] = kOrphan;
      orphans_.push_front(i);
    }
    i = head_[a];
  }
}

// Distance from j to its terminal through valid parents, or kInfinity if
// the chain ends in an orphan. Marks visited nodes with the current time.
int MaxflowSolver::origin_distance(int j) {
  int d = 0;
  int k = j;
  while (true) {
    if (ts_[k] == time_) {
      d += dist_[k];
      break;
    }
    const int a = parent_[k];
    ++d;
    if (a == kTerminal) {
      ts_[k] = time_;
      dist_[k] = 1;
      break;
    }
    if (a == kOrphan) return kInfinity;
    k = head_[a];
  }
  for (k = j; ts_[k] != time_; k = head_[parent_[k]]) {
    ts_[k] = time_;
    dist_[k] = d--;
  }
  return dist_[j];
}

void MaxflowSolver::adopt_source_orphan(int i) {
  int best = kNone;
  int best_dist = kInfinity;
  for (int a = first_[i]; a < first_[i + 1]; ++a) {
    if (r_[sister_[a]] <= eps_) continue;
    const int j = head_[a];
    if (is_sink_[j] || parent_[j] == kNone) continue;
    const int d = origin_distance(j);
    if (d < best_dist) {
      best = a;
      best_dist = d;
    }
  }
  if (best != kNone) {
    parent_[i] = best;
    ts_[i] = time_;
    dist_[i] = best_dist + 1;
    return;
  }
  for (int a = first_[i]; a < first_[i + 1]; ++a) {
    const int j = head_[a];
    if (is_sink_[j] || parent_[j] == kNone) continue;
    if (r_[sister_[a]] > eps_) activate(j);
    const int pa = parent_[j];
    if (pa != kTerminal && pa != kOrphan && head_[pa] == i) {
      parent_[j] = kOrphan;
      orphans_.push_back(j);
    }
  }
  parent_[i] = kNone;
}

void MaxflowSolver::adopt_sink_orphan(int i) {
  int best = kNone;
  int best_dist = kInfinity;
  for (int a = first_[i]; a < first_[i + 1]; ++a) {
    if (r_[a] <= eps_) continue;
    const int j = head_[a];
    if (!is_sink_[j] || parent_[j] == kNone) continue;
    const int d = origin_distance(j);
    if (d < best_dist) {
      best = a;
      best_dist = d;
    }
  }
  if (best != kNone) {
    parent_[i] = best;
    ts_[i] = time_;
    dist_[i] = best_dist + 1;
    return;
  }
  for (int a = first_[i]; a < first_[i + 1]; ++a) {
    const int j = head_[a];
    if (!is_sink_[j] || parent_[j] == kNone) continue;
    if (r_[a] > eps_) activate(j);
    const int pa = parent_[j];
    if (pa != kTerminal && pa != kOrphan && head_[pa] == i) {
      parent_[j] = kOrphan;
      orphans_.push_back(j);
    }
  }
  parent_[i] = kNone;
}

void MaxflowSolver::adopt_orphans() {
  while (!orphans_.empty()) {
    const int i = orphans_.front();
    orphans_.pop_front();
    if (is_sink_[i]) {
      adopt_sink_orphan(i);
    } else {
      adopt_source_orphan(i);
    }
  }
}

CutResult MaxflowSolver::solve() {
  eps_ = kRelativeEps * max_cap_;
  init_trees();
  while (true) {
    const int i = next_active();
    if (i < 0) break;
    const int middle = grow(i);
    if (middle < 0) continue;
    if (++augmentations_ > kMaxAugmentations) {
      throw NumericalError("max-flow: augmentation limit exceeded");
    }
    ++time_;
    augment(middle);
    adopt_orphans();
    if (parent_[i] != kNone) activate(i, true);
  }
  return extract_cut();
}

CutResult MaxflowSolver::extract_cut() const {
  const std::size_t n = tr_.size();
  CutResult result;
  result.source_side.assign(n, 0);
  std::vector<std::uint8_t> reaches_sink(n, 0);
  std::vector<int> stack;

  for (std::size_t p = 0; p < n; ++p) {
    if (!fixed_[p] && tr_[p] > eps_) {
      result.source_side[p] = 1;
      stack.push_back(static_cast<int>(p));
    }
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int a = first_[i]; a < first_[i + 1]; ++a) {
      const int j = head_[a];
      if (r_[a] > eps_ && !result.source_side[j] && !fixed_[j]) {
        result.source_side[j] = 1;
        stack.push_back(j);
      }
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    if (!fixed_[p] && tr_[p] < -eps_) {
      reaches_sink[p] = 1;
      stack.push_back(static_cast<int>(p));
    }
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int a = first_[i]; a < first_[i + 1]; ++a) {
      const int j = head_[a];
      if (r_[sister_[a]] > eps_ && !reaches_sink[j] && !fixed_[j]) {
        reaches_sink[j] = 1;
        stack.push_back(j);
      }
    }
  }

  double flow = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    if (fixed_[p]) {
      flow += source_cap_[p];
      continue;
    }
    flow += source_cap_[p] - std::max(tr_[p], 0.0);
    if (!result.source_side[p] && !reaches_sink[p]) result.unique = false;
  }
  result.flow = flow;
  return result;
}

CutResult max_flow(const FlowNetwork& net) {
  MaxflowSolver solver(net);
  return solver.solve();
}

ReuseResult solve_reusing(const FlowNetwork& net, std::optional<MaxflowState> prev) {
  if (prev) {
    prev->update(net);
    CutResult cut = prev->solve();
    return {std::move(cut), std::move(*prev)};
  }
  MaxflowSolver solver(net);
  CutResult cut = solver.solve();
  return {std::move(cut), std::move(solver)};
}

}  // namespace hextv
