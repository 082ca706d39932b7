#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amra/core/domain.hpp"
#include "amra/core/open_list.hpp"
#include "amra/core/types.hpp"

namespace amra {

/// Per-state bookkeeping. Queue membership lives in the OpenList handles.
struct SearchNode {
  Cost g = kInfinity;
  NodeId bp = kNoNode;
  int bp_action = -1;
  Cost bp_cost = 0;
  ResolutionMask closed = 0;  // bit r set <=> state is in CLOSED_r
  ResolutionMask resolutions = 0;
  bool incons = false;
  std::uint32_t expansions = 0;  // within the current iteration
  std::uint32_t stamp = 0;       // iteration that `expansions` refers to

  static constexpr NodeId kNoNode = static_cast<NodeId>(-1);
};

enum class PlanStatus {
  kComplete,         // ran every scheduled iteration
  kNoPath,           // the first iteration exhausted the union graph
  kBudgetExhausted,  // time or expansion budget hit
};

enum class ImproveResult { kFound, kExhausted, kInterrupted };

template <typename State>
struct PlanResult {
  PlanStatus status = PlanStatus::kNoPath;
  std::vector<SolutionRecord<State>> solutions;  // in publication order
  IterationStats stats;                          // cumulative at termination
  int iterations = 0;
  double elapsed_ms = 0;

  [[nodiscard]] bool solved() const noexcept { return !solutions.empty(); }
  [[nodiscard]] const SolutionRecord<State>& best() const { return solutions.back(); }
};

/// Anytime multi-resolution multi-heuristic search over a SearchDomain.
///
/// Queue 0 is the anchor: it searches the union action space with a
/// consistent heuristic. Queues 1..M search the resolution named by their
/// HeuristicSpec. An inadmissible queue may expand only while its minimum key
/// stays within w2 times the anchor minimum. Expanded states are closed per
/// resolution, so a state is expanded at most N + 1 times per iteration.
template <SearchDomain D>
class AmraPlanner {
 public:
  using State = typename D::State;
  using Solution = SolutionRecord<State>;
  using SolutionCallback = std::function<void(const Solution&)>;

  struct ExpansionEvent {
    NodeId node;
    int queue;
    int resolution;
    Cost key;  // key the state was popped with
  };
  /// Called after every expansion, once the state has been closed.
  using ExpansionObserver = std::function<void(const AmraPlanner&, const ExpansionEvent&)>;

  AmraPlanner(const D& domain, std::vector<HeuristicSpec<State>> heuristics, PlannerConfig config = {})
      : domain_(&domain), heuristics_(std::move(heuristics)), config_(std::move(config)) {
    config_.validate();
    const int n = domain_->num_resolutions();
    if (n < 1 || n > kMaxResolutions) throw ContractViolation("domain must expose 1..31 resolutions");
    if (heuristics_.empty() || heuristics_[0].res != 0)
      throw ContractViolation("heuristic 0 must be the anchor (res 0)");
    std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
    for (std::size_t i = 0; i < heuristics_.size(); ++i) {
      const auto& h = heuristics_[i];
      if (!h.evaluate) throw ContractViolation("heuristic " + std::to_string(i) + " has no evaluator");
      if (i > 0 && (h.res < 1 || h.res > n))
        throw ContractViolation("heuristic " + std::to_string(i) + " names resolution outside 1..N");
      covered[static_cast<std::size_t>(h.res)] = true;
    }
    // Anchor-only (M = 0) is the wA*/ARA* configuration; otherwise every
    // resolution needs a queue.
    if (heuristics_.size() > 1) {
      for (int r = 1; r <= n; ++r) {
        if (!covered[static_cast<std::size_t>(r)])
          throw ContractViolation("resolution " + std::to_string(r) + " has no heuristic");
      }
    }
    for (std::size_t i = 0; i < heuristics_.size(); ++i) queues_.emplace_back(config_.tie_break);
  }

  void set_expansion_observer(ExpansionObserver obs) { observer_ = std::move(obs); }

  /// Runs the anytime loop and publishes each solution through `on_solution`.
  PlanResult<State> plan(const State& start, GoalTest<State> goal, SolutionCallback on_solution = {}) {
    PlanResult<State> result;
    initialize(start, std::move(goal));
    double w1 = config_.w1_init;
    double w2 = config_.w2_init;

    for (;;) {
      set_weights(w1, w2);
      begin_iteration();
      const ImproveResult outcome = improve_path();
      ++result.iterations;

      if (outcome == ImproveResult::kInterrupted) {
        result.status = PlanStatus::kBudgetExhausted;
        break;
      }
      if (outcome == ImproveResult::kFound) {
        publish(trace(goal_node_), result, on_solution);
      } else if (result.solutions.empty()) {
        result.status = PlanStatus::kNoPath;
        break;
      } else {
        // Nothing left to expand at this weight: every g-value already meets
        // the current bound, so the best path is re-published under it.
        publish(result.solutions.back(), result, on_solution);
      }
      result.status = PlanStatus::kComplete;
      if (!config_.anytime || (w1 == 1.0 && w2 == 1.0)) break;
      std::tie(w1, w2) = config_.weight_schedule.next(w1, w2);
    }
    stats_.open_sizes = open_sizes();
    result.stats = stats_;
    result.elapsed_ms = elapsed_ms();
    return result;
  }

  // -- step-level interface -------------------------------------------------

  /// Resets all search state and seeds INCONS with the start.
  void initialize(const State& start, GoalTest<State> goal) {
    nodes_.clear();
    states_.clear();
    index_.clear();
    h_cache_.clear();
    incons_.clear();
    for (auto& q : queues_) q.clear();
    goal_ = std::move(goal);
    goal_node_ = SearchNode::kNoNode;
    iteration_ = 0;
    seq_ = 0;
    last_queue_ = 0;
    stats_ = {};
    stats_.expansions_per_queue.assign(queues_.size(), 0);
    stats_.expansions_per_resolution.assign(static_cast<std::size_t>(num_resolutions()) + 1, 0);
    started_ = Clock::now();
    if (!goal_) throw ContractViolation("goal test is empty");

    const NodeId s = node_for(start);
    if (nodes_[s].resolutions == 0) throw ContractViolation("start lies on no resolution");
    nodes_[s].g = 0;
    nodes_[s].bp = SearchNode::kNoNode;
    add_incons(s);
  }

  void set_weights(double w1, double w2) {
    if (!(w1 >= 1) || !(w2 >= 1)) throw ContractViolation("weights must be >= 1");
    w1_ = w1;
    w2_ = w2;
  }

  /// Iteration preamble: INCONS into the anchor, anchor keys refreshed for the
  /// current w1, CLOSED cleared, inadmissible queues seeded from the anchor.
  void begin_iteration() {
    ++iteration_;
    for (NodeId x : incons_) {
      nodes_[x].incons = false;
      queues_[0].push_or_update(x, key(x, 0), h(x, 0), ++seq_);
    }
    incons_.clear();
    for (std::size_t i = 0; i < queues_.size(); ++i) {
      queues_[i].rekey_all([this, i](NodeId x) { return key(x, static_cast<int>(i)); });
    }
    for (auto& n : nodes_) n.closed = 0;

    std::vector<NodeId> anchor_states;
    anchor_states.reserve(queues_[0].size());
    for (const auto& e : queues_[0].entries()) anchor_states.push_back(e.node);
    for (NodeId x : anchor_states) {
      const Cost anchor_key = key(x, 0);
      for (int j = 1; j < num_queues(); ++j) {
        if (!has_resolution(nodes_[x].resolutions, res_of_queue(j))) continue;
        const Cost kj = key(x, j);
        if (!(kj <= w2_ * anchor_key)) continue;
        const auto* present = queues_[static_cast<std::size_t>(j)].find(x);
        if (present != nullptr && present->key == kj) continue;
        queues_[static_cast<std::size_t>(j)].push_or_update(x, kj, h(x, j), ++seq_);
      }
    }
    stats_.expansions_iteration = 0;
    stats_.max_expansions_of_any_state = 0;
  }

  /// Expands until a goal state is expanded or the anchor queue empties.
  ImproveResult improve_path() {
    while (!queues_[0].empty()) {
      if (budget_exceeded()) return ImproveResult::kInterrupted;
      const int i = choose_queue();
      NodeId x;
      int r;
      Cost popped_key;
      if (i != 0 && queues_[static_cast<std::size_t>(i)].min_key() <= w2_ * queues_[0].min_key()) {
        const auto e = queues_[static_cast<std::size_t>(i)].pop();
        x = e.node;
        popped_key = e.key;
        expand(x, i);
        r = res_of_queue(i);
        nodes_[x].closed |= resolution_bit(r);
        notify(x, i, r, popped_key);
      } else {
        const auto e = queues_[0].pop();
        x = e.node;
        popped_key = e.key;
        expand(x, 0);
        r = 0;
        nodes_[x].closed |= resolution_bit(0);
        notify(x, 0, 0, popped_key);
      }
      if (goal_(states_[x])) {
        goal_node_ = x;
        return ImproveResult::kFound;
      }
    }
    return ImproveResult::kExhausted;
  }

  /// Round robin over the non-empty inadmissible queues; 0 when all are empty
  /// (the caller then expands from the anchor).
  int choose_queue() {
    const int m = num_queues() - 1;
    for (int step = 1; step <= m; ++step) {
      const int c = ((last_queue_ + step - 1) % m) + 1;
      if (!queues_[static_cast<std::size_t>(c)].empty()) {
        last_queue_ = c;
        return c;
      }
    }
    return 0;
  }

  /// Generates the successors of x at Res(i) and relaxes them. x must already
  /// have been popped from queue i.
  void expand(NodeId x, int i) {
    const int r = res_of_queue(i);
    if (i != 0) {
      for (int j = 1; j < num_queues(); ++j) {
        if (j != i && res_of_queue(j) == r) queues_[static_cast<std::size_t>(j)].remove(x);
      }
    }
    count_expansion(x, i, r);

    succ_buf_.clear();
    successors_at(*domain_, states_[x], r, succ_buf_);
    const Cost gx = nodes_[x].g;
    for (const auto& edge : succ_buf_) {
      const NodeId y = node_for(edge.to);
      const Cost candidate = gx + edge.cost;
      if (!(nodes_[y].g > candidate)) continue;
      auto& ny = nodes_[y];
      ny.g = candidate;
      ny.bp = x;
      ny.bp_action = edge.action;
      ny.bp_cost = edge.cost;
      if (has_resolution(ny.closed, 0)) {
        add_incons(y);
        continue;
      }
      const Cost anchor_key = key(y, 0);
      queues_[0].push_or_update(y, anchor_key, h(y, 0), ++seq_);
      for (int j = 1; j < num_queues(); ++j) {
        const int l = res_of_queue(j);
        if (!has_resolution(ny.resolutions, l)) continue;
        if (has_resolution(ny.closed, l)) continue;
        const Cost kj = key(y, j);
        if (kj <= w2_ * anchor_key) queues_[static_cast<std::size_t>(j)].push_or_update(y, kj, h(y, j), ++seq_);
      }
    }
  }

  /// g(x) + w1 * h_i(x).
  [[nodiscard]] Cost key(NodeId x, int i) const {
    if (x >= nodes_.size() || nodes_[x].g == kInfinity) throw ContractViolation("key() of an undiscovered state");
    const Cost g = nodes_[x].g;
    return g + w1_ * h(x, i);
  }

  /// Path from the start to `goal` along backpointers. Costs are re-summed
  /// from the stored edge costs.
  [[nodiscard]] Solution trace(NodeId goal) const {
    Solution sol;
    std::vector<NodeId> chain;
    for (NodeId v = goal; v != SearchNode::kNoNode; v = nodes_[v].bp) {
      chain.push_back(v);
      if (chain.size() > nodes_.size()) throw ContractViolation("backpointer cycle");
    }
    std::reverse(chain.begin(), chain.end());
    Cost g = 0;
    for (NodeId v : chain) {
      const auto& n = nodes_[v];
      if (n.bp != SearchNode::kNoNode) g += n.bp_cost;
      sol.path.push_back({states_[v], n.bp == SearchNode::kNoNode ? -1 : n.bp_action, g});
    }
    sol.cost = g;
    return sol;
  }

  /// Structural queue invariants; returns a description of the first
  /// violation, or nullopt.
  [[nodiscard]] std::optional<std::string> check_queue_invariants() const {
    for (std::size_t j = 0; j < queues_.size(); ++j) {
      const int r = res_of_queue(static_cast<int>(j));
      for (const auto& e : queues_[j].entries()) {
        const auto& n = nodes_[e.node];
        if (queues_[j].find(e.node) != &e) return "queue " + std::to_string(j) + ": stale handle";
        if (has_resolution(n.closed, r))
          return "queue " + std::to_string(j) + " holds a state closed at resolution " + std::to_string(r);
        if (j > 0 && !has_resolution(n.resolutions, r))
          return "queue " + std::to_string(j) + " holds a state off its resolution";
        if (j == 0 && n.incons) return "state both in INCONS and the anchor queue";
      }
    }
    for (NodeId x : incons_) {
      if (!has_resolution(nodes_[x].closed, 0)) return "INCONS state not anchor-closed";
    }
    return std::nullopt;
  }

  // -- accessors -------------------------------------------------------------

  [[nodiscard]] int num_queues() const noexcept { return static_cast<int>(queues_.size()); }
  [[nodiscard]] int num_resolutions() const { return domain_->num_resolutions(); }
  [[nodiscard]] int res_of_queue(int i) const { return heuristics_[static_cast<std::size_t>(i)].res; }
  [[nodiscard]] const OpenList& queue(int i) const { return queues_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const SearchNode& node(NodeId x) const { return nodes_.at(x); }
  [[nodiscard]] const State& state(NodeId x) const { return states_.at(x); }
  [[nodiscard]] std::size_t num_nodes() const noexcept { return nodes_.size(); }
  [[nodiscard]] const std::vector<NodeId>& incons() const noexcept { return incons_; }
  [[nodiscard]] const IterationStats& stats() const noexcept { return stats_; }
  [[nodiscard]] double w1() const noexcept { return w1_; }
  [[nodiscard]] double w2() const noexcept { return w2_; }
  [[nodiscard]] NodeId goal_node() const noexcept { return goal_node_; }
  [[nodiscard]] const D& domain() const noexcept { return *domain_; }
  [[nodiscard]] const PlannerConfig& config() const noexcept { return config_; }

  [[nodiscard]] std::optional<NodeId> find(const State& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] Cost h(NodeId x, int i) const {
    return h_cache_[static_cast<std::size_t>(x) * heuristics_.size() + static_cast<std::size_t>(i)];
  }

 private:
  using Clock = std::chrono::steady_clock;

  NodeId node_for(const State& s) {
    auto [it, inserted] = index_.try_emplace(s, static_cast<NodeId>(nodes_.size()));
    if (!inserted) return it->second;
    SearchNode n;
    n.resolutions = domain_->resolutions_of(s);
    nodes_.push_back(n);
    states_.push_back(s);
    for (const auto& spec : heuristics_) {
      const Cost v = spec.evaluate(s);
      if (!(v >= 0)) throw ContractViolation("heuristic '" + spec.name + "' returned a negative or NaN value");
      h_cache_.push_back(v);
    }
    return it->second;
  }

  void add_incons(NodeId x) {
    if (nodes_[x].incons) return;
    nodes_[x].incons = true;
    incons_.push_back(x);
  }

  void count_expansion(NodeId x, int i, int r) {
    auto& n = nodes_[x];
    if (n.stamp != iteration_) {
      n.stamp = iteration_;
      n.expansions = 0;
    }
    ++n.expansions;
    stats_.max_expansions_of_any_state = std::max(stats_.max_expansions_of_any_state, n.expansions);
    ++stats_.expansions_total;
    ++stats_.expansions_iteration;
    ++stats_.expansions_per_queue[static_cast<std::size_t>(i)];
    ++stats_.expansions_per_resolution[static_cast<std::size_t>(r)];
  }

  void notify(NodeId x, int i, int r, Cost k) {
    if (observer_) observer_(*this, ExpansionEvent{x, i, r, k});
  }

  bool budget_exceeded() const {
    if (config_.expansion_budget && stats_.expansions_total >= *config_.expansion_budget) return true;
    if (config_.time_budget && Clock::now() - started_ >= *config_.time_budget) return true;
    return false;
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - started_).count();
  }

  std::vector<std::size_t> open_sizes() const {
    std::vector<std::size_t> sizes;
    for (const auto& q : queues_) sizes.push_back(q.size());
    return sizes;
  }

  // A later iteration can reach a goal along a path that is no cheaper than
  // the best one so far; the best path is then kept and re-published under
  // the tighter bound, which it also satisfies.
  void publish(Solution candidate, PlanResult<State>& result, const SolutionCallback& cb) {
    if (!result.solutions.empty() && result.solutions.back().cost < candidate.cost) {
      candidate.path = result.solutions.back().path;
      candidate.cost = result.solutions.back().cost;
    }
    candidate.w1 = w1_;
    candidate.w2 = w2_;
    candidate.bound = w1_ * w2_;
    candidate.iteration = iteration_;
    candidate.stats = stats_;
    candidate.stats.time_to_publish_ms = elapsed_ms();
    candidate.stats.open_sizes = open_sizes();
    result.solutions.push_back(candidate);
    if (cb) cb(result.solutions.back());
  }

  const D* domain_;
  std::vector<HeuristicSpec<State>> heuristics_;
  PlannerConfig config_;
  std::vector<OpenList> queues_;

  std::vector<SearchNode> nodes_;
  std::vector<State> states_;
  std::unordered_map<State, NodeId> index_;
  std::vector<Cost> h_cache_;
  std::vector<NodeId> incons_;
  std::vector<Edge<State>> succ_buf_;

  GoalTest<State> goal_;
  NodeId goal_node_ = SearchNode::kNoNode;
  double w1_ = 1;
  double w2_ = 1;
  std::uint32_t iteration_ = 0;
  std::uint64_t seq_ = 0;
  int last_queue_ = 0;
  IterationStats stats_;
  Clock::time_point started_{};
  ExpansionObserver observer_;
};

}  // namespace amra
