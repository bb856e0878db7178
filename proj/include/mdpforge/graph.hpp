#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdpforge/core.hpp"

namespace mdpforge::graph {

enum class NodeKind { State, Choice };

/// State nodes come first, in state index order; choice nodes follow in
/// (state, action) order. A choice node exists for every (state, action) with
/// at least one outcome, which after validation means every non-terminal pair.
struct Node {
  NodeKind kind = NodeKind::State;
  std::string id;
  std::string label;
  bool terminal = false;
  std::size_t state = 0;
  std::size_t action = 0;    // choice nodes only
  std::string reward_label;  // choice nodes only
};

struct Edge {
  std::size_t from = 0;  // node indices
  std::size_t to = 0;
  std::string label;
  std::optional<double> probability;  // choice -> state edges
};

struct MdpGraph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

MdpGraph to_graph(const ValidatedMdp& m);

struct DotOptions {
  /// State whose node is filled, e.g. the current state of a session.
  std::optional<std::size_t> highlight_state;
};

/// Graphviz DOT text. Output is byte-stable: emission order follows node and
/// edge order in the graph.
std::string to_dot(const MdpGraph& g, const DotOptions& options = {});

/// Up to three decimals, trailing zeros trimmed ("0.75", "1", "0.333").
/// Positive values that would print as zero print as "<0.001".
std::string format_probability(double p);

/// "r=<v>" for a point mass, "r∈{v1:p1,v2:p2,...}" otherwise.
std::string format_reward_summary(const std::vector<RewardOutcome>& dist);

}  // namespace mdpforge::graph
