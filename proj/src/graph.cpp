#include "mdpforge/graph.hpp"

#include <cstdio>
#include <sstream>

namespace mdpforge::graph {

namespace {

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", p);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "0" && p > 0.0) return "<0.001";
  return s;
}

std::string format_reward_summary(const std::vector<RewardOutcome>& dist) {
  if (dist.size() == 1) return "r=" + format_value(dist.front().value);
  std::string out = "r∈{";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i) out += ",";
    out += format_value(dist[i].value) + ":" + format_probability(dist[i].probability);
  }
  return out + "}";
}

MdpGraph to_graph(const ValidatedMdp& m) {
  MdpGraph g;
  const std::size_t n_states = m.num_states();
  for (const auto& s : m.states()) {
    g.nodes.push_back({NodeKind::State, s.name, s.name, s.terminal, s.index, 0, {}});
  }
  for (std::size_t s = 0; s < n_states; ++s) {
    if (m.is_terminal(s)) continue;
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      const auto row = m.transition_row(s, a);
      bool any = false;
      for (double p : row) any = any || p > 0.0;
      if (!any) continue;

      const std::size_t choice = g.nodes.size();
      const auto& action = m.actions()[a];
      g.nodes.push_back({NodeKind::Choice, m.states()[s].name + "/" + action.name, action.name, false, s, a,
                         format_reward_summary(m.reward_distribution(s, a))});
      g.edges.push_back({s, choice, action.name, std::nullopt});
      for (std::size_t next = 0; next < n_states; ++next) {
        if (row[next] > 0.0) g.edges.push_back({choice, next, format_probability(row[next]), row[next]});
      }
    }
  }
  return g;
}

std::string to_dot(const MdpGraph& g, const DotOptions& options) {
  std::ostringstream out;
  out << "digraph mdp {\n";
  out << "  rankdir=LR;\n";
  for (const auto& node : g.nodes) {
    out << "  " << quote(node.id) << " [";
    if (node.kind == NodeKind::State) {
      out << "shape=" << (node.terminal ? "doublecircle" : "circle");
      if (options.highlight_state && *options.highlight_state == node.state) {
        out << ", style=filled, fillcolor=\"gold\"";
      }
    } else {
      out << "shape=point, xlabel=" << quote(node.reward_label);
    }
    out << "];\n";
  }
  for (const auto& edge : g.edges) {
    out << "  " << quote(g.nodes[edge.from].id) << " -> " << quote(g.nodes[edge.to].id)
        << " [label=" << quote(edge.label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mdpforge::graph
