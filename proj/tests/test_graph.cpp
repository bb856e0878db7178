#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dot_checker.hpp"
#include "mdpforge/dsl.hpp"
#include "mdpforge/examples.hpp"
#include "mdpforge/graph.hpp"
#include "random_mdp.hpp"

using namespace mdpforge;
using namespace mdpforge::graph;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("probability and reward labels") {
  CHECK(format_probability(1.0) == "1");
  CHECK(format_probability(0.75) == "0.75");
  CHECK(format_probability(0.5) == "0.5");
  CHECK(format_probability(1.0 / 3.0) == "0.333");
  CHECK(format_probability(2.0 / 3.0) == "0.667");
  CHECK(format_probability(0.0004) == "<0.001");
  CHECK(format_probability(0.0) == "0");
  CHECK(format_reward_summary({{0.0, 1.0}}) == "r=0");
  CHECK(format_reward_summary({{-0.0, 1.0}}) == "r=0");
  CHECK(format_reward_summary({{2.5, 1.0}}) == "r=2.5");
  CHECK(format_reward_summary({{-1.0, 0.5}, {1.0, 0.5}}) == "r∈{-1:0.5,1:0.5}");
}

TEST_CASE("one-round graph structure") {
  const auto g = to_graph(examples::one_round_dmdp());
  CHECK(g.nodes.size() == 4);
  CHECK(g.edges.size() == 4);
  CHECK(g.nodes[0].id == "start");
  CHECK(g.nodes[1].terminal);
  CHECK(g.nodes[2].kind == NodeKind::Choice);
  CHECK(g.nodes[2].id == "start/a0");
  CHECK(g.nodes[2].reward_label == "r=0");
  CHECK(g.nodes[3].reward_label == "r=1");
  CHECK(g.edges[0].label == "a0");
  CHECK_FALSE(g.edges[0].probability.has_value());
  CHECK(g.edges[1].label == "1");
  CHECK(g.edges[1].probability == 1.0);
}

TEST_CASE("three-quarter loop has two probability edges") {
  const auto m = dsl::load_spec(
      "state s\nterminal next_state\naction act\n"
      "s & act > reward(-1.) | reward(1.)\n"
      "s & act > s * 3 | next_state\n");
  const auto g = to_graph(m);
  REQUIRE(g.nodes.size() == 3);
  REQUIRE(g.edges.size() == 3);
  CHECK(g.nodes[2].reward_label == "r∈{-1:0.5,1:0.5}");
  CHECK(g.edges[1].to == 0);
  CHECK(g.edges[1].label == "0.75");
  CHECK(g.edges[2].to == 1);
  CHECK(g.edges[2].label == "0.25");
}

TEST_CASE("models without outcomes have only state nodes") {
  MdpSpec spec;
  spec.add_state("x", true);
  spec.add_state("y", true);
  spec.add_action();
  const auto g = to_graph(validate(spec));
  CHECK(g.nodes.size() == 2);
  CHECK(g.edges.empty());
  CHECK(to_dot(g) ==
        "digraph mdp {\n"
        "  rankdir=LR;\n"
        "  \"x\" [shape=doublecircle];\n"
        "  \"y\" [shape=doublecircle];\n"
        "}\n");
  // Terminal pairs never get a choice node.
  const auto one = to_graph(examples::one_round_dmdp());
  for (const auto& node : one.nodes) CHECK_FALSE((node.kind == NodeKind::Choice && node.state == 1));
}

TEST_CASE("labels with quotes are escaped") {
  Node node;
  node.id = "a\"b\\c";
  MdpGraph g{{node}, {}};
  const auto parsed = testing::parse_dot(to_dot(g));
  REQUIRE(parsed.nodes.size() == 1);
  CHECK(parsed.nodes[0].id == "a\"b\\c");
}

TEST_CASE("DOT goldens for all examples") {
  for (const auto& example : examples::all()) {
    CAPTURE(example.name);
    const std::string dot = to_dot(to_graph(example.build()));
    std::string golden_name(example.fixture);
    golden_name.replace(golden_name.size() - 4, 4, ".dot");
    CHECK(dot == read_file(std::string(MDPFORGE_GOLDEN_DIR "/") + golden_name));
    CHECK(dot == to_dot(to_graph(example.build())));
  }
}

TEST_CASE("property: emitted DOT parses and preserves the graph") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = testing::random_mdp(rng);
    const auto g = to_graph(m);
    const auto parsed = testing::parse_dot(to_dot(g));
    CHECK(parsed.directed);
    REQUIRE(parsed.nodes.size() == g.nodes.size());
    REQUIRE(parsed.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      CHECK(parsed.nodes[i].id == g.nodes[i].id);
      const auto& shape = parsed.nodes[i].attrs.at("shape");
      if (g.nodes[i].kind == NodeKind::Choice) {
        CHECK(shape == "point");
      } else {
        CHECK(shape == (g.nodes[i].terminal ? "doublecircle" : "circle"));
      }
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      CHECK(parsed.edges[i].from == g.nodes[g.edges[i].from].id);
      CHECK(parsed.edges[i].to == g.nodes[g.edges[i].to].id);
      CHECK(parsed.edges[i].attrs.at("label") == g.edges[i].label);
    }
  }
}

TEST_CASE("property: every nonzero transition is exactly one edge") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = testing::random_mdp(rng);
    const auto g = to_graph(m);
    std::size_t choices = 0;
    std::map<std::pair<std::size_t, std::size_t>, int> seen;
    std::map<std::size_t, double> mass;
    for (const auto& e : g.edges) {
      if (!e.probability) continue;
      const auto& choice = g.nodes[e.from];
      CHECK(*e.probability > 0.0);
      CHECK(*e.probability <= 1.0);
      CHECK(*e.probability == m.transition(choice.state, choice.action, e.to));
      ++seen[{choice.state * m.num_actions() + choice.action, e.to}];
      mass[e.from] += *e.probability;
    }
    for (const auto& node : g.nodes) choices += node.kind == NodeKind::Choice ? 1 : 0;
    std::size_t nonzero = 0, pairs = 0;
    for (std::size_t s = 0; s < m.num_states(); ++s) {
      for (std::size_t a = 0; a < m.num_actions(); ++a) {
        bool any = false;
        for (std::size_t t = 0; t < m.num_states(); ++t) {
          if (m.transition(s, a, t) > 0.0) {
            ++nonzero;
            any = true;
            CHECK(seen[{s * m.num_actions() + a, t}] == 1);
          }
        }
        pairs += any ? 1 : 0;
      }
    }
    CHECK(seen.size() == nonzero);
    CHECK(choices == pairs);
    CHECK(g.nodes.size() == m.num_states() + pairs);
    for (const auto& [node, total] : mass) CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}
