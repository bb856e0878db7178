#include "doctest.h"
#include "json.hpp"
#include "mdpforge/examples.hpp"
#include "mdpforge/report.hpp"

using namespace mdpforge;

TEST_CASE("rounding to twelve significant digits") {
  CHECK(report::round_significant(0.1 + 0.2) == 0.3);
  CHECK(report::round_significant(1.0 - 1e-15) == 1.0);
  CHECK(report::round_significant(123456.7890123456) == 123456.789012);
  CHECK(report::round_significant(-0.0) == 0.0);
  CHECK(report::round_significant(1e-300) == 1e-300);
}

TEST_CASE("solve JSON for the one-round model") {
  const auto m = examples::one_round_dmdp();
  const auto v = solve_lp(m);
  const auto q = compute_q_table(m, v);
  const std::string text = report::solve_json(m, v, q);
  CHECK(text ==
        "{\"version\":1,\"gamma\":1,\"states\":[\"start\",\"end\"],\"actions\":[\"a0\",\"a1\"],"
        "\"v\":[1,0],\"q\":[[0,1],[0,0]]}\n");
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["v"] == nlohmann::json::array({1, 0}));
}

TEST_CASE("solve text table") {
  const auto m = examples::one_round_dmdp().with_discount(0.5);
  const auto v = solve_lp(m);
  const auto q = compute_q_table(m, v);
  CHECK(report::solve_text(m, v, q) ==
        "gamma: 0.5\n"
        "state  v   q[a0]  q[a1]\n"
        "start  1   0      1\n"
        "end    0   0      0\n");
}

TEST_CASE("step lines and summary") {
  CHECK(report::step_json({3, 1, 0, -0.5, false, 2}) == "{\"t\":3,\"s\":1,\"a\":0,\"r\":-0.5,\"done\":false}");
  CHECK(report::step_json({0, 0, 1, 1.0, true, 1}) == "{\"t\":0,\"s\":0,\"a\":1,\"r\":1,\"done\":true}");

  Episode a;
  a.steps = {{0, 0, 1, 1.0, true, 1}};
  a.total_reward = 1.0;
  Episode b;
  b.steps = {{0, 0, 0, 0.0, false, 0}, {1, 0, 0, 0.0, false, 0}};
  b.truncated = true;
  const auto s = report::summarize({a, b});
  CHECK(s.episodes == 2);
  CHECK(s.mean_return == 0.5);
  CHECK(s.mean_length == 1.5);
  CHECK(s.truncated == 1);
  CHECK(report::summary_json(s) ==
        "{\"version\":1,\"summary\":{\"episodes\":2,\"mean_return\":0.5,\"mean_length\":1.5,\"truncated\":1}}");
  const std::string log = report::trajectory_log({a, b});
  CHECK(log ==
        "{\"t\":0,\"s\":0,\"a\":1,\"r\":1,\"done\":true}\n"
        "{\"t\":0,\"s\":0,\"a\":0,\"r\":0,\"done\":false}\n"
        "{\"t\":1,\"s\":0,\"a\":0,\"r\":0,\"done\":false}\n" +
            report::summary_json(s) + "\n");
}
