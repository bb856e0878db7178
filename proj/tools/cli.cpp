#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdpforge/dsl.hpp"
#include "mdpforge/examples.hpp"
#include "mdpforge/graph.hpp"
#include "mdpforge/kernels.hpp"
#include "mdpforge/report.hpp"
#include "mdpforge/solver.hpp"

namespace mdpforge::cli {

namespace {

struct Config {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  std::size_t episodes = 1;
  std::size_t max_steps = 10000;
  std::optional<double> gamma;
  std::string output;  // empty: stdout
  std::string format = "text";
  bool allow_missing = false;
  std::string policy = "random";
  std::string png;
};

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorCategory::Io, "cannot write '" + cfg.output + "'");
}

ValidatedMdp load(const Config& cfg) {
  ValidatedMdp m = dsl::load_spec_file(cfg.input, {.allow_missing = cfg.allow_missing});
  if (cfg.gamma) m = m.with_discount(*cfg.gamma);
  return m;
}

std::size_t count_transitions(const ValidatedMdp& m) {
  std::size_t n = 0;
  for (double p : m.transition_tensor()) n += p > 0.0 ? 1 : 0;
  return n;
}

int cmd_validate(const Config& cfg, std::ostream& out) {
  const ValidatedMdp m = load(cfg);
  if (cfg.format == "json") {
    nlohmann::ordered_json doc;
    doc["version"] = report::kSchemaVersion;
    doc["states"] = m.num_states();
    doc["actions"] = m.num_actions();
    doc["transitions"] = count_transitions(m);
    emit(cfg, doc.dump() + "\n", out);
  } else {
    emit(cfg,
         std::to_string(m.num_states()) + " states, " + std::to_string(m.num_actions()) + " actions, " +
             std::to_string(count_transitions(m)) + " transitions\n",
         out);
  }
  return 0;
}

int cmd_solve(const Config& cfg, std::ostream& out) {
  const ValidatedMdp m = load(cfg);
  const ValueFunction v = solve_lp(m);
  const QTable q = compute_q_table(m, v);
  emit(cfg, cfg.format == "json" ? report::solve_json(m, v, q) : report::solve_text(m, v, q), out);
  return 0;
}

int cmd_render(const Config& cfg, std::ostream& out) {
  const ValidatedMdp m = load(cfg);
  const std::string dot = graph::to_dot(graph::to_graph(m));
  if (!cfg.png.empty()) {
    if (std::system("command -v dot >/dev/null 2>&1") != 0) {
      throw Error(ErrorCategory::Io, "--png needs the Graphviz 'dot' executable on PATH");
    }
    const std::string command = "dot -Tpng -o '" + cfg.png + "'";
    FILE* pipe = popen(command.c_str(), "w");
    if (!pipe) throw Error(ErrorCategory::Io, "cannot run dot");
    std::fwrite(dot.data(), 1, dot.size(), pipe);
    if (pclose(pipe) != 0) throw Error(ErrorCategory::Io, "dot failed to write '" + cfg.png + "'");
    if (cfg.output.empty()) return 0;
  }
  emit(cfg, dot, out);
  return 0;
}

int cmd_simulate(const Config& cfg, std::ostream& out) {
  const ValidatedMdp m = load(cfg);
  const auto episodes = kernels::random_rollouts(kernels::Backend::OpenMP, m, cfg.seed, cfg.episodes, cfg.max_steps);
  emit(cfg, report::trajectory_log(episodes), out);
  return 0;
}

int cmd_examples(const Config& cfg, std::ostream& out) {
  std::ostringstream text;
  nlohmann::ordered_json doc;
  doc["version"] = report::kSchemaVersion;
  doc["examples"] = nlohmann::ordered_json::array();
  for (const auto& example : examples::all()) {
    const ValidatedMdp m = example.build();
    const ValueFunction v = solve_lp(m);
    const double initial = report::round_significant(v[0]);
    text << example.name << "  fixtures/" << example.fixture << "  " << m.num_states() << " states, "
         << m.num_actions() << " actions, v(" << m.states()[0].name << ")=" << initial << "\n";
    doc["examples"].push_back({{"name", example.name},
                               {"fixture", example.fixture},
                               {"states", m.num_states()},
                               {"actions", m.num_actions()},
                               {"initial_value", initial}});
  }
  emit(cfg, cfg.format == "json" ? doc.dump() + "\n" : text.str(), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Define, validate, solve, render and simulate small Markov decision processes.", "mdpforge"};
  app.require_subcommand(1);
  Config cfg;

  auto add_input = [&cfg](CLI::App* cmd) {
    cmd->add_option("input", cfg.input, "MDP description (.mdp)")->required();
    cmd->add_flag("--allow-missing", cfg.allow_missing,
                  "Give uncovered (state, action) pairs a zero-reward self-loop instead of failing");
    cmd->add_option("-o,--output", cfg.output, "Write results to this file instead of stdout");
  };
  auto add_format = [&cfg](CLI::App* cmd) {
    cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a model and print its size");
  add_input(validate_cmd);
  add_format(validate_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Optimal state values and Q-table by linear programming");
  add_input(solve_cmd);
  add_format(solve_cmd);
  solve_cmd->add_option("--gamma", cfg.gamma, "Override the model's discount")->check(CLI::Range(0.0, 1.0));

  auto* render_cmd = app.add_subcommand("render", "Emit the model graph as Graphviz DOT");
  add_input(render_cmd);
  render_cmd->add_option("--png", cfg.png, "Also rasterize with an external 'dot' executable");

  auto* simulate_cmd = app.add_subcommand("simulate", "Run random-policy episodes and log them as JSON lines");
  add_input(simulate_cmd);
  simulate_cmd->add_option("--seed", cfg.seed, "Base seed; episode i uses seed + i");
  simulate_cmd->add_option("--episodes", cfg.episodes, "Number of episodes")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--max-steps", cfg.max_steps, "Step cap per episode; capped episodes count as truncated")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--gamma", cfg.gamma, "Override the model's discount")->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--policy", cfg.policy, "Behaviour policy")->check(CLI::IsMember({"random"}));

  auto* examples_cmd = app.add_subcommand("examples", "List the built-in example models");
  add_format(examples_cmd);
  examples_cmd->add_option("-o,--output", cfg.output, "Write results to this file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (cfg.gamma && !(*cfg.gamma > 0.0)) {
    err << "error: --gamma must be in (0, 1]\n";
    return 1;
  }

  try {
    if (*validate_cmd) return cmd_validate(cfg, out);
    if (*solve_cmd) return cmd_solve(cfg, out);
    if (*render_cmd) return cmd_render(cfg, out);
    if (*simulate_cmd) return cmd_simulate(cfg, out);
    if (*examples_cmd) return cmd_examples(cfg, out);
  } catch (const Error& e) {
    err << (cfg.input.empty() ? std::string() : cfg.input + ":") << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace mdpforge::cli
