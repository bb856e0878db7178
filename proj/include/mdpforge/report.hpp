#pragma once

#include <string>
#include <vector>

#include "mdpforge/core.hpp"
#include "mdpforge/env.hpp"
#include "mdpforge/solver.hpp"

// Serialized forms of solver results and trajectories. JSON documents carry a
// top-level "version": 1. Reals are rounded to 12 significant digits and
// integral values print without a fractional part.
namespace mdpforge::report {

inline constexpr int kSchemaVersion = 1;

double round_significant(double x, int digits = 12);

/// {"version":1,"gamma":g,"states":[..],"actions":[..],"v":[..],"q":[[..],..]}
std::string solve_json(const ValidatedMdp& m, const ValueFunction& v, const QTable& q);
/// Aligned plain-text tables of v and q, headed by "gamma: <g>".
std::string solve_text(const ValidatedMdp& m, const ValueFunction& v, const QTable& q);

/// {"t":n,"s":i,"a":j,"r":x,"done":b}
std::string step_json(const StepRecord& step);

struct SimulationSummary {
  std::size_t episodes = 0;
  double mean_return = 0.0;
  double mean_length = 0.0;
  std::size_t truncated = 0;
};

SimulationSummary summarize(const std::vector<Episode>& episodes);
/// {"version":1,"summary":{"episodes":..,"mean_return":..,"mean_length":..,"truncated":..}}
std::string summary_json(const SimulationSummary& summary);

/// Every step of every episode as one JSON line, followed by the summary line.
std::string trajectory_log(const std::vector<Episode>& episodes);

}  // namespace mdpforge::report
