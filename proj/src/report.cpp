#include "mdpforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace mdpforge::report {

namespace {

using json = nlohmann::ordered_json;

json number(double x) {
  const double r = round_significant(x);
  if (std::abs(r) < 9.0e15 && r == std::trunc(r)) return static_cast<std::int64_t>(r);
  return r;
}

std::string text_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round_significant(x));
  return buf;
}

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string solve_json(const ValidatedMdp& m, const ValueFunction& v, const QTable& q) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["gamma"] = number(m.discount());
  doc["states"] = json::array();
  for (const auto& s : m.states()) doc["states"].push_back(s.name);
  doc["actions"] = json::array();
  for (const auto& a : m.actions()) doc["actions"].push_back(a.name);
  doc["v"] = json::array();
  for (double value : v.v) doc["v"].push_back(number(value));
  doc["q"] = json::array();
  for (std::size_t s = 0; s < q.num_states(); ++s) {
    json row = json::array();
    for (double value : q.row(s)) row.push_back(number(value));
    doc["q"].push_back(std::move(row));
  }
  return doc.dump() + "\n";
}

std::string solve_text(const ValidatedMdp& m, const ValueFunction& v, const QTable& q) {
  std::size_t width = 5;
  for (const auto& s : m.states()) width = std::max(width, s.name.size());
  std::vector<std::vector<std::string>> cells(m.num_states());
  std::size_t col = 1;
  for (const auto& a : m.actions()) col = std::max(col, a.name.size());
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    cells[s].push_back(text_number(v[s]));
    for (double value : q.row(s)) cells[s].push_back(text_number(value));
    for (const auto& c : cells[s]) col = std::max(col, c.size());
  }

  std::ostringstream out;
  auto pad = [&out](const std::string& s, std::size_t w) { out << s << std::string(w - s.size() + 2, ' '); };
  out << "gamma: " << text_number(m.discount()) << "\n";
  pad("state", width);
  pad("v", col);
  for (const auto& a : m.actions()) pad("q[" + a.name + "]", col + 3);
  out << "\n";
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    pad(m.states()[s].name, width);
    pad(cells[s][0], col);
    for (std::size_t a = 0; a < m.num_actions(); ++a) pad(cells[s][a + 1], col + 3);
    out << "\n";
  }
  std::string text = out.str();
  // Drop the padding at line ends.
  std::string trimmed;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    trimmed += line + "\n";
  }
  return trimmed;
}

std::string step_json(const StepRecord& step) {
  json line;
  line["t"] = step.t;
  line["s"] = step.state;
  line["a"] = step.action;
  line["r"] = number(step.reward);
  line["done"] = step.done;
  return line.dump();
}

SimulationSummary summarize(const std::vector<Episode>& episodes) {
  SimulationSummary summary;
  summary.episodes = episodes.size();
  if (episodes.empty()) return summary;
  double total_return = 0.0;
  double total_length = 0.0;
  for (const auto& e : episodes) {
    total_return += e.total_reward;
    total_length += static_cast<double>(e.steps.size());
    if (e.truncated) ++summary.truncated;
  }
  summary.mean_return = total_return / static_cast<double>(episodes.size());
  summary.mean_length = total_length / static_cast<double>(episodes.size());
  return summary;
}

std::string summary_json(const SimulationSummary& summary) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["summary"]["episodes"] = summary.episodes;
  doc["summary"]["mean_return"] = number(summary.mean_return);
  doc["summary"]["mean_length"] = number(summary.mean_length);
  doc["summary"]["truncated"] = summary.truncated;
  return doc.dump();
}

std::string trajectory_log(const std::vector<Episode>& episodes) {
  std::string out;
  for (const auto& e : episodes) {
    for (const auto& step : e.steps) out += step_json(step) + "\n";
  }
  out += summary_json(summarize(episodes)) + "\n";
  return out;
}

}  // namespace mdpforge::report
