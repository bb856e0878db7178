#include "mdpforge/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdpforge {

namespace {

Error semantic(const std::string& what) { return Error(ErrorCategory::Semantic, what); }

std::string describe_missing(const std::vector<MissingPair>& missing) {
  std::string text = "missing transitions:";
  for (const auto& gap : missing) {
    text += " MissingTransition(" + gap.state_name + ", " + gap.action_name + ")";
  }
  return text;
}

}  // namespace

void check_discount(double discount) {
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw semantic("discount out of range: " + std::to_string(discount) + " not in (0, 1]");
  }
}

MdpSpec::MdpSpec(double discount) : discount_(discount) { check_discount(discount); }

void MdpSpec::set_discount(double discount) {
  check_discount(discount);
  discount_ = discount;
}

std::size_t MdpSpec::add_state(std::optional<std::string> name, bool terminal) {
  const std::size_t index = states_.size();
  std::string resolved = name ? std::move(*name) : "s" + std::to_string(index);
  if (find_state(resolved) || find_action(resolved)) {
    throw semantic("duplicate name '" + resolved + "'");
  }
  states_.push_back({std::move(resolved), index, terminal});
  return index;
}

std::size_t MdpSpec::add_action(std::optional<std::string> name) {
  const std::size_t index = actions_.size();
  std::string resolved = name ? std::move(*name) : "a" + std::to_string(index);
  if (find_action(resolved) || find_state(resolved)) {
    throw semantic("duplicate name '" + resolved + "'");
  }
  actions_.push_back({std::move(resolved), index});
  return index;
}

void MdpSpec::add_transition(std::size_t state, std::size_t action, Outcome outcome, double weight) {
  if (state >= states_.size()) throw semantic("unknown state index " + std::to_string(state));
  if (action >= actions_.size()) throw semantic("unknown action index " + std::to_string(action));
  if (states_[state].terminal) {
    throw semantic("transition out of terminal state '" + states_[state].name + "'");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw semantic("weight must be positive and finite, got " + std::to_string(weight));
  }
  if (const auto* next = std::get_if<NextState>(&outcome); next && next->state >= states_.size()) {
    throw semantic("unknown successor state index " + std::to_string(next->state));
  }
  if (const auto* reward = std::get_if<Reward>(&outcome); reward && !std::isfinite(reward->value)) {
    throw semantic("reward must be finite");
  }
  entries_.push_back({state, action, outcome, weight});
}

std::optional<std::size_t> MdpSpec::find_state(std::string_view name) const {
  for (const auto& s : states_) {
    if (s.name == name) return s.index;
  }
  return std::nullopt;
}

std::optional<std::size_t> MdpSpec::find_action(std::string_view name) const {
  for (const auto& a : actions_) {
    if (a.name == name) return a.index;
  }
  return std::nullopt;
}

ValidationError::ValidationError(std::vector<MissingPair> missing)
    : Error(ErrorCategory::Semantic, describe_missing(missing)), missing_(std::move(missing)) {}

ValidatedMdp ValidatedMdp::with_discount(double discount) const {
  check_discount(discount);
  ValidatedMdp copy = *this;
  copy.discount_ = discount;
  return copy;
}

ValidatedMdp validate(const MdpSpec& spec, ValidateOptions options) {
  if (spec.states().empty()) throw semantic("no states declared");
  if (spec.actions().empty()) throw semantic("no actions declared");

  const std::size_t n_states = spec.states().size();
  const std::size_t n_actions = spec.actions().size();
  const std::size_t n_pairs = n_states * n_actions;

  ValidatedMdp m;
  m.states_ = spec.states();
  m.actions_ = spec.actions();
  m.discount_ = spec.discount();
  m.transitions_.assign(n_pairs * n_states, 0.0);
  m.rewards_.assign(n_pairs, {});
  m.expected_rewards_.assign(n_pairs, 0.0);

  // Accumulate raw weights; reward support points are merged by value.
  for (const auto& e : spec.entries()) {
    const std::size_t pair = e.state * n_actions + e.action;
    if (const auto* next = std::get_if<NextState>(&e.outcome)) {
      m.transitions_[pair * n_states + next->state] += e.weight;
    } else {
      const double value = std::get<Reward>(e.outcome).value;
      auto& support = m.rewards_[pair];
      auto it = std::find_if(support.begin(), support.end(),
                             [value](const RewardOutcome& r) { return r.value == value; });
      if (it == support.end()) {
        support.push_back({value, e.weight});
      } else {
        it->probability += e.weight;
      }
    }
  }

  std::vector<MissingPair> missing;
  for (std::size_t s = 0; s < n_states; ++s) {
    for (std::size_t a = 0; a < n_actions; ++a) {
      const std::size_t pair = s * n_actions + a;
      auto& support = m.rewards_[pair];
      if (m.states_[s].terminal) {
        support = {{0.0, 1.0}};
        continue;
      }

      double* row = m.transitions_.data() + pair * n_states;
      const double total = std::accumulate(row, row + n_states, 0.0);
      if (total == 0.0) {
        if (!options.allow_missing) {
          missing.push_back({s, a, m.states_[s].name, m.actions_[a].name});
          continue;
        }
        row[s] = 1.0;
      } else {
        for (std::size_t next = 0; next < n_states; ++next) row[next] /= total;
      }

      if (support.empty()) {
        support = {{0.0, 1.0}};
      } else {
        double reward_total = 0.0;
        for (const auto& r : support) reward_total += r.probability;
        for (auto& r : support) r.probability /= reward_total;
      }
      double expected = 0.0;
      for (const auto& r : support) expected += r.value * r.probability;
      m.expected_rewards_[pair] = expected;
    }
  }

  if (!missing.empty()) throw ValidationError(std::move(missing));
  return m;
}

}  // namespace mdpforge
