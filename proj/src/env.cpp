#include "mdpforge/env.hpp"

#include <cstdio>

#include "mdpforge/graph.hpp"

namespace mdpforge {

std::size_t sample_categorical(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = probabilities.size();
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    cumulative += probabilities[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // u landed in the rounding gap above the final cumulative sum.
  return last_positive;
}

void EnvSession::require_reset() const {
  if (!reset_) throw SessionError(SessionError::Kind::NotReset, "session has not been reset");
}

std::size_t EnvSession::reset() {
  reset_ = true;
  current_ = 0;
  done_ = mdp_->is_terminal(current_);
  steps_ = 0;
  episode_reward_ = 0.0;
  return current_;
}

StepResult EnvSession::step(std::size_t action) {
  require_reset();
  if (done_) throw SessionError(SessionError::Kind::SteppedWhenDone, "episode is done; call reset()");
  if (action >= mdp_->num_actions()) {
    throw SessionError(SessionError::Kind::InvalidAction, "invalid action " + std::to_string(action));
  }

  const auto row = mdp_->transition_row(current_, action);
  const std::size_t next = sample_categorical(row, rng_.uniform());

  const auto& rewards = mdp_->reward_distribution(current_, action);
  std::vector<double> reward_probs(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) reward_probs[i] = rewards[i].probability;
  const std::size_t reward_index = sample_categorical(reward_probs, rng_.uniform());

  StepResult result;
  result.observation = next;
  result.reward = rewards[reward_index].value;
  result.info = {reward_index, rewards[reward_index].probability, row[next]};

  current_ = next;
  done_ = mdp_->is_terminal(next);
  result.done = done_;
  ++steps_;
  episode_reward_ += result.reward;
  return result;
}

std::string EnvSession::render_text() const {
  require_reset();
  char ret[32];
  std::snprintf(ret, sizeof ret, "%.12g", episode_reward_ == 0.0 ? 0.0 : episode_reward_);
  return "state=" + mdp_->states()[current_].name + " steps=" + std::to_string(steps_) + " return=" + ret +
         " done=" + (done_ ? "true" : "false");
}

std::string EnvSession::render_dot() const {
  require_reset();
  return graph::to_dot(graph::to_graph(*mdp_), {.highlight_state = current_});
}

Episode run_random_episode(const ValidatedMdp& mdp, std::uint64_t seed, std::size_t max_steps) {
  EnvSession env(mdp, seed);
  RandomPolicy policy(mdp.num_actions(), policy_seed(seed));
  Episode episode;
  episode.seed = seed;
  std::size_t state = env.reset();
  while (!env.done()) {
    if (env.steps() >= max_steps) {
      episode.truncated = true;
      break;
    }
    const std::size_t action = policy.sample();
    const StepResult r = env.step(action);
    episode.steps.push_back({env.steps() - 1, state, action, r.reward, r.done, r.observation});
    state = r.observation;
  }
  episode.total_reward = env.episode_reward();
  return episode;
}

}  // namespace mdpforge
