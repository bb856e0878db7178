#pragma once

#include <cstdint>
#include <random>

#include "mdpforge/core.hpp"

namespace mdpforge::testing {

struct RandomMdpOptions {
  std::size_t max_states = 8;
  std::size_t max_actions = 4;
  double min_gamma = 0.5;
  double max_gamma = 0.95;
  double terminal_fraction = 0.2;  // state 0 is never terminal
  std::size_t max_successors = 3;
  std::size_t max_rewards = 2;
  bool exact_size = false;  // use max_states / max_actions exactly
};

/// Random spec with full successor coverage and random positive weights.
inline MdpSpec random_spec(std::mt19937_64& rng, const RandomMdpOptions& opt = {}) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n_states = opt.exact_size ? opt.max_states : pick(1, opt.max_states);
  const std::size_t n_actions = opt.exact_size ? opt.max_actions : pick(1, opt.max_actions);
  const double gamma = opt.min_gamma + (opt.max_gamma - opt.min_gamma) * unit(rng);

  MdpSpec spec(gamma);
  for (std::size_t s = 0; s < n_states; ++s) spec.add_state(std::nullopt, s > 0 && unit(rng) < opt.terminal_fraction);
  for (std::size_t a = 0; a < n_actions; ++a) spec.add_action();
  for (std::size_t s = 0; s < n_states; ++s) {
    if (spec.states()[s].terminal) continue;
    for (std::size_t a = 0; a < n_actions; ++a) {
      const std::size_t successors = pick(1, opt.max_successors);
      for (std::size_t k = 0; k < successors; ++k) {
        spec.add_transition(s, a, NextState{pick(0, n_states - 1)}, 0.1 + 4.9 * unit(rng));
      }
      const std::size_t rewards = pick(0, opt.max_rewards);
      for (std::size_t k = 0; k < rewards; ++k) {
        spec.add_transition(s, a, Reward{-5.0 + 10.0 * unit(rng)}, 0.1 + 4.9 * unit(rng));
      }
    }
  }
  return spec;
}

inline ValidatedMdp random_mdp(std::mt19937_64& rng, const RandomMdpOptions& opt = {}) {
  return validate(random_spec(rng, opt));
}

}  // namespace mdpforge::testing
