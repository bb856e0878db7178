#include <limits>

#include "mdpforge/kernels.hpp"

namespace mdpforge::kernels::serial {

void bellman_backup(const ValidatedMdp& m, std::span<const double> v, std::span<double> out) {
  const std::size_t n_states = m.num_states();
  const std::size_t n_actions = m.num_actions();
  const double gamma = m.discount();
  for (std::size_t s = 0; s < n_states; ++s) {
    if (m.is_terminal(s)) {
      out[s] = 0.0;
      continue;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n_actions; ++a) {
      const auto row = m.transition_row(s, a);
      double future = 0.0;
      for (std::size_t next = 0; next < n_states; ++next) future += row[next] * v[next];
      const double q = m.expected_reward(s, a) + gamma * future;
      if (q > best) best = q;
    }
    out[s] = best;
  }
}

void action_values(const ValidatedMdp& m, std::span<const double> v, std::span<double> q) {
  const std::size_t n_states = m.num_states();
  const std::size_t n_actions = m.num_actions();
  const double gamma = m.discount();
  for (std::size_t s = 0; s < n_states; ++s) {
    for (std::size_t a = 0; a < n_actions; ++a) {
      if (m.is_terminal(s)) {
        q[s * n_actions + a] = 0.0;
        continue;
      }
      const auto row = m.transition_row(s, a);
      double future = 0.0;
      for (std::size_t next = 0; next < n_states; ++next) future += row[next] * v[next];
      q[s * n_actions + a] = m.expected_reward(s, a) + gamma * future;
    }
  }
}

std::vector<Episode> random_rollouts(const ValidatedMdp& m, std::uint64_t base_seed, std::size_t count,
                                     std::size_t max_steps) {
  std::vector<Episode> episodes(count);
  for (std::size_t i = 0; i < count; ++i) episodes[i] = run_random_episode(m, base_seed + i, max_steps);
  return episodes;
}

}  // namespace mdpforge::kernels::serial
