#include <cstdint>
#include <limits>

#include "mdpforge/kernels.hpp"

namespace mdpforge::kernels::omp {

// Same arithmetic, in the same order per state, as the serial kernels; only
// the outer loop is split across threads, so results are bit-identical.

void bellman_backup(const ValidatedMdp& m, std::span<const double> v, std::span<double> out) {
  const auto n_states = static_cast<std::int64_t>(m.num_states());
  const std::size_t n_actions = m.num_actions();
  const double gamma = m.discount();
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < n_states; ++s) {
    if (m.is_terminal(s)) {
      out[s] = 0.0;
      continue;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n_actions; ++a) {
      const auto row = m.transition_row(s, a);
      double future = 0.0;
      for (std::int64_t next = 0; next < n_states; ++next) future += row[next] * v[next];
      const double q = m.expected_reward(s, a) + gamma * future;
      if (q > best) best = q;
    }
    out[s] = best;
  }
}

void action_values(const ValidatedMdp& m, std::span<const double> v, std::span<double> q) {
  const auto n_states = static_cast<std::int64_t>(m.num_states());
  const std::size_t n_actions = m.num_actions();
  const double gamma = m.discount();
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < n_states; ++s) {
    for (std::size_t a = 0; a < n_actions; ++a) {
      if (m.is_terminal(s)) {
        q[s * n_actions + a] = 0.0;
        continue;
      }
      const auto row = m.transition_row(s, a);
      double future = 0.0;
      for (std::int64_t next = 0; next < n_states; ++next) future += row[next] * v[next];
      q[s * n_actions + a] = m.expected_reward(s, a) + gamma * future;
    }
  }
}

std::vector<Episode> random_rollouts(const ValidatedMdp& m, std::uint64_t base_seed, std::size_t count,
                                     std::size_t max_steps) {
  std::vector<Episode> episodes(count);
  const auto n = static_cast<std::int64_t>(count);
  // Episode lengths vary, so hand out work dynamically.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    episodes[i] = run_random_episode(m, base_seed + static_cast<std::uint64_t>(i), max_steps);
  }
  return episodes;
}

}  // namespace mdpforge::kernels::omp
