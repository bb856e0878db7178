#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp` with identical
// results; tests compare the two and the benchmark times them.

#include <cstdint>
#include <span>
#include <vector>

#include "mdpforge/core.hpp"
#include "mdpforge/env.hpp"

namespace mdpforge::kernels {

enum class Backend { Serial, OpenMP };

namespace serial {

/// out(s) = max_a [ r(s,a) + gamma * sum_s' P(s,a,s') v(s') ], 0 for terminal s.
void bellman_backup(const ValidatedMdp& m, std::span<const double> v, std::span<double> out);

/// q(s,a) = r(s,a) + gamma * sum_s' P(s,a,s') v(s'), row-major (s, a); terminal rows are 0.
void action_values(const ValidatedMdp& m, std::span<const double> v, std::span<double> q);

/// Runs `count` uniform-random-policy episodes; episode i uses seed base_seed + i.
std::vector<Episode> random_rollouts(const ValidatedMdp& m, std::uint64_t base_seed, std::size_t count,
                                     std::size_t max_steps);

}  // namespace serial

namespace omp {

void bellman_backup(const ValidatedMdp& m, std::span<const double> v, std::span<double> out);
void action_values(const ValidatedMdp& m, std::span<const double> v, std::span<double> q);
std::vector<Episode> random_rollouts(const ValidatedMdp& m, std::uint64_t base_seed, std::size_t count,
                                     std::size_t max_steps);

}  // namespace omp

inline void bellman_backup(Backend backend, const ValidatedMdp& m, std::span<const double> v,
                           std::span<double> out) {
  backend == Backend::Serial ? serial::bellman_backup(m, v, out) : omp::bellman_backup(m, v, out);
}

inline void action_values(Backend backend, const ValidatedMdp& m, std::span<const double> v,
                          std::span<double> q) {
  backend == Backend::Serial ? serial::action_values(m, v, q) : omp::action_values(m, v, q);
}

inline std::vector<Episode> random_rollouts(Backend backend, const ValidatedMdp& m, std::uint64_t base_seed,
                                            std::size_t count, std::size_t max_steps) {
  return backend == Backend::Serial ? serial::random_rollouts(m, base_seed, count, max_steps)
                                    : omp::random_rollouts(m, base_seed, count, max_steps);
}

}  // namespace mdpforge::kernels
