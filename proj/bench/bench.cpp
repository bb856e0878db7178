// Times the serial reference kernels against their OpenMP versions and checks
// that both produce identical results.
//
//   mdpforge_bench [--quick] [--states N] [--actions N] [--sweeps N] [--episodes N]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "mdpforge/examples.hpp"
#include "mdpforge/kernels.hpp"
#include "random_mdp.hpp"

using namespace mdpforge;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-24s %10.4f %10.4f %8.2fx\n", name, serial, parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n_states = 600, n_actions = 8, sweeps = 50, episodes = 20000;
  for (int i = 1; i < argc; ++i) {
    auto value = [&](std::size_t& dst) {
      if (i + 1 < argc) dst = std::stoul(argv[++i]);
    };
    if (!std::strcmp(argv[i], "--quick")) {
      n_states = 60, n_actions = 4, sweeps = 5, episodes = 500;
    } else if (!std::strcmp(argv[i], "--states")) {
      value(n_states);
    } else if (!std::strcmp(argv[i], "--actions")) {
      value(n_actions);
    } else if (!std::strcmp(argv[i], "--sweeps")) {
      value(sweeps);
    } else if (!std::strcmp(argv[i], "--episodes")) {
      value(episodes);
    }
  }

  std::mt19937_64 rng(2024);
  testing::RandomMdpOptions opt;
  opt.max_states = n_states;
  opt.max_actions = n_actions;
  opt.max_successors = 16;
  opt.exact_size = true;
  const ValidatedMdp m = testing::random_mdp(rng, opt);

  std::printf("threads: %d, model: %zu states x %zu actions\n", omp_get_max_threads(), n_states, n_actions);
  std::printf("%-24s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  std::vector<double> v(n_states, 0.0), out_serial(n_states), out_omp(n_states);
  for (std::size_t s = 0; s < n_states; ++s) v[s] = static_cast<double>(s % 7);
  const double t_serial = seconds([&] {
    for (std::size_t k = 0; k < sweeps; ++k) kernels::serial::bellman_backup(m, v, out_serial);
  });
  const double t_omp = seconds([&] {
    for (std::size_t k = 0; k < sweeps; ++k) kernels::omp::bellman_backup(m, v, out_omp);
  });
  row("bellman_backup", t_serial, t_omp);
  bool ok = out_serial == out_omp;

  std::vector<double> q_serial(n_states * n_actions), q_omp(n_states * n_actions);
  const double tq_serial = seconds([&] {
    for (std::size_t k = 0; k < sweeps; ++k) kernels::serial::action_values(m, v, q_serial);
  });
  const double tq_omp = seconds([&] {
    for (std::size_t k = 0; k < sweeps; ++k) kernels::omp::action_values(m, v, q_omp);
  });
  row("action_values", tq_serial, tq_omp);
  ok = ok && q_serial == q_omp;

  const ValidatedMdp multi = examples::multi_round_nmdp();
  std::vector<Episode> e_serial, e_omp;
  const double tr_serial = seconds([&] { e_serial = kernels::serial::random_rollouts(multi, 1, episodes, 10000); });
  const double tr_omp = seconds([&] { e_omp = kernels::omp::random_rollouts(multi, 1, episodes, 10000); });
  row("random_rollouts", tr_serial, tr_omp);
  ok = ok && e_serial == e_omp;

  std::printf("serial/omp results %s\n", ok ? "identical" : "DIFFER");
  return ok ? 0 : 1;
}
