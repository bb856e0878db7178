#include "mdpforge/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "mdpforge/lp.hpp"

namespace mdpforge {

namespace {

std::vector<std::size_t> non_terminal_states(const ValidatedMdp& m) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    if (!m.is_terminal(s)) out.push_back(s);
  }
  return out;
}

// First non-terminal state from which no action sequence reaches a terminal.
std::optional<std::size_t> first_trapped_state(const ValidatedMdp& m) {
  const std::size_t n = m.num_states();
  std::vector<bool> reaches(n, false);
  std::deque<std::size_t> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    if (m.is_terminal(s)) {
      reaches[s] = true;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    const std::size_t target = frontier.front();
    frontier.pop_front();
    for (std::size_t s = 0; s < n; ++s) {
      if (reaches[s]) continue;
      for (std::size_t a = 0; a < m.num_actions(); ++a) {
        if (m.transition(s, a, target) > 0.0) {
          reaches[s] = true;
          frontier.push_back(s);
          break;
        }
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!reaches[s]) return s;
  }
  return std::nullopt;
}

// State whose value grows fastest under repeated Bellman backups.
std::size_t fastest_diverging_state(const ValidatedMdp& m) {
  const std::size_t n = m.num_states();
  std::vector<double> v(n, 0.0), next(n, 0.0);
  for (std::size_t k = 0; k < 100 + 10 * n; ++k) {
    kernels::serial::bellman_backup(m, v, next);
    v.swap(next);
  }
  std::size_t best = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!m.is_terminal(s) && (m.is_terminal(best) || v[s] > v[best])) best = s;
  }
  return best;
}

// Solves (I - gamma P_pi) v = r_pi over non-terminal states by Gaussian
// elimination with partial pivoting. Empty result if the system is singular.
std::vector<double> evaluate_policy(const ValidatedMdp& m, const std::vector<std::size_t>& policy) {
  const auto free = non_terminal_states(m);
  const std::size_t n = free.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = free[i];
    const std::size_t act = policy[s];
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = (i == j ? 1.0 : 0.0) - m.discount() * m.transition(s, act, free[j]);
    }
    a[i][n] = m.expected_reward(s, act);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-12) return {};
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> v(m.num_states(), 0.0);
  for (std::size_t i = 0; i < n; ++i) v[free[i]] = a[i][n] / a[i][i];
  return v;
}

}  // namespace

ValueFunction solve_lp(const ValidatedMdp& m) {
  const auto free = non_terminal_states(m);
  const std::size_t n = free.size();
  ValueFunction result{std::vector<double>(m.num_states(), 0.0)};
  if (n == 0) return result;

  std::vector<std::size_t> column(m.num_states(), 0);
  for (std::size_t j = 0; j < n; ++j) column[free[j]] = j;

  // Free variables split as v = v+ - v-; constraints rewritten in <= form:
  //   -v(s) + gamma * sum P v(s') <= -r(s,a)
  lp::Matrix a;
  std::vector<double> b;
  for (std::size_t s : free) {
    for (std::size_t act = 0; act < m.num_actions(); ++act) {
      std::vector<double> row(2 * n, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        double coef = m.discount() * m.transition(s, act, free[j]);
        if (free[j] == s) coef -= 1.0;
        row[j] = coef;
        row[n + j] = -coef;
      }
      a.push_back(std::move(row));
      b.push_back(-m.expected_reward(s, act));
    }
  }
  std::vector<double> c(2 * n, -1.0);
  std::fill(c.begin() + static_cast<std::ptrdiff_t>(n), c.end(), 1.0);

  const lp::LpResult lp_result = lp::maximize(a, b, c);
  switch (lp_result.status) {
    case lp::LpStatus::Infeasible: {
      const std::size_t s = fastest_diverging_state(m);
      throw SolverError(SolverError::Kind::Unbounded,
                        "unbounded: returns diverge from state '" + m.states()[s].name + "'", s);
    }
    case lp::LpStatus::Unbounded: {
      const std::size_t s = first_trapped_state(m).value_or(free.front());
      throw SolverError(SolverError::Kind::Unbounded,
                        "unbounded: value of state '" + m.states()[s].name +
                            "' is undetermined (no terminal state reachable)",
                        s);
    }
    case lp::LpStatus::Optimal: break;
  }

  for (std::size_t j = 0; j < n; ++j) result.v[free[j]] = lp_result.x[j] - lp_result.x[n + j];
  for (double value : result.v) {
    if (!std::isfinite(value)) throw SolverError(SolverError::Kind::Infeasible, "internal error: non-finite LP solution");
  }

  // The vertex fixes the optimal policy; evaluating that policy exactly
  // removes round-off accumulated over the pivots.
  const double residual = bellman_residual(m, result);
  if (residual > 0.0) {
    const auto policy = greedy_policy(compute_q_table(m, result));
    auto refined = evaluate_policy(m, policy);
    if (!refined.empty()) {
      ValueFunction candidate{std::move(refined)};
      if (bellman_residual(m, candidate) < residual) result = std::move(candidate);
    }
  }
  return result;
}

QTable compute_q_table(const ValidatedMdp& m, const ValueFunction& v) {
  if (v.size() != m.num_states()) {
    throw SolverError(SolverError::Kind::DimensionMismatch,
                      "value vector has " + std::to_string(v.size()) + " entries, model has " +
                          std::to_string(m.num_states()) + " states");
  }
  QTable q(m.num_states(), m.num_actions());
  kernels::serial::action_values(m, v.v, q.data());
  return q;
}

ValueIterationResult value_iteration(const ValidatedMdp& m, double tol, std::size_t max_iter,
                                     kernels::Backend backend) {
  if (!(tol > 0.0)) throw SolverError(SolverError::Kind::InvalidArgument, "tolerance must be positive");

  const std::size_t n = m.num_states();
  std::vector<double> v(n, 0.0), next(n, 0.0);
  for (std::size_t k = 1; k <= max_iter; ++k) {
    kernels::bellman_backup(backend, m, v, next);
    double change = 0.0;
    for (std::size_t s = 0; s < n; ++s) change = std::max(change, std::abs(next[s] - v[s]));
    v.swap(next);
    if (!std::isfinite(change)) break;
    if (change <= tol) return {ValueFunction{std::move(v)}, k, change};
  }
  throw SolverError(SolverError::Kind::NoConvergence,
                    "value iteration did not converge within " + std::to_string(max_iter) + " sweeps");
}

double bellman_residual(const ValidatedMdp& m, const ValueFunction& v) {
  const QTable q = compute_q_table(m, v);
  double residual = 0.0;
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    if (m.is_terminal(s)) continue;
    const auto row = q.row(s);
    const double best = *std::max_element(row.begin(), row.end());
    residual = std::max(residual, std::abs(v[s] - best));
  }
  return residual;
}

std::vector<std::size_t> greedy_policy(const QTable& q, double tie_tol) {
  std::vector<std::size_t> policy(q.num_states(), 0);
  for (std::size_t s = 0; s < q.num_states(); ++s) {
    const auto row = q.row(s);
    const double best = *std::max_element(row.begin(), row.end());
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (row[a] >= best - tie_tol) {
        policy[s] = a;
        break;
      }
    }
  }
  return policy;
}

}  // namespace mdpforge
