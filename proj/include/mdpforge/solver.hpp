#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mdpforge/core.hpp"
#include "mdpforge/error.hpp"
#include "mdpforge/kernels.hpp"

namespace mdpforge {

/// Optimal state values, indexed by state. Terminal states are 0.
struct ValueFunction {
  std::vector<double> v;

  double operator[](std::size_t s) const { return v[s]; }
  std::size_t size() const noexcept { return v.size(); }
};

/// Action values indexed (state, action), row-major.
class QTable {
 public:
  QTable(std::size_t num_states, std::size_t num_actions)
      : num_states_(num_states), num_actions_(num_actions), q_(num_states * num_actions, 0.0) {}

  double operator()(std::size_t s, std::size_t a) const { return q_[s * num_actions_ + a]; }
  double& operator()(std::size_t s, std::size_t a) { return q_[s * num_actions_ + a]; }
  std::span<const double> row(std::size_t s) const { return {q_.data() + s * num_actions_, num_actions_}; }
  std::span<double> data() noexcept { return q_; }
  std::span<const double> data() const noexcept { return q_; }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> q_;
};

class SolverError : public Error {
 public:
  enum class Kind { Unbounded, Infeasible, NoConvergence, DimensionMismatch, InvalidArgument };

  SolverError(Kind kind, const std::string& what, std::optional<std::size_t> state = std::nullopt)
      : Error(ErrorCategory::Semantic, what), kind_(kind), state_(state) {}

  Kind kind() const noexcept { return kind_; }
  /// Offending state, when the failure can be pinned to one.
  std::optional<std::size_t> state() const noexcept { return state_; }

 private:
  Kind kind_;
  std::optional<std::size_t> state_;
};

/// Exact optimal values from the linear program
///
///   minimize    sum_s v(s)
///   subject to  v(s) >= r(s,a) + gamma * sum_s' P(s,a,s') v(s')   for non-terminal s, all a,
///
/// with terminal values fixed at 0.
///
/// Throws SolverError::Unbounded when no finite values exist: with gamma = 1,
/// either returns grow without bound along a positive-reward cycle, or some
/// state can never reach a terminal state and its value is not pinned down.
ValueFunction solve_lp(const ValidatedMdp& m);

/// q(s,a) = r(s,a) + gamma * sum_s' P(s,a,s') v(s').
QTable compute_q_table(const ValidatedMdp& m, const ValueFunction& v);

struct ValueIterationResult {
  ValueFunction values;
  std::size_t iterations = 0;  // sweeps performed, including the final one
  double last_change = 0.0;    // sup-norm change of the final sweep
};

/// Synchronous value iteration from v = 0 until the sup-norm change of a sweep
/// is at most `tol`. Throws NoConvergence after `max_iter` sweeps.
ValueIterationResult value_iteration(const ValidatedMdp& m, double tol, std::size_t max_iter,
                                     kernels::Backend backend = kernels::Backend::OpenMP);

/// max over non-terminal s of |v(s) - max_a q(s,a)|.
double bellman_residual(const ValidatedMdp& m, const ValueFunction& v);

/// Greedy action per state. Actions within `tie_tol` of the best are tied and
/// the lowest index wins.
std::vector<std::size_t> greedy_policy(const QTable& q, double tie_tol = 1e-9);

}  // namespace mdpforge
