#pragma once

#include <span>
#include <vector>

namespace mdpforge::lp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

using Matrix = std::vector<std::vector<double>>;

/// Dense two-phase tableau simplex:
///
///   maximize c'x  subject to  A x <= b,  x >= 0.
///
/// Negative entries of b are handled by a single auxiliary variable in phase
/// one. Entering and leaving variables follow Bland's rule, so degenerate
/// problems terminate. Meant for small problems (a few hundred rows).
LpResult maximize(const Matrix& a, std::span<const double> b, std::span<const double> c,
                  double eps = 1e-9);

}  // namespace mdpforge::lp
