#include "mdpforge/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace mdpforge::lp {

namespace {

// Tableau layout (m constraint rows, n structural columns):
//   rows 0..m-1   constraints, rhs in column n+1
//   row m         phase-two objective (negated costs)
//   row m+1       phase-one objective
//   column n      auxiliary variable, labelled -1
// basis_[i] labels the basic variable of row i; nonbasis_[j] the variable of
// column j. Structural variables are 0..n-1, slacks n..n+m-1.
class Tableau {
 public:
  Tableau(const Matrix& a, std::span<const double> b, std::span<const double> c, double eps)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        eps_(eps),
        basis_(m_),
        nonbasis_(n_ + 1),
        d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basis_[i] = n_ + i;
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      d_[m_][j] = -c[j];
    }
    nonbasis_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  LpResult solve() {
    LpResult result;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      if (!run(2) || d_[m_ + 1][n_ + 1] < -eps_) {
        result.status = LpStatus::Infeasible;
        result.pivots = pivots_;
        return result;
      }
      // Drive a degenerate auxiliary variable out of the basis.
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        int best = -1;
        for (int j = 0; j < n_; ++j) {
          if (best == -1 || std::abs(d_[i][j]) > std::abs(d_[i][best])) best = j;
        }
        if (best != -1 && std::abs(d_[i][best]) > eps_) pivot(i, best);
      }
    }

    const bool bounded = run(1);
    result.pivots = pivots_;
    if (!bounded) {
      result.status = LpStatus::Unbounded;
      result.objective = std::numeric_limits<double>::infinity();
      return result;
    }
    result.status = LpStatus::Optimal;
    result.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && basis_[i] < n_) result.x[basis_[i]] = d_[i][n_ + 1];
    }
    result.objective = d_[m_][n_ + 1];
    return result;
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / d_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || d_[i][s] == 0.0) continue;
      const double factor = d_[i][s] * inv;
      for (int j = 0; j < n_ + 2; ++j) {
        if (j != s) d_[i][j] -= d_[r][j] * factor;
      }
      d_[i][s] = -factor;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) d_[r][j] *= inv;
    }
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
    ++pivots_;
  }

  // Returns false when the objective is unbounded along some column.
  bool run(int phase) {
    const int obj = phase == 1 ? m_ : m_ + 1;
    for (;;) {
      // Bland: the lowest-labelled improving column enters.
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasis_[j] == -phase) continue;
        if (d_[obj][j] < -eps_ && (s == -1 || nonbasis_[j] < nonbasis_[s])) s = j;
      }
      if (s == -1) return true;

      // Minimum ratio; ties go to the lowest-labelled basic variable.
      int r = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= eps_) continue;
        const double ratio = d_[i][n_ + 1] / d_[i][s];
        if (r == -1 || ratio < best_ratio - eps_ ||
            (ratio <= best_ratio + eps_ && basis_[i] < basis_[r])) {
          r = i;
          best_ratio = ratio;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  double eps_;
  int pivots_ = 0;
  std::vector<int> basis_;
  std::vector<int> nonbasis_;
  Matrix d_;
};

}  // namespace

LpResult maximize(const Matrix& a, std::span<const double> b, std::span<const double> c, double eps) {
  if (a.size() != b.size()) throw std::invalid_argument("lp: row count mismatch");
  for (const auto& row : a) {
    if (row.size() != c.size()) throw std::invalid_argument("lp: column count mismatch");
  }
  return Tableau(a, b, c, eps).solve();
}

}  // namespace mdpforge::lp
