#include "bpec/lp.hpp"

#include <algorithm>
#include <cmath>

#include "bpec/errors.hpp"

namespace bpec {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-8;

// Dense tableau over [structural | slacks | artificials | rhs] with an extra
// reduced-cost row; always minimizes. Bland's rule throughout: entering is
// the lowest eligible column, leaving ties break on the lowest basis index.
struct Tableau {
  int rows = 0;
  int cols = 0;  // total columns including rhs
  int art_start = 0;
  std::vector<std::vector<double>> t;  // rows + 1 (cost row last)
  std::vector<int> basis;

  double& cost(int j) { return t[rows][j]; }

  void pivot(int r, int s) {
    double inv = 1.0 / t[r][s];
    for (int j = 0; j < cols; ++j) t[r][j] *= inv;
    t[r][s] = 1.0;
    for (int i = 0; i <= rows; ++i) {
      if (i == r) continue;
      double f = t[i][s];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[r][j];
      t[i][s] = 0.0;
    }
    basis[r] = s;
  }

  void rebuild_cost_row(const std::vector<double>& cost_vec) {
    for (int j = 0; j < cols - 1; ++j) cost(j) = cost_vec[j];
    t[rows][cols - 1] = 0.0;
    for (int i = 0; i < rows; ++i) {
      double cb = cost_vec[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols; ++j) t[rows][j] -= cb * t[i][j];
    }
  }

  double objective() const { return -t[rows][cols - 1]; }

  enum class StepResult { Optimal, Unbounded };

  StepResult run(int allowed_cols) {
    const int cap = std::max(200, 10 * (cols + rows));
    for (int iter = 0; iter < cap; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t[rows][j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return StepResult::Optimal;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < rows; ++i) {
        if (t[i][enter] <= kPivotTol) continue;
        double ratio = t[i][cols - 1] / t[i][enter];
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return StepResult::Unbounded;
      pivot(leave, enter);
    }
    throw NumericalError("simplex iteration limit exceeded");
  }

  void drop_row(int r) {
    t.erase(t.begin() + r);
    basis.erase(basis.begin() + r);
    --rows;
  }
};

struct StandardForm {
  int n = 0;  // structural (shifted) variables
  std::vector<double> shift;
  std::vector<double> objective;  // over structural variables
  Tableau tab;
  bool infeasible_bounds = false;
};

StandardForm build(const LinearProgram& lp) {
  const int n = lp.num_vars();
  if (static_cast<int>(lp.objective().size()) != n) {
    throw ConfigError("objective dimension mismatch");
  }
  for (const auto& row : lp.lhs()) {
    if (static_cast<int>(row.size()) != n) {
      throw ConfigError("constraint row dimension mismatch");
    }
  }

  StandardForm sf;
  sf.n = n;
  sf.shift.resize(n);
  sf.objective = lp.objective();
  for (int i = 0; i < n; ++i) {
    double lo = lp.lower()[i];
    double up = lp.upper()[i];
    if (!std::isfinite(lo)) {
      throw ConfigError("variable lower bounds must be finite");
    }
    if (lo > up) sf.infeasible_bounds = true;
    sf.shift[i] = lo;
  }
  if (sf.infeasible_bounds) return sf;

  // Rows: user constraints plus explicit rows for finite upper bounds, with
  // variables shifted so every variable has lower bound 0.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (int r = 0; r < lp.num_rows(); ++r) {
    double b = lp.rhs()[r];
    for (int i = 0; i < n; ++i) b -= lp.lhs()[r][i] * sf.shift[i];
    rows.push_back(lp.lhs()[r]);
    rhs.push_back(b);
  }
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(lp.upper()[i])) {
      std::vector<double> row(n, 0.0);
      row[i] = 1.0;
      rows.push_back(std::move(row));
      rhs.push_back(lp.upper()[i] - sf.shift[i]);
    }
  }

  const int m = static_cast<int>(rows.size());
  int num_art = 0;
  for (double b : rhs) {
    if (b < 0.0) ++num_art;
  }

  Tableau& tab = sf.tab;
  tab.rows = m;
  tab.art_start = n + m;
  tab.cols = n + m + num_art + 1;
  tab.t.assign(m + 1, std::vector<double>(tab.cols, 0.0));
  tab.basis.resize(m);

  int art = tab.art_start;
  for (int r = 0; r < m; ++r) {
    double sign = rhs[r] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) tab.t[r][i] = sign * rows[r][i];
    tab.t[r][n + r] = sign;  // slack
    tab.t[r][tab.cols - 1] = sign * rhs[r];
    if (sign < 0.0) {
      tab.t[r][art] = 1.0;
      tab.basis[r] = art++;
    } else {
      tab.basis[r] = n + r;
    }
  }
  return sf;
}

// Phase 1: drive the artificial variables to zero. Returns false when the
// program is infeasible.
bool phase1(StandardForm& sf) {
  Tableau& tab = sf.tab;
  bool any_art = tab.art_start < tab.cols - 1;
  if (!any_art) return true;

  std::vector<double> cost(tab.cols - 1, 0.0);
  for (int j = tab.art_start; j < tab.cols - 1; ++j) cost[j] = 1.0;
  tab.rebuild_cost_row(cost);
  if (tab.run(tab.cols - 1) == Tableau::StepResult::Unbounded) {
    throw NumericalError("phase-1 objective unbounded");
  }
  if (tab.objective() > kFeasTol) return false;

  // Pivot remaining artificials out of the basis; rows that cannot be
  // pivoted are redundant and get dropped.
  for (int r = tab.rows - 1; r >= 0; --r) {
    if (tab.basis[r] < tab.art_start) continue;
    int col = -1;
    for (int j = 0; j < tab.art_start; ++j) {
      if (std::abs(tab.t[r][j]) > kPivotTol) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tab.pivot(r, col);
    } else {
      tab.drop_row(r);
    }
  }
  return true;
}

}  // namespace

LinearProgram::LinearProgram(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw ConfigError("linear program needs variables");
  objective_.assign(num_vars, 0.0);
  lower_.assign(num_vars, 0.0);
  upper_.assign(num_vars, kLpInfinity);
}

void LinearProgram::set_objective(std::vector<double> c) {
  if (static_cast<int>(c.size()) != num_vars_) {
    throw ConfigError("objective dimension mismatch");
  }
  objective_ = std::move(c);
}

void LinearProgram::add_le(std::vector<double> row, double bound) {
  if (static_cast<int>(row.size()) != num_vars_) {
    throw ConfigError("constraint row dimension mismatch");
  }
  lhs_.push_back(std::move(row));
  rhs_.push_back(bound);
}

void LinearProgram::set_bounds(int var, double lower, double upper) {
  if (var < 0 || var >= num_vars_) throw ConfigError("variable index out of range");
  lower_[var] = lower;
  upper_[var] = upper;
}

LpOutcome solve(const LinearProgram& lp) {
  StandardForm sf = build(lp);
  if (sf.infeasible_bounds) return {LpStatus::Infeasible, 0.0, {}};
  if (!phase1(sf)) return {LpStatus::Infeasible, 0.0, {}};

  Tableau& tab = sf.tab;
  std::vector<double> cost(tab.cols - 1, 0.0);
  for (int j = 0; j < sf.n; ++j) cost[j] = -sf.objective[j];
  tab.rebuild_cost_row(cost);
  // Artificial columns are barred from re-entering.
  if (tab.run(tab.art_start) == Tableau::StepResult::Unbounded) {
    return {LpStatus::Unbounded, 0.0, {}};
  }

  std::vector<double> point(sf.n, 0.0);
  for (int r = 0; r < tab.rows; ++r) {
    if (tab.basis[r] < sf.n) {
      point[tab.basis[r]] = tab.t[r][tab.cols - 1];
    }
  }
  double value = 0.0;
  for (int j = 0; j < sf.n; ++j) {
    point[j] += sf.shift[j];
    value += lp.objective()[j] * point[j];
  }
  return {LpStatus::Optimal, value, std::move(point)};
}

bool feasible(const LinearProgram& lp) {
  StandardForm sf = build(lp);
  if (sf.infeasible_bounds) return false;
  return phase1(sf);
}

}  // namespace bpec
