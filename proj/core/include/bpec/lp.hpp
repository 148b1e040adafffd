#pragma once

#include <limits>
#include <vector>

namespace bpec {

// Dense linear program: maximize objective . v subject to rows lhs . v <= rhs
// and per-variable bounds. Lower bounds must be finite (default 0); upper
// bounds may be +infinity. Bounds are handled as explicit constraint rows
// inside the solver; the problems here are tiny, so robustness wins over
// sparse sophistication.
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  void set_objective(std::vector<double> c);
  void add_le(std::vector<double> row, double bound);
  void set_bounds(int var, double lower, double upper);

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<std::vector<double>>& lhs() const { return lhs_; }
  const std::vector<double>& rhs() const { return rhs_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

 private:
  int num_vars_;
  std::vector<double> objective_;
  std::vector<std::vector<double>> lhs_;
  std::vector<double> rhs_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> point;
};

// Two-phase dense tableau simplex with Bland's rule. Deterministic: entering
// variable is the lowest eligible index, leaving ties break on the lowest
// basis index. Throws NumericalError if the pivot cap is exceeded (cannot
// happen with the anti-cycling rule short of a bug) and ConfigError on
// dimension mismatches.
LpOutcome solve(const LinearProgram& lp);

// Phase-1 only: true iff the constraint set is nonempty.
bool feasible(const LinearProgram& lp);

}  // namespace bpec
