#pragma once

#include "boxlab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boxlab {

enum class Sense { Le, Ge, Eq };

// Rows a.x (<=, >=, =) b over variables that are either free or x >= 0.
// The objective, when present, is maximized.
struct LinearProgram {
  int num_vars = 0;
  std::vector<bool> nonneg;
  std::vector<VectorXq> rows;
  std::vector<Sense> sense;
  std::vector<Rational> rhs;
  VectorXq objective;

  explicit LinearProgram(int n = 0, bool nonneg_default = false)
      : num_vars(n), nonneg(n, nonneg_default), objective(VectorXq::Zero(n)) {}

  int add_row(const VectorXq& a, Sense s, const Rational& b) {
    rows.push_back(a);
    sense.push_back(s);
    rhs.push_back(b);
    return static_cast<int>(rows.size()) - 1;
  }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

// Multipliers y, one per row, with y >= 0 on <= rows, y <= 0 on >= rows and
// free on = rows, such that (y^T A)_j >= 0 for x_j >= 0, (y^T A)_j = 0 for
// free x_j, and y^T b < 0. Any such y proves the system infeasible.
struct FarkasCertificate {
  VectorXq y;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  VectorXq x;
  Rational value = 0;
  std::optional<FarkasCertificate> farkas;
  int pivots = 0;
};

// Two-phase primal simplex with Bland's rule in exact arithmetic.
LpResult lp_solve_exact(const LinearProgram& lp);

// Feasibility only; the objective is ignored.
LpResult lp_feasible_exact(const LinearProgram& lp);

bool verify_farkas(const LinearProgram& lp, const FarkasCertificate& cert);

// Exact check that x satisfies every row and sign restriction.
bool lp_point_feasible(const LinearProgram& lp, const VectorXq& x);

std::string to_string(LpStatus s);

}  // namespace boxlab
