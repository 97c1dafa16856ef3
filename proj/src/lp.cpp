#include "boxlab/solver/lp.hpp"

#include <stdexcept>

namespace boxlab {

namespace {

// Dense tableau over the standard form  A' z = b', z >= 0, b' >= 0.
struct Tableau {
  MatrixXq T;              // rows x (cols + 1); last column is the rhs
  std::vector<int> basis;  // basic column per row
  int cols = 0;

  Rational& rhs(int i) { return T(i, cols); }

  void pivot(int r, int c) {
    const Rational p = T(r, c);
    T.row(r) /= p;
    for (int i = 0; i < T.rows(); ++i) {
      if (i == r || T(i, c) == 0) continue;
      const Rational f = T(i, c);
      T.row(i) -= f * T.row(r);
    }
    basis[r] = c;
  }

  // z_j = c_B^T B^{-1} A_j - c_j; optimal for maximization when all z_j >= 0.
  VectorXq reduced(const VectorXq& cost) const {
    VectorXq z = -cost;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
      const Rational& cb = cost(basis[i]);
      if (cb == 0) continue;
      z += cb * T.row(i).head(cols).transpose();
    }
    return z;
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(const VectorXq& cost, const std::vector<bool>& allowed, int& pivots) {
    while (true) {
      VectorXq z = reduced(cost);
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && z(j) < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < T.rows(); ++i) {
        if (T(i, enter) <= 0) continue;
        Rational ratio = T(i, cols) / T(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }
};

struct StandardForm {
  // Column layout: one column per nonneg variable, two per free variable,
  // one slack per inequality row, then artificials for rows whose slack
  // cannot start in the basis.
  std::vector<int> pos, neg;  // column of x_j (neg = -1 for nonneg vars)
  std::vector<int> slack;     // per row, -1 for equality rows
  std::vector<int> unit;      // per row, the initial basic column
  std::vector<int> sign;      // row multiplied by this to make b' >= 0
  int structural = 0;         // columns before the artificials
};

LpResult solve(const LinearProgram& lp, bool use_objective) {
  const int m = lp.num_rows(), n = lp.num_vars;
  StandardForm sf;
  int col = 0;
  sf.pos.resize(n);
  sf.neg.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    sf.pos[j] = col++;
    if (!lp.nonneg[j]) sf.neg[j] = col++;
  }
  sf.slack.assign(m, -1);
  for (int i = 0; i < m; ++i)
    if (lp.sense[i] != Sense::Eq) sf.slack[i] = col++;
  sf.structural = col;
  sf.sign.resize(m);
  sf.unit.resize(m);
  for (int i = 0; i < m; ++i) {
    sf.sign[i] = lp.rhs[i] < 0 ? -1 : 1;
    const int slack_coef = lp.sense[i] == Sense::Le ? sf.sign[i] : -sf.sign[i];
    sf.unit[i] = (sf.slack[i] >= 0 && slack_coef > 0) ? sf.slack[i] : col++;
  }

  Tableau tab;
  tab.cols = col;
  tab.T = MatrixXq::Zero(m, col + 1);
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      tab.T(i, sf.pos[j]) = lp.rows[i](j);
      if (sf.neg[j] >= 0) tab.T(i, sf.neg[j]) = -lp.rows[i](j);
    }
    if (sf.slack[i] >= 0) tab.T(i, sf.slack[i]) = lp.sense[i] == Sense::Le ? 1 : -1;
    tab.T(i, col) = lp.rhs[i];
    if (sf.sign[i] < 0) tab.T.row(i) *= Rational(-1);
    tab.T(i, sf.unit[i]) = 1;
    tab.basis[i] = sf.unit[i];
  }

  LpResult res;
  VectorXq cost1 = VectorXq::Zero(col);
  for (int j = sf.structural; j < col; ++j) cost1(j) = -1;
  std::vector<bool> all(col, true);
  tab.optimize(cost1, all, res.pivots);  // phase 1 is always bounded

  Rational phase1 = 0;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] >= sf.structural) phase1 -= tab.T(i, col);
  if (phase1 < 0) {
    // Phase-1 duals y'_i = z_u + c_u on each row's initial unit column.
    VectorXq z = tab.reduced(cost1);
    FarkasCertificate cert;
    cert.y.resize(m);
    for (int i = 0; i < m; ++i) cert.y(i) = (z(sf.unit[i]) + cost1(sf.unit[i])) * sf.sign[i];
    if (!verify_farkas(lp, cert)) throw std::logic_error("simplex produced an invalid Farkas certificate");
    res.status = LpStatus::Infeasible;
    res.farkas = std::move(cert);
    return res;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < sf.structural) continue;
    for (int j = 0; j < sf.structural; ++j)
      if (tab.T(i, j) != 0) {
        tab.pivot(i, j);
        ++res.pivots;
        break;
      }
  }

  std::vector<bool> allowed(col, false);
  for (int j = 0; j < sf.structural; ++j) allowed[j] = true;
  VectorXq cost2 = VectorXq::Zero(col);
  if (use_objective)
    for (int j = 0; j < n; ++j) {
      cost2(sf.pos[j]) = lp.objective(j);
      if (sf.neg[j] >= 0) cost2(sf.neg[j]) = -lp.objective(j);
    }
  const bool bounded = tab.optimize(cost2, allowed, res.pivots);

  VectorXq zval = VectorXq::Zero(col);
  for (int i = 0; i < m; ++i) zval(tab.basis[i]) = tab.T(i, col);
  res.x.resize(n);
  for (int j = 0; j < n; ++j) res.x(j) = zval(sf.pos[j]) - (sf.neg[j] >= 0 ? zval(sf.neg[j]) : Rational(0));
  res.value = use_objective ? Rational(lp.objective.dot(res.x)) : Rational(0);
  res.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
  if (!lp_point_feasible(lp, res.x)) throw std::logic_error("simplex returned an infeasible point");
  return res;
}

}  // namespace

LpResult lp_solve_exact(const LinearProgram& lp) { return solve(lp, true); }

LpResult lp_feasible_exact(const LinearProgram& lp) { return solve(lp, false); }

bool verify_farkas(const LinearProgram& lp, const FarkasCertificate& cert) {
  const int m = lp.num_rows(), n = lp.num_vars;
  if (cert.y.size() != m) return false;
  VectorXq yA = VectorXq::Zero(n);
  Rational yb = 0;
  for (int i = 0; i < m; ++i) {
    const Rational& y = cert.y(i);
    if (lp.sense[i] == Sense::Le && y < 0) return false;
    if (lp.sense[i] == Sense::Ge && y > 0) return false;
    if (y == 0) continue;
    yA += y * lp.rows[i];
    yb += y * lp.rhs[i];
  }
  for (int j = 0; j < n; ++j) {
    if (lp.nonneg[j] && yA(j) < 0) return false;
    if (!lp.nonneg[j] && yA(j) != 0) return false;
  }
  return yb < 0;
}

bool lp_point_feasible(const LinearProgram& lp, const VectorXq& x) {
  if (x.size() != lp.num_vars) return false;
  for (int j = 0; j < lp.num_vars; ++j)
    if (lp.nonneg[j] && x(j) < 0) return false;
  for (int i = 0; i < lp.num_rows(); ++i) {
    Rational lhs = lp.rows[i].dot(x);
    switch (lp.sense[i]) {
      case Sense::Le: if (lhs > lp.rhs[i]) return false; break;
      case Sense::Ge: if (lhs < lp.rhs[i]) return false; break;
      case Sense::Eq: if (lhs != lp.rhs[i]) return false; break;
    }
  }
  return true;
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

}  // namespace boxlab
