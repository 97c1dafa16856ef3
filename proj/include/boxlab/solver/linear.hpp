#pragma once

#include "boxlab/rational.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace boxlab {

template <class Scalar>
struct PivotTraits;

template <>
struct PivotTraits<Rational> {
  static constexpr bool exact = true;  // first nonzero pivot is fine
  static bool is_zero(const Rational& v, const Rational&) { return v == 0; }
  static bool better(const Rational&, const Rational&) { return false; }
};

template <>
struct PivotTraits<double> {
  static constexpr bool exact = false;  // partial pivoting
  static bool is_zero(double v, double scale) { return std::abs(v) <= 1e-12 * std::max(1.0, scale); }
  static bool better(double cand, double cur) { return std::abs(cand) > std::abs(cur); }
};

// x = particular + basis * theta. particular is the minimum-norm solution.
template <class Scalar>
struct AffineSolutionSpace {
  VectorX<Scalar> particular;
  MatrixX<Scalar> basis;
  std::vector<std::pair<Scalar, Scalar>> bounds;  // optional, per theta

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient() const { return static_cast<int>(particular.size()); }

  template <class Derived>
  VectorX<Scalar> point(const Eigen::MatrixBase<Derived>& theta) const {
    return particular + basis * theta;
  }
};

template <class Scalar>
struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  int augmented_rank = 0;
  AffineSolutionSpace<Scalar> space;
};

namespace detail {

// In-place reduced row echelon form; returns the pivot columns. Only the
// first `ncols` columns are eligible as pivots.
template <class Scalar>
std::vector<int> rref(MatrixX<Scalar>& M, int ncols) {
  using T = PivotTraits<Scalar>;
  Scalar scale(0);
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      Scalar a = M(i, j) < Scalar(0) ? Scalar(-M(i, j)) : M(i, j);
      if (a > scale) scale = a;
    }
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < ncols && r < M.rows(); ++c) {
    int p = -1;
    for (int i = r; i < M.rows(); ++i) {
      if (T::is_zero(M(i, c), scale)) continue;
      if (p < 0 || T::better(M(i, c), M(p, c))) p = i;
      if (T::exact) break;
    }
    if (p < 0) continue;
    if (p != r) M.row(p).swap(M.row(r));
    const Scalar piv = M(r, c);
    M.row(r) /= piv;
    for (int i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c) == Scalar(0)) continue;
      const Scalar f = M(i, c);
      M.row(i) -= f * M.row(r);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

template <class DerivedA>
int matrix_rank(const Eigen::MatrixBase<DerivedA>& A) {
  using Scalar = typename DerivedA::Scalar;
  MatrixX<Scalar> M = A;
  return static_cast<int>(detail::rref(M, static_cast<int>(M.cols())).size());
}

// Full solution set of A x = b by exact Gauss-Jordan elimination.
template <class DerivedA, class DerivedB>
LinearSolution<typename DerivedA::Scalar> solve_linear_exact(const Eigen::MatrixBase<DerivedA>& A,
                                                             const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  using T = PivotTraits<Scalar>;
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  MatrixX<Scalar> M(m, n + 1);
  M.leftCols(n) = A;
  M.col(n) = b;
  std::vector<int> piv = detail::rref(M, n);

  LinearSolution<Scalar> out;
  out.rank = static_cast<int>(piv.size());
  out.augmented_rank = out.rank;
  Scalar scale(1);
  for (int i = out.rank; i < m; ++i)
    if (!T::is_zero(M(i, n), scale)) {
      out.augmented_rank = out.rank + 1;
      return out;
    }
  out.consistent = true;

  std::vector<bool> is_pivot(n, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);

  VectorX<Scalar> x0 = VectorX<Scalar>::Zero(n);
  for (int i = 0; i < out.rank; ++i) x0(piv[i]) = M(i, n);
  MatrixX<Scalar> N = MatrixX<Scalar>::Zero(n, static_cast<int>(free.size()));
  for (int k = 0; k < static_cast<int>(free.size()); ++k) {
    N(free[k], k) = Scalar(1);
    for (int i = 0; i < out.rank; ++i) N(piv[i], k) = -M(i, free[k]);
  }

  // Project the particular solution onto the orthogonal complement of N.
  if (N.cols() > 0) {
    MatrixX<Scalar> G = N.transpose() * N;
    VectorX<Scalar> rhs = N.transpose() * x0;
    MatrixX<Scalar> S(G.rows(), G.cols() + 1);
    S.leftCols(G.cols()) = G;
    S.col(G.cols()) = rhs;
    detail::rref(S, static_cast<int>(G.cols()));
    x0 -= N * S.col(G.cols());
  }
  out.space.particular = std::move(x0);
  out.space.basis = std::move(N);
  return out;
}

}  // namespace boxlab
