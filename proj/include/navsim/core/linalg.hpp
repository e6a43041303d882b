#pragma once

#include "navsim/core/mat.hpp"

namespace nav {

/// Lower-triangular L with L·Lᵀ = a. On a failed pivot the diagonal is
/// loaded once with 1e-10·trace(a)/n and the factorization retried.
/// Throws InvalidInput (non-square or asymmetric beyond 1e-9) or
/// NotPositiveDefinite.
Mat cholesky(const Mat& a);

/// Factor of a positive semi-definite matrix: like cholesky(), but pivots at
/// or below a relative floor produce a zero column instead of failing. Used
/// to draw samples from possibly singular covariances.
Mat cholesky_semidefinite(const Mat& a);

/// Solve a·X = b for SPD a.
Mat solve_spd(const Mat& a, const Mat& b);
Vec solve_spd(const Mat& a, const Vec& b);

/// Solve with an existing Cholesky factor.
Vec cholesky_solve(const Mat& lower, const Vec& b);

Mat inverse_spd(const Mat& a);

struct DareSolution {
  Mat P;
  Mat K;
  int iterations = 0;
};

inline constexpr double kDareTolerance = 1e-10;
inline constexpr int kDareMaxIterations = 10000;

/// Discrete algebraic Riccati equation by fixed-point iteration from P = Q.
/// K is the infinite-horizon LQR gain, u = -K·x.
DareSolution solve_dare(const Mat& A, const Mat& B, const Mat& Q, const Mat& R);

}  // namespace nav
