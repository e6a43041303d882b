#include "navsim/core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "navsim/core/error.hpp"

namespace nav {
namespace {

std::optional<Mat> try_factor(const Mat& a) {
  const std::size_t n = a.rows();
  Mat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

void check_symmetric_square(const Mat& a) {
  require(a.square(), "matrix must be square");
  require(a.asymmetry() <= 1e-9 * (1.0 + a.max_abs()), "matrix must be symmetric");
}

}  // namespace

Mat cholesky(const Mat& a) {
  check_symmetric_square(a);
  if (auto l = try_factor(a)) return *l;
  const double jitter = a.rows() ? 1e-10 * a.trace() / static_cast<double>(a.rows()) : 0.0;
  if (jitter > 0.0) {
    Mat loaded = a;
    for (std::size_t i = 0; i < a.rows(); ++i) loaded(i, i) += jitter;
    if (auto l = try_factor(loaded)) return *l;
  }
  fail(ErrorCode::NotPositiveDefinite, "cholesky pivot is not positive");
}

Mat cholesky_semidefinite(const Mat& a) {
  check_symmetric_square(a);
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
  const double floor = 1e-12 * max_diag;
  Mat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= floor) {
      if (d < -1e-9 * (1.0 + max_diag)) fail(ErrorCode::NotPositiveDefinite, "matrix is not semi-definite");
      continue;
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Vec cholesky_solve(const Mat& lower, const Vec& b) {
  const std::size_t n = lower.rows();
  require(b.size() == n, "right-hand side size mismatch");
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * y[k];
    y[i] = s / lower(i, i);
  }
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower(k, ii) * x[k];
    x[ii] = s / lower(ii, ii);
  }
  return x;
}

Vec solve_spd(const Mat& a, const Vec& b) {
  require(b.size() == a.rows(), "right-hand side size mismatch");
  return cholesky_solve(cholesky(a), b);
}

Mat solve_spd(const Mat& a, const Mat& b) {
  require(b.rows() == a.rows(), "right-hand side row count mismatch");
  const Mat l = cholesky(a);
  Mat x(b.rows(), b.cols());
  Vec col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    const Vec sol = cholesky_solve(l, col);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
  }
  return x;
}

Mat inverse_spd(const Mat& a) {
  Mat inv = solve_spd(a, Mat::identity(a.rows()));
  inv.symmetrize();
  return inv;
}

DareSolution solve_dare(const Mat& A, const Mat& B, const Mat& Q, const Mat& R) {
  const std::size_t n = A.rows();
  require(A.square(), "A must be square");
  require(B.rows() == n, "B row count must match A");
  require(Q.rows() == n && Q.cols() == n, "Q must be n x n");
  require(R.rows() == B.cols() && R.square(), "R must be m x m");
  require(Q.asymmetry() <= 1e-9 * (1.0 + Q.max_abs()), "Q must be symmetric");

  const Mat At = A.transpose();
  const Mat Bt = B.transpose();
  Mat P = Q;
  for (int it = 1; it <= kDareMaxIterations; ++it) {
    const Mat PA = P * A;
    const Mat PB = P * B;
    const Mat gain = solve_spd(R + Bt * PB, Bt * PA);
    Mat next = At * PA - (At * PB) * gain + Q;
    next.symmetrize();
    const double delta = (next - P).max_abs();
    if (!std::isfinite(delta)) fail(ErrorCode::NoConvergence, "Riccati iteration diverged");
    P = std::move(next);
    if (delta < kDareTolerance) {
      Mat K = solve_spd(R + Bt * P * B, Bt * P * A);
      return {std::move(P), std::move(K), it};
    }
  }
  fail(ErrorCode::NoConvergence, "Riccati iteration did not converge");
}

}  // namespace nav
