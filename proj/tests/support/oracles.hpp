#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "navsim/core/linalg.hpp"
#include "navsim/core/mat.hpp"

namespace nav::oracle {

/// Central-difference Jacobian of f at x.
inline Mat finite_difference_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h = 1e-6) {
  const Vec f0 = f(x);
  Mat j(f0.size(), x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    Vec xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    const Vec fp = f(xp), fm = f(xm);
    for (std::size_t r = 0; r < f0.size(); ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return j;
}

inline double frobenius(const Mat& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

/// ‖a − b‖_F / max(‖b‖_F, 1)
inline double relative_error(const Mat& a, const Mat& b) {
  return frobenius(a - b) / std::max(frobenius(b), 1.0);
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(Mat a) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double min_eigenvalue(const Mat& a) {
  Mat s = a;
  s.symmetrize();
  return symmetric_eigenvalues(s).front();
}

/// Spectral radius through Gelfand's formula ρ = lim ‖Mᵏ‖^(1/k), evaluated
/// with repeated squaring and renormalization (k = 2^20).
inline double spectral_radius(const Mat& m) {
  Mat p = m;
  double log_scale = 0.0;  // log of the factor divided out of p so far
  double k = 1.0;
  for (int i = 0; i < 20; ++i) {
    const double nrm = frobenius(p);
    if (nrm == 0.0) return 0.0;
    p *= 1.0 / nrm;
    log_scale += std::log(nrm);
    p = p * p;
    log_scale *= 2.0;
    k *= 2.0;
  }
  const double nrm = frobenius(p);
  if (nrm == 0.0) return 0.0;
  return std::exp((log_scale + std::log(nrm)) / k);
}

/// Dense Gaussian elimination with partial pivoting for general systems.
inline bool gauss_solve(Mat a, Vec b, Vec& x) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) < 1e-12) return false;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a(r, k) * x[k];
    x[r] = s / a(r, r);
  }
  return true;
}

/// max |AᵀPA − AᵀPB(R + BᵀPB)⁻¹BᵀPA + Q − P|
inline double dare_residual(const Mat& A, const Mat& B, const Mat& Q, const Mat& R, const Mat& P) {
  const Mat At = A.transpose(), Bt = B.transpose();
  const Mat rhs = At * P * A - At * P * B * solve_spd(R + Bt * P * B, Bt * P * A) + Q;
  return (rhs - P).max_abs();
}

}  // namespace nav::oracle
