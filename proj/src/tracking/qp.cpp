#include "navsim/tracking/qp.hpp"

#include <algorithm>
#include <cmath>

#include "navsim/core/error.hpp"
#include "navsim/core/linalg.hpp"

namespace nav {

namespace {

Vec transpose_times(const Mat& a, const Vec& v) {
  Vec out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += a(i, j) * v[i];
  return out;
}

}  // namespace

QpResult qp_solve_admm(const Qp& qp, const AdmmParams& params, const QpResult* warm) {
  const std::size_t n = qp.q.size(), m = qp.l.size();
  require(qp.P.rows() == n && qp.P.cols() == n, "P must be n x n");
  require(qp.A.rows() == m && qp.A.cols() == n && qp.u.size() == m, "constraint dimensions mismatch");
  require(qp.P.asymmetry() <= 1e-9, "P must be symmetric");
  for (std::size_t i = 0; i < m; ++i) require(qp.l[i] <= qp.u[i], "l must not exceed u");
  require(params.rho > 0 && params.sigma > 0 && params.alpha > 0 && params.alpha < 2 && params.eps > 0,
          "invalid ADMM parameters");

  const double rho = params.rho, sigma = params.sigma, alpha = params.alpha;
  Mat kkt = qp.P;
  for (std::size_t i = 0; i < n; ++i) kkt(i, i) += sigma;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) kkt(a, b) += rho * qp.A(i, a) * qp.A(i, b);
  const Mat factor = cholesky(kkt);

  QpResult r;
  if (warm && warm->x.size() == n && warm->z.size() == m && warm->y.size() == m) {
    r.x = warm->x;
    r.z = warm->z;
    r.y = warm->y;
  } else {
    r.x.assign(n, 0.0);
    r.z.assign(m, 0.0);
    r.y.assign(m, 0.0);
  }

  Vec rhs(n), zt(m);
  for (int it = 1; it <= params.max_iter; ++it) {
    Vec w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = rho * r.z[i] - r.y[i];
    const Vec atw = transpose_times(qp.A, w);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = sigma * r.x[j] - qp.q[j] + atw[j];
    const Vec xt = cholesky_solve(factor, rhs);
    zt = qp.A * xt;
    for (std::size_t j = 0; j < n; ++j) r.x[j] = alpha * xt[j] + (1.0 - alpha) * r.x[j];
    for (std::size_t i = 0; i < m; ++i) {
      const double relaxed = alpha * zt[i] + (1.0 - alpha) * r.z[i];
      const double z_new = std::clamp(relaxed + r.y[i] / rho, qp.l[i], qp.u[i]);
      r.y[i] += rho * (relaxed - z_new);
      r.z[i] = z_new;
    }
    r.iterations = it;

    const Vec ax = qp.A * r.x;
    double prim = 0.0;
    for (std::size_t i = 0; i < m; ++i) prim = std::max(prim, std::abs(ax[i] - r.z[i]));
    if (prim >= params.eps) continue;
    const Vec px = qp.P * r.x;
    const Vec aty = transpose_times(qp.A, r.y);
    double dual = 0.0;
    for (std::size_t j = 0; j < n; ++j) dual = std::max(dual, std::abs(px[j] + qp.q[j] + aty[j]));
    if (dual < params.eps) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace nav
