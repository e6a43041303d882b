#pragma once

#include "navsim/core/mat.hpp"

namespace nav {

/// minimize ½xᵀPx + qᵀx subject to l ≤ Ax ≤ u.
struct Qp {
  Mat P;
  Vec q;
  Mat A;
  Vec l, u;
};

struct AdmmParams {
  double rho = 1.0;
  double sigma = 1e-6;
  double alpha = 1.6;
  int max_iter = 4000;
  double eps = 1e-6;
};

struct QpResult {
  Vec x, z, y;
  bool converged = false;
  int iterations = 0;
};

/// Dense operator-splitting solver with a fixed penalty; the KKT matrix
/// P + σI + ρAᵀA is factored once. When max_iter runs out the last iterate
/// is returned with converged = false. `warm` seeds (x, z, y) if non-null.
QpResult qp_solve_admm(const Qp& qp, const AdmmParams& params = {}, const QpResult* warm = nullptr);

}  // namespace nav
