#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace qdgate {

// Adaptive Gauss-Kronrod (G7, K15) integration with interval bisection.
// `abs_tol` bounds the absolute error estimate summed over all subintervals.
template <class F>
double integrate_gk(F&& f, double a, double b, double abs_tol = 1e-10,
                    int max_depth = 40) {
  // QUADPACK dqk15 nodes/weights on [-1, 1].
  static constexpr double xk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898, 0.0};
  static constexpr double wk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728};
  static constexpr double wg[4] = {0.129484966168870, 0.279705391489277,
                                   0.381830050505119, 0.417959183673469};

  struct Panel {
    double a, b, tol;
    int depth;
  };

  auto kernel = [&](double lo, double hi, double& err) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
      fv[i] = f(c - h * xk[i]);
      fv[14 - i] = f(c + h * xk[i]);
    }
    fv[7] = f(c);
    double resk = wk[7] * fv[7];
    double resg = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += wk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i)
      resg += wg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    err = std::abs(resk - resg) * h;
    return resk * h;
  };

  if (a == b) return 0.0;

  // Simple explicit stack; panels that meet their share of the tolerance
  // are accumulated, the rest are bisected.
  Panel stack[2048];
  int top = 0;
  stack[top++] = {a, b, abs_tol, 0};
  double total = 0.0;
  while (top > 0) {
    Panel p = stack[--top];
    double err = 0.0;
    const double val = kernel(p.a, p.b, err);
    if (err <= p.tol || p.depth >= max_depth) {
      total += val;
      continue;
    }
    if (top + 2 > 2047)
      throw std::runtime_error("integrate_gk: panel stack overflow");
    const double mid = 0.5 * (p.a + p.b);
    stack[top++] = {p.a, mid, 0.5 * p.tol, p.depth + 1};
    stack[top++] = {mid, p.b, 0.5 * p.tol, p.depth + 1};
  }
  return total;
}

}  // namespace qdgate
