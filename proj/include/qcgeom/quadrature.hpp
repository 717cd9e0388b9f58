#pragma once

// Gauss-Legendre quadrature on [0, 1], nodes computed by Newton iteration on
// the Legendre recurrence.

#include <cmath>
#include <utility>
#include <vector>

namespace qcg {

inline std::vector<std::pair<double, double>> gauss_legendre_01(int m) {
  std::vector<std::pair<double, double>> out(m);
  for (int k = 0; k < m; ++k) {
    // Chebyshev initial guess for the k-th root of P_m on [-1, 1].
    double x = std::cos(M_PI * (k + 0.75) / (m + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[k] = {0.5 * (x + 1.0), 0.5 * w};  // map to [0, 1]
  }
  return out;
}

}  // namespace qcg
