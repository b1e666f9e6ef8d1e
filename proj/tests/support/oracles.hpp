#pragma once

#include <cmath>
#include <vector>

#include "rng.hpp"

namespace srk::test {

// Brute-force double integral of dW^1 dW^2 over one step of size h by
// left-endpoint summation on a fine subgrid; the reference the series
// approximation is checked against.
inline double bruteforce_cross_integral(double h, int substeps, RngStream& rng) {
  const double sd = std::sqrt(h / substeps);
  double w1 = 0.0;
  double integral = 0.0;
  for (int i = 0; i < substeps; ++i) {
    const double dw1 = rng.normal_sd(sd);
    const double dw2 = rng.normal_sd(sd);
    integral += w1 * dw2;
    w1 += dw1;
  }
  return integral;
}

// Classical explicit Runge-Kutta over tableau (A, c, a) on x' = f(t, x);
// the independent oracle for the deterministic degeneration checks.
struct DeterministicRk {
  std::vector<std::vector<double>> A;
  std::vector<double> c;
  std::vector<double> weights;

  template <typename F>
  std::vector<double> step(const F& f, double t, std::vector<double> x, double h) const {
    const int s = static_cast<int>(weights.size());
    const int d = static_cast<int>(x.size());
    std::vector<std::vector<double>> k(s);
    for (int i = 0; i < s; ++i) {
      std::vector<double> xi = x;
      for (int j = 0; j < i; ++j)
        if (A[i][j] != 0.0)
          for (int a = 0; a < d; ++a) xi[a] += h * A[i][j] * k[j][a];
      k[i] = f(t + c[i] * h, xi);
    }
    for (int i = 0; i < s; ++i)
      if (weights[i] != 0.0)
        for (int a = 0; a < d; ++a) x[a] += h * weights[i] * k[i][a];
    return x;
  }

  template <typename F>
  std::vector<double> integrate(const F& f, double t0, std::vector<double> x, double h,
                                long steps) const {
    for (long n = 0; n < steps; ++n) x = step(f, t0 + n * h, x, h);
    return x;
  }
};

}  // namespace srk::test
