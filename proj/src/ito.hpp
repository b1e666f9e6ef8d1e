#pragma once

#include <span>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "rng.hpp"

namespace srk {

// Truncation length for the series approximation of the off-diagonal
// double integrals. The truncation error decays like h^2 / n_terms.
struct SeriesConfig {
  int n_terms = 1;
};

// Default picked so the truncation error stays below the local error of
// the strong order-1.0 vector schemes without user tuning.
int default_series_terms(double h);

// All single, double and triple Ito integral values a stepper needs for
// one step of size h. Immutable by convention once filled.
//
// Index convention for the double integrals: dbl(a, b) is the integral
// with dW^a on the inner (earlier) time and dW^b on the outer, so the
// diagonal is ((dW^a)^2 - h)/2 and dbl(a,b) + dbl(b,a) = dW^a dW^b.
struct ItoIntegralSet {
  double h = 0.0;
  std::vector<double> single;       // I^a = dW^a
  std::vector<double> time_left;    // I^{0a}
  std::vector<double> time_right;   // I^{a0}
  Matrix dbl;                       // I^{ab}
  std::vector<double> triple_diag;  // I^{aaa}

  int m() const { return static_cast<int>(single.size()); }
};

struct SingleIntegrals {
  double time;                 // I^0 = h
  std::vector<double> wiener;  // I^a = dW^a
};

SingleIntegrals single_integrals(std::span<const double> dw, double h);

// I^{00} = h^2/2. Unused by the bundled schemes; kept for completeness.
double time_time_integral(double h);

// I^{aa} = ((dW)^2 - h)/2, exact.
double double_same(double dw, double h);

// (I^{0a}, I^{a0}) from I^a and an independent zeta ~ N(0, h); the pair
// sums to h * I^a exactly.
std::pair<double, double> mixed_time(double single_a, double zeta, double h);

// I^{aaa} = ((dW)^3 - 3 h dW)/6, exact.
double triple_diag_integral(double dw, double h);

// Full m x m matrix of double integrals: exact symmetric part plus the
// truncated antisymmetric series. Consumes exactly n_terms * 2m standard
// Gaussians in k-major order, V vector before U vector, component index
// varying fastest. The diagonal equals double_same exactly.
Matrix double_cross(std::span<const double> dw, double h, const SeriesConfig& cfg, RngStream& rng);

// Same value computed through the matrix (outer-product) form of the
// series; identical draw order, so with equal streams the two routes
// agree to rounding.
Matrix double_cross_matrix(std::span<const double> dw, double h, const SeriesConfig& cfg,
                           RngStream& rng);

// Bundles everything for one step. Draw order: zeta^1..zeta^m for the
// time-mixed integrals, then the series Gaussians (none when m == 1).
ItoIntegralSet sample_step_integrals(std::span<const double> dw, double h,
                                     const SeriesConfig& cfg, RngStream& rng);

}  // namespace srk
