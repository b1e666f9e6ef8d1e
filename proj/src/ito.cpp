#include "ito.hpp"

#include <cmath>
#include <numbers>
#include <tuple>

#include "error.hpp"

namespace srk {

namespace {

void check_series_args(std::span<const double> dw, double h, const SeriesConfig& cfg) {
  require(h > 0.0, "step size must be positive");
  require(!dw.empty(), "noise dimension must be at least 1");
  require(cfg.n_terms >= 1, "series truncation length must be at least 1");
}

// Exact part (dW^a dW^b - h delta^{ab}) / 2 placed into out.
Matrix exact_symmetric_part(std::span<const double> dw, double h) {
  const int m = static_cast<int>(dw.size());
  Matrix out(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      out(a, b) = a == b ? double_same(dw[a], h) : 0.5 * dw[a] * dw[b];
  return out;
}

void draw_series(int m, int n_terms, RngStream& rng, Matrix& v, Matrix& u) {
  v = Matrix(n_terms, m);
  u = Matrix(n_terms, m);
  for (int k = 0; k < n_terms; ++k) {
    for (int a = 0; a < m; ++a) v(k, a) = rng.normal();
    for (int a = 0; a < m; ++a) u(k, a) = rng.normal();
  }
}

}  // namespace

int default_series_terms(double h) {
  require(h > 0.0, "step size must be positive");
  double n = std::ceil(1.0 / h);
  if (n < 1.0) return 1;
  if (n > 1e7) return 10000000;
  return static_cast<int>(n);
}

SingleIntegrals single_integrals(std::span<const double> dw, double h) {
  require(h > 0.0, "step size must be positive");
  return {h, {dw.begin(), dw.end()}};
}

double time_time_integral(double h) { return 0.5 * h * h; }

double double_same(double dw, double h) { return 0.5 * (dw * dw - h); }

std::pair<double, double> mixed_time(double single_a, double zeta, double h) {
  const double spread = zeta / std::sqrt(3.0);
  return {0.5 * h * (single_a - spread), 0.5 * h * (single_a + spread)};
}

double triple_diag_integral(double dw, double h) {
  return (dw * dw * dw - 3.0 * h * dw) / 6.0;
}

Matrix double_cross(std::span<const double> dw, double h, const SeriesConfig& cfg,
                    RngStream& rng) {
  check_series_args(dw, h, cfg);
  const int m = static_cast<int>(dw.size());
  Matrix out = exact_symmetric_part(dw, h);
  if (m == 1) return out;

  Matrix v, u;
  draw_series(m, cfg.n_terms, rng, v, u);
  const double prefactor = h / (2.0 * std::numbers::pi);
  const double scale = std::sqrt(2.0 / h);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      double series = 0.0;
      for (int k = 0; k < cfg.n_terms; ++k) {
        series += (v(k, a) * (u(k, b) + scale * dw[b]) -
                   v(k, b) * (u(k, a) + scale * dw[a])) /
                  static_cast<double>(k + 1);
      }
      const double area = prefactor * series;
      out(a, b) += area;
      out(b, a) -= area;
    }
  }
  return out;
}

Matrix double_cross_matrix(std::span<const double> dw, double h, const SeriesConfig& cfg,
                           RngStream& rng) {
  check_series_args(dw, h, cfg);
  const int m = static_cast<int>(dw.size());
  Matrix out = exact_symmetric_part(dw, h);
  if (m == 1) return out;

  const double prefactor = h / (2.0 * std::numbers::pi);
  const double scale = std::sqrt(2.0 / h);
  Matrix area(m, m);
  std::vector<double> v(m), shifted(m);
  for (int k = 0; k < cfg.n_terms; ++k) {
    for (int a = 0; a < m; ++a) v[a] = rng.normal();
    for (int a = 0; a < m; ++a) shifted[a] = rng.normal() + scale * dw[a];
    const double weight = 1.0 / static_cast<double>(k + 1);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        area(a, b) += weight * (v[a] * shifted[b] - shifted[a] * v[b]);
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out(a, b) += prefactor * area(a, b);
  return out;
}

ItoIntegralSet sample_step_integrals(std::span<const double> dw, double h,
                                     const SeriesConfig& cfg, RngStream& rng) {
  require(h > 0.0, "step size must be positive");
  require(!dw.empty(), "noise dimension must be at least 1");
  const int m = static_cast<int>(dw.size());

  ItoIntegralSet set;
  set.h = h;
  set.single.assign(dw.begin(), dw.end());
  set.time_left.resize(m);
  set.time_right.resize(m);
  for (int a = 0; a < m; ++a) {
    const double zeta = rng.normal_sd(std::sqrt(h));
    std::tie(set.time_left[a], set.time_right[a]) = mixed_time(dw[a], zeta, h);
  }
  set.dbl = double_cross(dw, h, cfg, rng);
  set.triple_diag.resize(m);
  for (int a = 0; a < m; ++a) set.triple_diag[a] = triple_diag_integral(dw[a], h);
  return set;
}

}  // namespace srk
