#include "schemes.hpp"

#include <cmath>
#include <vector>

namespace srk {

namespace {

void check_kind(const FloatTable& table, TableKind expected) {
  require(table.kind == expected,
          std::string("table '") + table.name + "' has kind " + table_kind_name(table.kind) +
              ", stepper needs " + table_kind_name(expected));
}

}  // namespace

void em_step(const SdeSystem& sys, double t, std::span<const double> x, double h,
             std::span<const double> dw, std::span<double> out) {
  const int d = sys.d;
  const int m = sys.m;
  require(static_cast<int>(x.size()) == d && static_cast<int>(out.size()) == d,
          "state size does not match system dimension");
  require(static_cast<int>(dw.size()) == m, "increment size does not match noise dimension");

  std::vector<double> f(d);
  std::vector<double> g(static_cast<std::size_t>(d) * m);
  sys.drift(t, x, f);
  sys.diffusion(t, x, g);
  for (int a = 0; a < d; ++a) {
    double noise = 0.0;
    for (int l = 0; l < m; ++l) noise += g[static_cast<std::size_t>(a) * m + l] * dw[l];
    out[a] = x[a] + f[a] * h + noise;
  }
}

double scalar_strong_step(const FloatTable& table, const ScalarSde& sde, double t, double x,
                          double h, const ItoIntegralSet& ints) {
  check_kind(table, TableKind::scalar_strong);
  require(ints.m() == 1, "scalar strong step needs integrals with m = 1");
  require(ints.h == h, "integral set built for a different step size");
  const int s = table.stages;

  const double sqrt_h = std::sqrt(h);
  const double i1 = ints.single[0];
  const double i11_div = ints.dbl(0, 0) / sqrt_h;
  const double i10_div = ints.time_right[0] / h;
  const double i111_div = ints.triple_diag[0] / h;

  // Stage chains evaluated in index order; strict lower triangularity
  // makes every reference point at an already computed stage.
  std::vector<double> drift_at(s);  // f(t + c0_j h, X0_j)
  std::vector<double> diff_at(s);   // g(t + c1_j h, X1_j)
  for (int i = 0; i < s; ++i) {
    double x0 = x;
    double x1 = x;
    for (int j = 0; j < i; ++j) {
      x0 += table.A0[i][j] * drift_at[j] * h + table.B0[i][j] * diff_at[j] * i10_div;
      x1 += table.A1[i][j] * drift_at[j] * h + table.B1[i][j] * diff_at[j] * sqrt_h;
    }
    drift_at[i] = sde.drift(t + table.c0[i] * h, x0);
    diff_at[i] = sde.diffusion(t + table.c1[i] * h, x1);
  }

  double next = x;
  for (int i = 0; i < s; ++i) {
    next += table.a[i] * drift_at[i] * h;
    next += (table.b1[i] * i1 + table.b2[i] * i11_div + table.b3[i] * i10_div +
             table.b4[i] * i111_div) *
            diff_at[i];
  }
  return next;
}

void vector_strong_step(const FloatTable& table, const SdeSystem& sys, double t,
                        std::span<const double> x, double h, const ItoIntegralSet& ints,
                        std::span<double> out) {
  check_kind(table, TableKind::vector_strong);
  const int d = sys.d;
  const int m = sys.m;
  require(static_cast<int>(x.size()) == d && static_cast<int>(out.size()) == d,
          "state size does not match system dimension");
  require(ints.m() == m, "integral set noise dimension does not match the system");
  require(ints.h == h, "integral set built for a different step size");
  const int s = table.stages;
  const double sqrt_h = std::sqrt(h);

  auto cross = [&](int l, int k) {
    return table.transpose_cross ? ints.dbl(k, l) : ints.dbl(l, k);
  };

  // drift_at[j]: f at (t + c0_j h, X0_j); diff_at[l][j]: full d x m
  // diffusion matrix at (t + c1_j h, X^{lj}). Each point is evaluated
  // exactly once per step.
  std::vector<std::vector<double>> drift_at(s);
  std::vector<std::vector<std::vector<double>>> diff_at(m);
  for (int l = 0; l < m; ++l) diff_at[l].resize(s);

  std::vector<double> x0(d);
  Matrix xk(m, d);
  for (int i = 0; i < s; ++i) {
    for (int a = 0; a < d; ++a) x0[a] = x[a];
    for (int k = 0; k < m; ++k)
      for (int a = 0; a < d; ++a) xk(k, a) = x[a];

    for (int j = 0; j < i; ++j) {
      const double a0 = table.A0[i][j] * h;
      const double a1 = table.A1[i][j] * h;
      if (a0 != 0.0 || a1 != 0.0) {
        for (int a = 0; a < d; ++a) {
          const double fj = drift_at[j][a];
          x0[a] += a0 * fj;
          for (int k = 0; k < m; ++k) xk(k, a) += a1 * fj;
        }
      }
      const double b0 = table.B0[i][j];
      const double b1 = table.B1[i][j];
      if (b0 != 0.0 || b1 != 0.0) {
        for (int l = 0; l < m; ++l) {
          const auto& g = diff_at[l][j];
          const double w0 = b0 * ints.single[l];
          for (int a = 0; a < d; ++a) {
            const double gla = g[static_cast<std::size_t>(a) * m + l];
            x0[a] += w0 * gla;
            for (int k = 0; k < m; ++k) xk(k, a) += b1 * gla * cross(l, k) / sqrt_h;
          }
        }
      }
    }

    drift_at[i].resize(d);
    sys.drift(t + table.c0[i] * h, x0, drift_at[i]);
    for (int l = 0; l < m; ++l) {
      diff_at[l][i].resize(static_cast<std::size_t>(d) * m);
      sys.diffusion(t + table.c1[i] * h, xk.row(l), diff_at[l][i]);
    }
  }

  for (int a = 0; a < d; ++a) out[a] = x[a];
  for (int i = 0; i < s; ++i) {
    const double ai = table.a[i] * h;
    for (int a = 0; a < d; ++a) out[a] += ai * drift_at[i][a];
    for (int k = 0; k < m; ++k) {
      const double w = table.b1[i] * ints.single[k] + table.b2[i] * sqrt_h;
      if (w == 0.0) continue;
      const auto& g = diff_at[k][i];
      for (int a = 0; a < d; ++a) out[a] += w * g[static_cast<std::size_t>(a) * m + k];
    }
  }
}

WeakRandomSet sample_weak_randoms(RngStream& rng, int m, double h) {
  require(m >= 1, "noise dimension must be at least 1");
  require(h > 0.0, "step size must be positive");
  WeakRandomSet w;
  w.h = h;
  const double three_point = std::sqrt(3.0 * h);
  const double two_point = std::sqrt(h);
  w.ihat.resize(m);
  w.itil.resize(m);
  for (int k = 0; k < m; ++k) {
    const double u = rng.uniform();
    w.ihat[k] = u < 1.0 / 6.0 ? -three_point : (u < 5.0 / 6.0 ? 0.0 : three_point);
  }
  for (int k = 0; k < m; ++k) w.itil[k] = rng.uniform() < 0.5 ? -two_point : two_point;

  w.ihat2 = Matrix(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == l)
        w.ihat2(k, l) = 0.5 * (w.ihat[k] * w.ihat[k] - h);
      else if (k < l)
        w.ihat2(k, l) = 0.5 * (w.ihat[k] * w.ihat[l] - two_point * w.itil[k]);
      else
        w.ihat2(k, l) = 0.5 * (w.ihat[k] * w.ihat[l] + two_point * w.itil[l]);
    }
  }
  return w;
}

void vector_weak_step(const FloatTable& table, const SdeSystem& sys, double t,
                      std::span<const double> x, double h, const WeakRandomSet& rand,
                      std::span<double> out) {
  check_kind(table, TableKind::vector_weak);
  const int d = sys.d;
  const int m = sys.m;
  require(static_cast<int>(x.size()) == d && static_cast<int>(out.size()) == d,
          "state size does not match system dimension");
  require(rand.m() == m, "weak random set dimension does not match the system");
  require(rand.h == h, "weak random set built for a different step size");
  const int s = table.stages;
  const double sqrt_h = std::sqrt(h);

  std::vector<std::vector<double>> drift_at(s);
  std::vector<std::vector<std::vector<double>>> diff_at(m);   // at (c1_j, X^{kj})
  std::vector<std::vector<std::vector<double>>> diff_hat(m);  // at (c2_i, hat X^{ki})
  for (int k = 0; k < m; ++k) {
    diff_at[k].resize(s);
    diff_hat[k].resize(s);
  }

  std::vector<double> x0(d);
  Matrix xk(m, d), xhat(m, d);
  for (int i = 0; i < s; ++i) {
    for (int a = 0; a < d; ++a) x0[a] = x[a];
    for (int k = 0; k < m; ++k)
      for (int a = 0; a < d; ++a) xk(k, a) = xhat(k, a) = x[a];

    for (int j = 0; j < i; ++j) {
      const double a0 = table.A0[i][j] * h;
      const double a1 = table.A1[i][j] * h;
      const double a2 = table.A2[i][j] * h;
      if (a0 != 0.0 || a1 != 0.0 || a2 != 0.0) {
        for (int a = 0; a < d; ++a) {
          const double fj = drift_at[j][a];
          x0[a] += a0 * fj;
          for (int k = 0; k < m; ++k) {
            xk(k, a) += a1 * fj;
            xhat(k, a) += a2 * fj;
          }
        }
      }
      const double b0 = table.B0[i][j];
      const double b1 = table.B1[i][j];
      const double b2 = table.B2[i][j];
      for (int l = 0; l < m; ++l) {
        const auto& g = diff_at[l][j];
        for (int a = 0; a < d; ++a) {
          const double gla = g[static_cast<std::size_t>(a) * m + l];
          if (b0 != 0.0) x0[a] += b0 * gla * rand.ihat[l];
          if (b2 != 0.0)
            for (int k = 0; k < m; ++k)
              if (k != l) xhat(k, a) += b2 * gla * rand.ihat2(k, l) / sqrt_h;
        }
        if (b1 != 0.0)
          for (int a = 0; a < d; ++a)
            xk(l, a) += b1 * g[static_cast<std::size_t>(a) * m + l] * sqrt_h;
      }
    }

    drift_at[i].resize(d);
    sys.drift(t + table.c0[i] * h, x0, drift_at[i]);
    for (int k = 0; k < m; ++k) {
      diff_at[k][i].resize(static_cast<std::size_t>(d) * m);
      sys.diffusion(t + table.c1[i] * h, xk.row(k), diff_at[k][i]);
      diff_hat[k][i].resize(static_cast<std::size_t>(d) * m);
      sys.diffusion(t + table.c2[i] * h, xhat.row(k), diff_hat[k][i]);
    }
  }

  for (int a = 0; a < d; ++a) out[a] = x[a];
  for (int i = 0; i < s; ++i) {
    const double ai = table.a[i] * h;
    for (int a = 0; a < d; ++a) out[a] += ai * drift_at[i][a];
    for (int k = 0; k < m; ++k) {
      const double w1 = table.b1[i] * rand.ihat[k] + table.b2[i] * rand.ihat2(k, k) / sqrt_h;
      const double w2 = table.b3[i] * rand.ihat[k] + table.b4[i] * sqrt_h;
      const auto& g = diff_at[k][i];
      const auto& gh = diff_hat[k][i];
      for (int a = 0; a < d; ++a) {
        const std::size_t idx = static_cast<std::size_t>(a) * m + k;
        out[a] += w1 * g[idx] + w2 * gh[idx];
      }
    }
  }
}

}  // namespace srk
