#include <cmath>

#include "doctest.h"
#include "schemes.hpp"
#include "support/oracles.hpp"

using namespace srk;

namespace {

SdeSystem zero_system(int d, int m) {
  return {d, m,
          [](double, std::span<const double>, std::span<double> out) {
            for (auto& v : out) v = 0.0;
          },
          [](double, std::span<const double>, std::span<double> out) {
            for (auto& v : out) v = 0.0;
          }};
}

SdeSystem gbm_system(double mu, double sigma) {
  return {1, 1,
          [mu](double, std::span<const double> x, std::span<double> out) { out[0] = mu * x[0]; },
          [sigma](double, std::span<const double> x, std::span<double> out) {
            out[0] = sigma * x[0];
          }};
}

ItoIntegralSet integrals_for(std::span<const double> dw, double h, std::uint64_t seed = 1,
                             int n_terms = 64) {
  RngStream rng(seed);
  return sample_step_integrals(dw, h, {n_terms}, rng);
}

CoefficientTable trivial_weak_table() {
  CoefficientTable t;
  t.name = "trivial";
  t.kind = TableKind::vector_weak;
  t.stages = 1;
  t.det_order = Rational(1);
  t.stoch_order = Rational(1);
  t.A0 = t.A1 = t.A2 = {{Rational(0)}};
  t.B0 = t.B1 = t.B2 = {{Rational(0)}};
  t.c0 = t.c1 = t.c2 = {Rational(0)};
  t.a = {Rational(1)};
  t.b1 = {Rational(1)};
  t.b2 = {Rational(0)};
  t.b3 = {Rational(0)};
  t.b4 = {Rational(0)};
  return t;
}

}  // namespace

TEST_CASE("euler-maruyama step") {
  SUBCASE("zero fields keep the state") {
    SdeSystem sys = zero_system(2, 2);
    double x[2] = {1.0, -2.0}, out[2], dw[2] = {0.3, 0.4};
    em_step(sys, 0.0, x, 0.1, dw, out);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == -2.0);
  }
  SUBCASE("textbook substitution") {
    SdeSystem sys = gbm_system(0.1, 0.2);
    double x = 1.0, out, dw = 0.05;
    em_step(sys, 0.0, {&x, 1}, 0.01, {&dw, 1}, {&out, 1});
    CHECK(out == doctest::Approx(1.011).epsilon(1e-15));
  }
  SUBCASE("no noise degenerates to forward Euler") {
    SdeSystem sys{1, 1,
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 2.5; },
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; }};
    double x = 1.0, out, dw = 100.0;
    em_step(sys, 0.0, {&x, 1}, 0.1, {&dw, 1}, {&out, 1});
    CHECK(out == doctest::Approx(1.25).epsilon(1e-15));
  }
  SUBCASE("shape mismatch is rejected") {
    SdeSystem sys = zero_system(2, 1);
    double x[2] = {0, 0}, out[2], dw[2] = {0, 0};
    CHECK_THROWS_AS(em_step(sys, 0.0, x, 0.1, dw, out), InvalidError);
  }
}

TEST_CASE("scalar strong stepper") {
  const FloatTable srk1w1 = to_float(bundled_table("SRK1W1"));

  SUBCASE("deterministic consistency: f constant, g = 0") {
    ScalarSde sde{[](double, double) { return 3.0; }, [](double, double) { return 0.0; }};
    const double dw = 0.4;
    const double next = scalar_strong_step(srk1w1, sde, 0.0, 1.0, 0.1, integrals_for({&dw, 1}, 0.1));
    CHECK(next == doctest::Approx(1.3).epsilon(1e-14));
  }
  SUBCASE("zero fields fix the state") {
    ScalarSde sde{[](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
    const double dw = -0.2;
    CHECK(scalar_strong_step(srk1w1, sde, 0.0, 2.0, 0.05, integrals_for({&dw, 1}, 0.05)) == 2.0);
  }
  SUBCASE("matches an independently coded deterministic RK when g = 0") {
    ScalarSde sde{[](double, double x) { return -x; }, [](double, double) { return 0.0; }};
    const double h = 0.05;
    double x = 1.0;
    RngStream rng(4);
    for (int n = 0; n < 20; ++n) {
      const double dw = rng.normal_sd(std::sqrt(h));
      x = scalar_strong_step(srk1w1, sde, n * h, x, h, integrals_for({&dw, 1}, h, 10 + n));
    }
    const CoefficientTable& table = bundled_table("SRK1W1");
    test::DeterministicRk rk;
    rk.A.resize(4);
    rk.c.resize(4);
    rk.weights.resize(4);
    for (int i = 0; i < 4; ++i) {
      rk.c[i] = table.c0[i].value();
      rk.weights[i] = table.a[i].value();
      rk.A[i].resize(4);
      for (int j = 0; j < 4; ++j) rk.A[i][j] = table.A0[i][j].value();
    }
    auto f = [](double, std::vector<double> v) {
      return std::vector<double>{-v[0]};
    };
    auto oracle = rk.integrate([&](double t, const std::vector<double>& v) { return f(t, v); },
                               0.0, {1.0}, h, 20);
    CHECK(x == doctest::Approx(oracle[0]).epsilon(1e-12));
  }
  SUBCASE("wrong table kind is rejected") {
    ScalarSde sde{[](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
    const double dw = 0.0;
    CHECK_THROWS_AS(scalar_strong_step(to_float(bundled_table("SRK1Wm")), sde, 0, 1, 0.1,
                                       integrals_for({&dw, 1}, 0.1)),
                    InvalidError);
  }
}

TEST_CASE("vector strong stepper") {
  const FloatTable srk1wm = to_float(bundled_table("SRK1Wm"));
  const FloatTable srk2wm = to_float(bundled_table("SRK2Wm"));

  SUBCASE("m = 1 equals the hand-expanded scalar specialization") {
    const double mu = 0.4, sigma = 0.25, h = 0.02;
    SdeSystem sys = gbm_system(mu, sigma);
    for (int rep = 0; rep < 25; ++rep) {
      RngStream rng(300 + rep);
      const double x = 0.5 + rng.uniform();
      const double dw = rng.normal_sd(std::sqrt(h));
      ItoIntegralSet ints = integrals_for({&dw, 1}, h, 400 + rep);
      double out;
      vector_strong_step(srk1wm, sys, 0.0, {&x, 1}, h, ints, {&out, 1});

      // hand expansion: stages X^{12} = x +/- g(x) I11/sqrt(h), update
      // x + f h + g(x) dW + (sqrt(h)/2)(g(X^{12}) - g(X^{13}))
      auto g = [&](double v) { return sigma * v; };
      const double i11 = ints.dbl(0, 0);
      const double x12 = x + g(x) * i11 / std::sqrt(h);
      const double x13 = x - g(x) * i11 / std::sqrt(h);
      const double expected =
          x + mu * x * h + g(x) * dw + 0.5 * std::sqrt(h) * (g(x12) - g(x13));
      CHECK(out == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("deterministic consistency for SRK2Wm") {
    SdeSystem sys{2, 2,
                  [](double, std::span<const double>, std::span<double> out) {
                    out[0] = 1.0;
                    out[1] = -2.0;
                  },
                  [](double, std::span<const double>, std::span<double> out) {
                    for (auto& v : out) v = 0.0;
                  }};
    double x[2] = {0.0, 0.0}, out[2], dw[2] = {0.3, -0.1};
    vector_strong_step(srk2wm, sys, 0.0, x, 0.25, integrals_for(dw, 0.25), out);
    CHECK(out[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(out[1] == doctest::Approx(-0.5).epsilon(1e-14));
  }
  SUBCASE("fixed point stays put") {
    SdeSystem sys{2, 2,
                  [](double, std::span<const double> x, std::span<double> out) {
                    out[0] = x[0] - 1.0;
                    out[1] = x[1] - 2.0;
                  },
                  [](double, std::span<const double> x, std::span<double> out) {
                    out[0] = x[0] - 1.0;
                    out[1] = 0.0;
                    out[2] = 0.0;
                    out[3] = x[1] - 2.0;
                  }};
    double x[2] = {1.0, 2.0}, out[2], dw[2] = {0.7, -0.4};
    vector_strong_step(srk1wm, sys, 0.0, x, 0.1, integrals_for(dw, 0.1), out);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == 2.0);
  }
}

TEST_CASE("affine equivariance of the steppers") {
  const double shift = 0.75, h = 0.05;
  const double mu = 0.3, sigma = 0.2;
  SdeSystem sys = gbm_system(mu, sigma);
  SdeSystem shifted{1, 1,
                    [mu, shift](double, std::span<const double> x, std::span<double> out) {
                      out[0] = mu * (x[0] - shift);
                    },
                    [sigma, shift](double, std::span<const double> x, std::span<double> out) {
                      out[0] = sigma * (x[0] - shift);
                    }};
  RngStream rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const double x = 1.0 + rng.uniform();
    const double xs = x + shift;
    const double dw = rng.normal_sd(std::sqrt(h));
    ItoIntegralSet ints = integrals_for({&dw, 1}, h, 900 + rep);

    double base, moved;
    vector_strong_step(to_float(bundled_table("SRK1Wm")), sys, 0.0, {&x, 1}, h, ints, {&base, 1});
    vector_strong_step(to_float(bundled_table("SRK1Wm")), shifted, 0.0, {&xs, 1}, h, ints,
                       {&moved, 1});
    CHECK(moved - shift == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("weak random variables") {
  SUBCASE("three-point law and moments") {
    RngStream rng(2025);
    const double h = 0.04;
    const int draws = 10000;
    int zeros = 0;
    double m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < draws; ++i) {
      WeakRandomSet w = sample_weak_randoms(rng, 1, h);
      if (w.ihat[0] == 0.0) ++zeros;
      m2 += w.ihat[0] * w.ihat[0];
      m4 += std::pow(w.ihat[0], 4);
    }
    CHECK(static_cast<double>(zeros) / draws == doctest::Approx(2.0 / 3.0).epsilon(0.03));
    CHECK(m2 / draws == doctest::Approx(h).epsilon(0.05));
    CHECK(m4 / draws == doctest::Approx(3 * h * h).epsilon(0.08));
  }
  SUBCASE("pairwise product identity holds exactly") {
    RngStream rng(77);
    const double h = 0.09;
    for (int rep = 0; rep < 200; ++rep) {
      WeakRandomSet w = sample_weak_randoms(rng, 3, h);
      for (int k = 0; k < 3; ++k) {
        CHECK(w.ihat2(k, k) == 0.5 * (w.ihat[k] * w.ihat[k] - h));
        for (int l = 0; l < 3; ++l)
          if (k != l) CHECK(w.ihat2(k, l) + w.ihat2(l, k) == w.ihat[k] * w.ihat[l]);
      }
    }
  }
}

TEST_CASE("weak stepper") {
  SUBCASE("trivial table reproduces Euler driven by the three-point variables") {
    const FloatTable table = to_float(trivial_weak_table());
    SdeSystem sys{2, 2,
                  [](double, std::span<const double> x, std::span<double> out) {
                    out[0] = 0.3 * x[0] + x[1];
                    out[1] = -x[0];
                  },
                  [](double, std::span<const double> x, std::span<double> out) {
                    out[0] = 0.1 * x[0];
                    out[1] = 0.2;
                    out[2] = x[1];
                    out[3] = 0.05 * x[0] * x[1];
                  }};
    RngStream rng(31);
    for (int rep = 0; rep < 50; ++rep) {
      const double h = 0.02;
      WeakRandomSet w = sample_weak_randoms(rng, 2, h);
      double x[2] = {1.0 + rng.uniform(), -0.5 + rng.uniform()};
      double weak_out[2], em_out[2];
      vector_weak_step(table, sys, 0.3, x, h, w, weak_out);
      em_step(sys, 0.3, x, h, w.ihat, em_out);
      CHECK(weak_out[0] == doctest::Approx(em_out[0]).epsilon(1e-14));
      CHECK(weak_out[1] == doctest::Approx(em_out[1]).epsilon(1e-14));
    }
  }
  SUBCASE("no noise reduces to the deterministic part") {
    const FloatTable table = to_float(bundled_table("EulerW"));
    SdeSystem sys{1, 1,
                  [](double, std::span<const double> x, std::span<double> out) {
                    out[0] = x[0] * (1.0 - x[0]);
                  },
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; }};
    RngStream rng(5);
    double x = 0.2, out;
    WeakRandomSet w = sample_weak_randoms(rng, 1, 0.1);
    vector_weak_step(table, sys, 0.0, {&x, 1}, 0.1, w, {&out, 1});
    CHECK(out == doctest::Approx(0.2 + 0.1 * 0.2 * 0.8).epsilon(1e-14));
  }
  SUBCASE("constant diffusion moments") {
    const FloatTable table = to_float(trivial_weak_table());
    SdeSystem sys{1, 1,
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; },
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 2.0; }};
    RngStream rng(9);
    const double h = 0.25;
    const int draws = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
      WeakRandomSet w = sample_weak_randoms(rng, 1, h);
      double x = 0.0, out;
      vector_weak_step(table, sys, 0.0, {&x, 1}, h, w, {&out, 1});
      sum += out;
      sum_sq += out * out;
    }
    CHECK(std::abs(sum / draws) < 4.0 * 2.0 * std::sqrt(h) / std::sqrt(draws));
    CHECK(sum_sq / draws == doctest::Approx(4.0 * h).epsilon(0.05));
  }
}
