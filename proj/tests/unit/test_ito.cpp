#include <cmath>

#include "doctest.h"
#include "ito.hpp"
#include "support/oracles.hpp"

using namespace srk;

TEST_CASE("single integrals") {
  const double dw = 0.3;
  auto s = single_integrals({&dw, 1}, 0.1);
  CHECK(s.time == 0.1);
  CHECK(s.wiener[0] == 0.3);

  const double zeros[2] = {0.0, 0.0};
  auto z = single_integrals(zeros, 1.0);
  CHECK(z.time == 1.0);
  CHECK(z.wiener[0] == 0.0);
  CHECK(z.wiener[1] == 0.0);
}

TEST_CASE("double integral, equal indices") {
  CHECK(double_same(0.0, 0.2) == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(double_same(std::sqrt(0.3), 0.3) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(time_time_integral(0.2) == doctest::Approx(0.02).epsilon(1e-15));

  // Ito integrals have zero mean
  RngStream rng(42);
  const double h = 0.05;
  const int samples = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double value = double_same(rng.normal_sd(std::sqrt(h)), h);
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / samples;
  const double stderr_mean = std::sqrt((sum_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean) < 4.0 * stderr_mean);
}

TEST_CASE("time-mixed integrals") {
  auto [left, right] = mixed_time(1.0, 0.0, 2.0);
  CHECK(left == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(right == doctest::Approx(1.0).epsilon(1e-15));

  auto [l2, r2] = mixed_time(0.0, std::sqrt(3.0), 1.0);
  CHECK(l2 == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(r2 == doctest::Approx(0.5).epsilon(1e-12));

  RngStream rng(3);
  for (int i = 0; i < 200; ++i) {
    const double h = 0.01 + rng.uniform();
    const double ia = rng.normal();
    const double zeta = rng.normal_sd(std::sqrt(h));
    auto [l, r] = mixed_time(ia, zeta, h);
    CHECK(l + r == doctest::Approx(h * ia).epsilon(1e-12));
  }
}

TEST_CASE("triple integral, equal indices") {
  CHECK(triple_diag_integral(0.0, 0.5) == 0.0);
  const double h = 0.3;
  CHECK(triple_diag_integral(std::sqrt(h), h) ==
        doctest::Approx(-std::pow(h, 1.5) / 3.0).epsilon(1e-12));
  CHECK(triple_diag_integral(2.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("cross integrals: m = 1 has no series") {
  RngStream rng(1);
  const double dw = 0.7;
  Matrix one = double_cross({&dw, 1}, 0.2, {50}, rng);
  CHECK(one(0, 0) == double_same(dw, 0.2));
  // nothing was drawn
  RngStream untouched(1);
  CHECK(rng.next_u64() == untouched.next_u64());
}

TEST_CASE("cross integrals: diagonal exactness and pair sums") {
  RngStream rng(17);
  const double h = 0.03;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> dw(3);
    for (auto& v : dw) v = rng.normal_sd(std::sqrt(h));
    Matrix ii = double_cross(dw, h, {64}, rng);
    for (int a = 0; a < 3; ++a) CHECK(ii(a, a) == double_same(dw[a], h));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b)
          CHECK(ii(a, b) + ii(b, a) == doctest::Approx(dw[a] * dw[b]).epsilon(1e-12));
  }
}

TEST_CASE("scalar and matrix series forms agree on identical draws") {
  const double h = 0.05;
  for (int rep = 0; rep < 20; ++rep) {
    RngStream noise(100 + rep);
    std::vector<double> dw(4);
    for (auto& v : dw) v = noise.normal_sd(std::sqrt(h));
    RngStream a(7000 + rep), b(7000 + rep);
    Matrix scalar_form = double_cross(dw, h, {128}, a);
    Matrix matrix_form = double_cross_matrix(dw, h, {128}, b);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(scalar_form(i, j) == doctest::Approx(matrix_form(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("series second moment against the brute-force oracle") {
  const double h = 0.01;
  const double analytic = h * h / 2.0;

  RngStream rng(555);
  const int samples = 20000;
  double series_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    double dw[2] = {rng.normal_sd(std::sqrt(h)), rng.normal_sd(std::sqrt(h))};
    Matrix ii = double_cross(dw, h, {100}, rng);
    series_sq += ii(0, 1) * ii(0, 1);
  }
  const double series_moment = series_sq / samples;
  CHECK(series_moment == doctest::Approx(analytic).epsilon(0.08));

  RngStream oracle_rng(556);
  const int oracle_samples = 4000;
  double oracle_sq = 0.0;
  for (int i = 0; i < oracle_samples; ++i) {
    const double value = test::bruteforce_cross_integral(h, 1000, oracle_rng);
    oracle_sq += value * value;
  }
  const double oracle_moment = oracle_sq / oracle_samples;
  CHECK(oracle_moment == doctest::Approx(analytic).epsilon(0.12));
  CHECK(series_moment == doctest::Approx(oracle_moment).epsilon(0.15));
}

TEST_CASE("truncation error variance decays like 1/n") {
  const double h = 0.1;
  const int reference_terms = 4096;
  const int samples = 1500;
  double var8 = 0.0, var32 = 0.0;
  RngStream noise(9);
  for (int i = 0; i < samples; ++i) {
    double dw[2] = {noise.normal_sd(std::sqrt(h)), noise.normal_sd(std::sqrt(h))};
    const std::uint64_t seed = RngStream::derive(1234, i);
    // same auxiliary prefix: truncations of one draw sequence
    RngStream r_ref(seed), r8(seed), r32(seed);
    Matrix ref = double_cross(dw, h, {reference_terms}, r_ref);
    Matrix a8 = double_cross(dw, h, {8}, r8);
    Matrix a32 = double_cross(dw, h, {32}, r32);
    var8 += (a8(0, 1) - ref(0, 1)) * (a8(0, 1) - ref(0, 1));
    var32 += (a32(0, 1) - ref(0, 1)) * (a32(0, 1) - ref(0, 1));
  }
  var8 /= samples;
  var32 /= samples;
  // tail(8)/tail(32) = (1/8 - 1/4096)/(1/32 - 1/4096), about 4.1
  CHECK(var8 / var32 == doctest::Approx(4.1).epsilon(0.25));
}

TEST_CASE("per-step bundle holds its invariants") {
  const double h = 0.02;
  RngStream rng(77);

  SUBCASE("m = 1 draws no series") {
    const double dw = -0.1;
    RngStream a(5), b(5);
    ItoIntegralSet set = sample_step_integrals({&dw, 1}, h, {100}, a);
    CHECK(set.dbl(0, 0) == double_same(dw, h));
    b.normal();  // only the zeta draw
    CHECK(a.next_u64() == b.next_u64());
  }

  SUBCASE("fixed seed is deterministic") {
    std::vector<double> dw = {0.1, -0.2};
    RngStream a(6), b(6);
    ItoIntegralSet sa = sample_step_integrals(dw, h, {32}, a);
    ItoIntegralSet sb = sample_step_integrals(dw, h, {32}, b);
    CHECK(sa.dbl == sb.dbl);
    CHECK(sa.time_left == sb.time_left);
  }

  SUBCASE("invariants for random draws") {
    for (int rep = 0; rep < 100; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 4);
      std::vector<double> dw(m);
      for (auto& v : dw) v = rng.normal_sd(std::sqrt(h));
      ItoIntegralSet set = sample_step_integrals(dw, h, {16}, rng);
      CHECK(set.m() == m);
      for (int a = 0; a < m; ++a) {
        CHECK(set.single[a] == dw[a]);
        CHECK(set.dbl(a, a) == double_same(dw[a], h));
        CHECK(set.time_left[a] + set.time_right[a] ==
              doctest::Approx(h * dw[a]).epsilon(1e-12));
        CHECK(set.triple_diag[a] == triple_diag_integral(dw[a], h));
        for (int b2 = 0; b2 < m; ++b2)
          if (a != b2)
            CHECK(set.dbl(a, b2) + set.dbl(b2, a) ==
                  doctest::Approx(dw[a] * dw[b2]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("default series length tracks 1/h") {
  CHECK(default_series_terms(0.5) == 2);
  CHECK(default_series_terms(1.0) == 1);
  CHECK(default_series_terms(2.0) == 1);
  CHECK(default_series_terms(0.01) == 100);
  CHECK(default_series_terms(1.0 / 1024.0) == 1024);
  CHECK_THROWS_AS(default_series_terms(0.0), InvalidError);
}

TEST_CASE("series rejects bad configs") {
  RngStream rng(1);
  double dw[2] = {0.1, 0.2};
  CHECK_THROWS_AS(double_cross(dw, 0.1, {0}, rng), InvalidError);
  CHECK_THROWS_AS(double_cross(dw, 0.0, {4}, rng), InvalidError);
}
