#include <cmath>
#include <sstream>

#include "doctest.h"
#include "wiener.hpp"

using srk::Matrix;
using srk::RngStream;
using srk::TimeGrid;
using srk::WienerPath;

TEST_CASE("cumulative reconstruction is exact") {
  Matrix inc(2, 1);
  inc(0, 0) = 1.0;
  inc(1, 0) = -1.0;
  WienerPath path({0.0, 1.0, 2}, 1, inc);
  Matrix w = path.cumulative();
  CHECK(w(0, 0) == 0.0);
  CHECK(w(1, 0) == 1.0);
  CHECK(w(2, 0) == 0.0);
}

TEST_CASE("one step, two components") {
  Matrix inc(1, 2);
  inc(0, 0) = 0.25;
  inc(0, 1) = -0.5;
  WienerPath path({0.0, 1.0, 1}, 2, inc);
  Matrix w = path.cumulative();
  CHECK(w(0, 0) == 0.0);
  CHECK(w(0, 1) == 0.0);
  CHECK(w(1, 0) == 0.25);
  CHECK(w(1, 1) == -0.5);
}

TEST_CASE("generation: sum of increments is W(1)") {
  RngStream rng(7);
  WienerPath path = WienerPath::generate(rng, {0.0, 1.0, 4}, 1);
  double sum = 0.0;
  for (long n = 0; n < 4; ++n) sum += path.increments()(n, 0);
  CHECK(path.cumulative()(4, 0) == doctest::Approx(sum).epsilon(1e-15));
}

TEST_CASE("same seed gives bitwise-identical paths") {
  RngStream a(123), b(123);
  WienerPath pa = WienerPath::generate(a, {0.0, 1.0, 64}, 3);
  WienerPath pb = WienerPath::generate(b, {0.0, 1.0, 64}, 3);
  CHECK(pa.increments() == pb.increments());
}

TEST_CASE("reconstruction property over random paths") {
  RngStream rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    WienerPath path = WienerPath::generate(rng, {0.0, 2.0, 32}, 2);
    Matrix w = path.cumulative();
    for (long n = 1; n <= 32; ++n)
      for (int a = 0; a < 2; ++a)
        CHECK(w(n, a) - w(n - 1, a) ==
              doctest::Approx(path.increments()(n - 1, a)).epsilon(1e-14));
  }
}

TEST_CASE("distributional sanity at final time") {
  const int trials = 10000;
  const double T = 1.0;
  RngStream rng(2024);
  double sum1 = 0.0, sum_sq1 = 0.0, sum2 = 0.0, cross = 0.0;
  for (int i = 0; i < trials; ++i) {
    WienerPath path = WienerPath::generate(rng, {0.0, T, 16}, 2);
    Matrix w = path.cumulative();
    const double w1 = w(16, 0), w2 = w(16, 1);
    sum1 += w1;
    sum_sq1 += w1 * w1;
    sum2 += w2;
    cross += w1 * w2;
  }
  const double mean1 = sum1 / trials;
  const double var1 = sum_sq1 / trials - mean1 * mean1;
  CHECK(std::abs(mean1) < 4.0 * std::sqrt(T / trials));
  CHECK(var1 == doctest::Approx(T).epsilon(0.05));
  const double mean2 = sum2 / trials;
  const double corr = (cross / trials - mean1 * mean2) / std::sqrt(var1 * T);
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("coarsening sums consecutive increments exactly") {
  RngStream rng(5);
  WienerPath fine = WienerPath::generate(rng, {0.0, 1.0, 16}, 2);
  WienerPath coarse = fine.coarsen(4);
  CHECK(coarse.grid().steps == 4);
  for (long n = 0; n < 4; ++n)
    for (int a = 0; a < 2; ++a) {
      double manual = 0.0;
      for (long i = 0; i < 4; ++i) manual += fine.increments()(4 * n + i, a);
      CHECK(coarse.increments()(n, a) == manual);
    }
  CHECK_THROWS_AS(fine.coarsen(5), srk::InvalidError);
}

TEST_CASE("csv round trip") {
  RngStream rng(11);
  WienerPath path = WienerPath::generate(rng, {0.0, 1.0, 8}, 2);
  std::ostringstream out;
  path.write_csv(out);
  std::istringstream in(out.str());
  WienerPath loaded = WienerPath::read_csv(in);
  CHECK(loaded.m() == 2);
  CHECK(loaded.grid().steps == 8);
  for (long n = 0; n < 8; ++n)
    for (int a = 0; a < 2; ++a)
      CHECK(loaded.increments()(n, a) ==
            doctest::Approx(path.increments()(n, a)).epsilon(1e-12));
}

TEST_CASE("invalid grids are rejected") {
  RngStream rng(1);
  CHECK_THROWS_AS(WienerPath::generate(rng, {0.0, 1.0, 0}, 1), srk::InvalidError);
  CHECK_THROWS_AS(WienerPath::generate(rng, {1.0, 0.0, 4}, 1), srk::InvalidError);
  CHECK_THROWS_AS(WienerPath::generate(rng, {0.0, 1.0, 4}, 0), srk::InvalidError);
}
