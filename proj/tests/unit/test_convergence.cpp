#include <cmath>
#include <sstream>

#include "convergence.hpp"
#include "doctest.h"

using namespace srk;

TEST_CASE("log-log fitting") {
  std::vector<double> hs = {0.1, 0.05, 0.025};
  std::vector<double> errors;
  for (double h : hs) errors.push_back(3.0 * std::pow(h, 1.5));
  LineFit fit = fit_log_log(hs, errors);
  CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("builtin problems") {
  SUBCASE("gbm exact solution at W = 0") {
    TestProblem gbm = make_problem("gbm(mu=0.5,sigma=0.3,x0=2)");
    WienerPath flat({0.0, 1.0, 4}, 1, Matrix(4, 1));  // all increments zero
    auto x = gbm.exact_strong(1.0, flat);
    CHECK(x[0] == doctest::Approx(2.0 * std::exp(0.5 - 0.5 * 0.09)).epsilon(1e-14));
    CHECK(gbm.exact_strong(0.0, flat)[0] == 2.0);
  }
  SUBCASE("ou with theta = 0 is a scaled Wiener path") {
    TestProblem ou = make_problem("ou(theta=0,sigma=0.5,x0=1)");
    Matrix inc(4, 1);
    inc(0, 0) = 0.1;
    inc(1, 0) = -0.2;
    inc(2, 0) = 0.3;
    inc(3, 0) = 0.05;
    WienerPath path({0.0, 1.0, 4}, 1, inc);
    auto x = ou.exact_strong(1.0, path);
    CHECK(x[0] == doctest::Approx(1.0 + 0.5 * 0.25).epsilon(1e-14));
    auto mid = ou.exact_strong(0.5, path);
    CHECK(mid[0] == doctest::Approx(1.0 + 0.5 * (0.1 - 0.2)).epsilon(1e-14));
  }
  SUBCASE("diagonal system components match the scalar solution") {
    TestProblem pair = make_problem("gbm2d(mu1=0.5,sigma1=0.3,mu2=0.5,sigma2=0.3,x01=1,x02=1)");
    TestProblem scalar = make_problem("gbm(mu=0.5,sigma=0.3,x0=1)");
    RngStream rng(3);
    WienerPath both = WienerPath::generate(rng, {0.0, 1.0, 16}, 2);
    Matrix first_col(16, 1), second_col(16, 1);
    for (long n = 0; n < 16; ++n) {
      first_col(n, 0) = both.increments()(n, 0);
      second_col(n, 0) = both.increments()(n, 1);
    }
    auto v = pair.exact_strong(1.0, both);
    CHECK(v[0] == doctest::Approx(scalar.exact_strong(
                      1.0, WienerPath({0.0, 1.0, 16}, 1, first_col))[0]).epsilon(1e-13));
    CHECK(v[1] == doctest::Approx(scalar.exact_strong(
                      1.0, WienerPath({0.0, 1.0, 16}, 1, second_col))[0]).epsilon(1e-13));
  }
  SUBCASE("weak targets") {
    TestProblem gbm = make_problem("gbm");
    CHECK(gbm.weak.at("identity").expectation(1.0) == doctest::Approx(std::exp(0.5)));
    CHECK(gbm.weak.at("second_moment").expectation(1.0) ==
          doctest::Approx(std::exp(1.0 + 0.09)));
    CHECK_THROWS_AS(make_problem("gbm(bogus=1)"), InvalidError);
    CHECK_THROWS_AS(make_problem("nope"), InvalidError);
  }
}

TEST_CASE("strong order estimation") {
  TestProblem gbm = make_problem("gbm");
  OrderOptions options;
  options.hs = {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
  options.trials = 60;
  options.seed = 7;

  SUBCASE("euler-maruyama lands near one half") {
    OrderEstimate est = estimate_strong_order(Method::euler_maruyama(), gbm, options);
    CHECK(est.mode == "strong");
    CHECK_FALSE(est.degenerate);
    CHECK(est.slope > 0.3);
    CHECK(est.slope < 0.7);
    CHECK(est.errors.size() == 5);
    // errors shrink with h
    CHECK(est.errors.front() > est.errors.back());
  }
  SUBCASE("slope is stable across master seeds") {
    OrderEstimate a = estimate_strong_order(Method::euler_maruyama(), gbm, options);
    options.seed = 8;
    OrderEstimate b = estimate_strong_order(Method::euler_maruyama(), gbm, options);
    CHECK(std::abs(a.slope - b.slope) < 0.15);
  }
  SUBCASE("deterministic problem recovers Euler order one") {
    TestProblem ode = make_problem("gbm(mu=0.5,sigma=0)");
    OrderEstimate est = estimate_strong_order(Method::euler_maruyama(), ode, options);
    CHECK(est.slope == doctest::Approx(1.0).epsilon(0.1));
  }
  SUBCASE("an exact stepper is flagged degenerate") {
    TestProblem zero = make_problem("zero");
    OrderEstimate est = estimate_strong_order(Method::euler_maruyama(), zero, options);
    CHECK(est.degenerate);
  }
  SUBCASE("mismatched step sizes are rejected") {
    options.hs = {1.0 / 16, 1.0 / 24, 1.0 / 64};
    CHECK_THROWS_AS(estimate_strong_order(Method::euler_maruyama(), gbm, options), InvalidError);
  }
}

TEST_CASE("weak order estimation") {
  TestProblem gbm = make_problem("gbm");
  OrderOptions options;
  options.hs = {1.0 / 4, 1.0 / 8, 1.0 / 16};
  options.trials = 40000;
  options.seed = 11;
  options.workers = 2;

  SUBCASE("euler-maruyama weak order is near one") {
    OrderEstimate est = estimate_weak_order(Method::euler_maruyama(), gbm, "identity", options);
    CHECK(est.mode == "weak");
    CHECK(est.slope > 0.6);
    CHECK(est.slope < 1.4);
    CHECK_FALSE(est.unreliable);
    CHECK(est.stderrs.size() == 3);
  }
  SUBCASE("tiny ensembles are flagged unreliable") {
    options.trials = 10;
    OrderEstimate est = estimate_weak_order(Method::euler_maruyama(), gbm, "identity", options);
    CHECK(est.unreliable);
  }
  SUBCASE("unknown functional is rejected") {
    CHECK_THROWS_AS(estimate_weak_order(Method::euler_maruyama(), gbm, "nope", options),
                    InvalidError);
  }
  SUBCASE("zero problem has zero bias and a degenerate fit") {
    TestProblem zero = make_problem("zero");
    options.trials = 100;
    OrderEstimate est = estimate_weak_order(Method::euler_maruyama(), zero, "identity", options);
    CHECK(est.degenerate);
    for (double e : est.errors) CHECK(e == 0.0);
  }
}

TEST_CASE("report csv shape") {
  OrderEstimate est;
  est.mode = "strong";
  est.method = "EM";
  est.problem = "gbm";
  est.seed = 3;
  est.hs = {0.5, 0.25, 0.125};
  est.errors = {0.2, 0.1, 0.05};
  est.stderrs = {0.01, 0.005, 0.0025};
  est.slope = 1.0;
  std::ostringstream out;
  est.write_csv(out);
  const std::string text = out.str();
  CHECK(text.find("# mode: strong") != std::string::npos);
  CHECK(text.find("# slope: 1") != std::string::npos);
  CHECK(text.find("h,error,mc_stderr\n") != std::string::npos);
  CHECK(text.find("0.25,0.1,0.005\n") != std::string::npos);
}
