#include <cmath>
#include <sstream>

#include "doctest.h"
#include "integrate.hpp"
#include "problems.hpp"

using namespace srk;

TEST_CASE("integrate basics") {
  SUBCASE("zero steps returns the initial state") {
    StepFn never = [](long, double, std::span<const double>, double, std::span<double>) {
      FAIL("stepper must not be called");
    };
    double x0 = 3.5;
    Trajectory traj = integrate(never, {0.0, 0.0, 0}, {&x0, 1});
    CHECK(traj.values.rows() == 1);
    CHECK(traj.values(0, 0) == 3.5);
  }
  SUBCASE("em on dx = dW telescopes to the cumulative path") {
    TestProblem problem = make_problem("zero");
    SdeSystem sys{1, 1,
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; },
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 1.0; }};
    RngStream rng(12);
    TimeGrid grid{0.0, 1.0, 32};
    WienerPath path = WienerPath::generate(rng, grid, 1);
    Trajectory traj = integrate(make_path_stepper(Method::euler_maruyama(), sys, path, {}, RngStream(0)),
                                grid, std::vector<double>{0.0});
    Matrix w = path.cumulative();
    for (long n = 0; n <= 32; ++n) CHECK(traj.values(n, 0) == w(n, 0));
  }
  SUBCASE("non-finite states abort with the step index") {
    SdeSystem sys{1, 1,
                  [](double, std::span<const double> x, std::span<double> out) {
                    out[0] = x[0] * x[0] * 1e200;
                  },
                  [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; }};
    RngStream rng(1);
    TimeGrid grid{0.0, 1.0, 8};
    WienerPath path = WienerPath::generate(rng, grid, 1);
    try {
      integrate(make_path_stepper(Method::euler_maruyama(), sys, path, {}, RngStream(0)), grid,
                std::vector<double>{10.0});
      FAIL("expected a numeric error");
    } catch (const NumericError& e) {
      CHECK(e.step_index() >= 1);
      CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
  }
}

TEST_CASE("trajectory csv") {
  Trajectory traj{{0.0, 1.0, 2}, 2, Matrix(3, 2)};
  traj.values(1, 0) = 0.5;
  traj.values(2, 1) = -1.0;
  std::ostringstream out;
  traj.write_csv(out);
  CHECK(out.str() ==
        "t,x1,x2\n"
        "0,0,0\n"
        "0.5,0.5,0\n"
        "1,0,-1\n");
}

TEST_CASE("method resolution") {
  CHECK(Method::resolve("em").is_em());
  CHECK(Method::resolve("EM").is_em());
  CHECK(Method::resolve("srk1wm").name() == "SRK1Wm");
  CHECK(Method::resolve("SRK1W1").table().kind == TableKind::scalar_strong);
  CHECK_THROWS_AS(Method::resolve("nope"), InvalidError);
}

TEST_CASE("path and sampling steppers are deterministic") {
  TestProblem gbm = make_problem("gbm");
  TimeGrid grid{0.0, 1.0, 16};

  SUBCASE("path stepper with a strong table") {
    RngStream rng(3);
    WienerPath path = WienerPath::generate(rng, grid, 1);
    Method method = Method::resolve("srk1w1");
    Trajectory a = integrate(make_path_stepper(method, gbm.sys, path, {}, RngStream(77)), grid,
                             gbm.x0);
    Trajectory b = integrate(make_path_stepper(method, gbm.sys, path, {}, RngStream(77)), grid,
                             gbm.x0);
    CHECK(a.values == b.values);
  }
  SUBCASE("sampling stepper with the weak table") {
    Method method = Method::resolve("eulerw");
    Trajectory a = integrate(make_sampling_stepper(method, gbm.sys, {}, RngStream(5)), grid,
                             gbm.x0);
    Trajectory b = integrate(make_sampling_stepper(method, gbm.sys, {}, RngStream(5)), grid,
                             gbm.x0);
    CHECK(a.values == b.values);
    CHECK(a.finite());
  }
  SUBCASE("weak methods reject the path stepper") {
    RngStream rng(3);
    WienerPath path = WienerPath::generate(rng, grid, 1);
    CHECK_THROWS_AS(make_path_stepper(Method::resolve("eulerw"), gbm.sys, path, {}, RngStream(0)),
                    InvalidError);
  }
}
