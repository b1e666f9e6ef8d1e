#include <cmath>

#include "doctest.h"
#include "montecarlo.hpp"
#include "problems.hpp"

using namespace srk;

namespace {

Trajectory single_node(double value) {
  Trajectory t{{0.0, 0.0, 0}, 1, Matrix(1, 1)};
  t.values(0, 0) = value;
  return t;
}

}  // namespace

TEST_CASE("online mean recurrence") {
  McAccumulator acc(1, 1);
  acc.update(single_node(1.0));
  CHECK(acc.mean()(0, 0) == 1.0);
  CHECK(acc.count() == 1);
  acc.update(single_node(2.0));
  CHECK(acc.mean()(0, 0) == doctest::Approx(1.5).epsilon(1e-15));
  acc.update(single_node(3.0));
  CHECK(acc.mean()(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("online mean equals the batch mean") {
  RngStream rng(5);
  McAccumulator acc(4, 2, true);
  std::vector<Trajectory> all;
  for (int i = 0; i < 1000; ++i) {
    Trajectory t{{0.0, 1.0, 3}, 2, Matrix(4, 2)};
    for (auto& v : t.values.data()) v = rng.normal() * 10.0;
    acc.update(t);
    all.push_back(t);
  }
  for (long n = 0; n < 4; ++n)
    for (int a = 0; a < 2; ++a) {
      double batch = 0.0;
      for (const auto& t : all) batch += t.values(n, a);
      batch /= static_cast<double>(all.size());
      CHECK(acc.mean()(n, a) == doctest::Approx(batch).epsilon(1e-12));
    }
  // variance against the batch formula at one node
  double batch_mean = 0.0, batch_var = 0.0;
  for (const auto& t : all) batch_mean += t.values(2, 1);
  batch_mean /= 1000.0;
  for (const auto& t : all) batch_var += std::pow(t.values(2, 1) - batch_mean, 2);
  batch_var /= 999.0;
  CHECK(acc.variance()(2, 1) == doctest::Approx(batch_var).epsilon(1e-10));
}

TEST_CASE("merging accumulators") {
  McAccumulator a(1, 1), b(1, 1), empty(1, 1);
  a.update(single_node(1.0));
  a.update(single_node(2.0));
  b.update(single_node(3.0));
  McAccumulator ab = merge(a, b);
  CHECK(ab.count() == 3);
  CHECK(ab.mean()(0, 0) == doctest::Approx(2.0).epsilon(1e-15));

  McAccumulator ba = merge(b, a);
  CHECK(ba.mean()(0, 0) == doctest::Approx(ab.mean()(0, 0)).epsilon(1e-15));

  CHECK(merge(a, empty).mean()(0, 0) == a.mean()(0, 0));
  CHECK(merge(empty, a).count() == 2);
}

TEST_CASE("worker seeding") {
  SUBCASE("distinct workers get distinct draws") {
    RngStream a = seed_worker(42, 0);
    RngStream b = seed_worker(42, 1);
    bool all_equal = true;
    for (int i = 0; i < 100; ++i) all_equal = all_equal && a.next_u64() == b.next_u64();
    CHECK_FALSE(all_equal);
  }
  SUBCASE("identical inputs replay identical draws") {
    RngStream a = seed_worker(42, 0);
    RngStream b = seed_worker(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  }
  SUBCASE("different masters differ") {
    RngStream a = seed_worker(42, 0);
    RngStream b = seed_worker(43, 0);
    bool all_equal = true;
    for (int i = 0; i < 100; ++i) all_equal = all_equal && a.next_u64() == b.next_u64();
    CHECK_FALSE(all_equal);
  }
}

TEST_CASE("trial partition") {
  CHECK(partition_trials(10, 3) == std::vector<long>{3, 3, 4});
  CHECK(partition_trials(4, 4) == std::vector<long>{1, 1, 1, 1});
  CHECK(partition_trials(5, 1) == std::vector<long>{5});
  CHECK_THROWS_AS(partition_trials(0, 1), InvalidError);
}

TEST_CASE("run_trials") {
  TestProblem gbm = make_problem("gbm");
  TimeGrid grid{0.0, 1.0, 8};

  auto make_config = [&](long trials, int workers) {
    McConfig cfg;
    cfg.trials = trials;
    cfg.workers = workers;
    cfg.master_seed = 99;
    cfg.grid = grid;
    cfg.x0 = gbm.x0;
    cfg.simulate = [&gbm, grid](RngStream& rng) {
      return integrate(make_sampling_stepper(Method::euler_maruyama(), gbm.sys, {}, rng), grid,
                       gbm.x0);
    };
    return cfg;
  };

  SUBCASE("single trial equals that trajectory") {
    McResult result = run_trials(make_config(1, 1));
    RngStream rng(trial_seed(99, 0, 0));
    Trajectory expected = integrate(
        make_sampling_stepper(Method::euler_maruyama(), gbm.sys, {}, rng), grid, gbm.x0);
    CHECK(result.accumulator.mean() == expected.values);
    CHECK(result.accepted == 1);
    CHECK(result.rejected == 0);
  }
  SUBCASE("zero fields give a constant mean and no rejections") {
    TestProblem zero = make_problem("zero(x0=2.5)");
    McConfig cfg = make_config(25, 3);
    cfg.x0 = zero.x0;
    cfg.simulate = [&zero, grid](RngStream& rng) {
      return integrate(make_sampling_stepper(Method::euler_maruyama(), zero.sys, {}, rng), grid,
                       zero.x0);
    };
    McResult result = run_trials(cfg);
    CHECK(result.rejected == 0);
    for (long n = 0; n <= 8; ++n) CHECK(result.accumulator.mean()(n, 0) == 2.5);
  }
  SUBCASE("identical configs give bitwise-identical means") {
    McResult a = run_trials(make_config(40, 4));
    McResult b = run_trials(make_config(40, 4));
    CHECK(a.accumulator.mean() == b.accumulator.mean());
  }
  SUBCASE("rejecting everything is an explicit error") {
    McConfig cfg = make_config(5, 2);
    cfg.adequate = [](const Trajectory&) { return false; };
    CHECK_THROWS_AS(run_trials(cfg), NumericError);
  }
  SUBCASE("adequacy predicate excludes trajectories from the mean") {
    McConfig cfg = make_config(30, 2);
    int parity = 0;
    cfg.adequate = [&parity](const Trajectory&) { return parity++ % 2 == 0; };
    cfg.workers = 1;
    McResult result = run_trials(cfg);
    CHECK(result.accepted == 15);
    CHECK(result.rejected == 15);
  }
}
