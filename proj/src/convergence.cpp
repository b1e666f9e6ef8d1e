#include "convergence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "montecarlo.hpp"
#include "textio.hpp"

namespace srk {

namespace {

void check_options(const OrderOptions& options) {
  require(options.hs.size() >= 3, "order estimation needs at least three step sizes");
  for (double h : options.hs) require(h > 0.0, "step sizes must be positive");
  require(options.trials >= 1, "trial count must be positive");
  require(options.t_final > options.t0, "final time must exceed the start time");
  require(options.exclude_coarsest >= 0 && options.exclude_coarsest <= 2,
          "at most the two coarsest step sizes can be excluded from the fit");
}

long steps_for(double h, const OrderOptions& options) {
  const double raw = (options.t_final - options.t0) / h;
  const long steps = std::lround(raw);
  require(steps >= 1 && std::abs(raw - static_cast<double>(steps)) < 1e-9,
          "step size " + format_double(h) + " does not divide the time interval");
  return steps;
}

// any error at double-precision rounding level corrupts the log fit
bool rounding_level(const std::vector<double>& errors) {
  return std::any_of(errors.begin(), errors.end(), [](double e) { return e < 1e-13; });
}

void finish_estimate(OrderEstimate& est, const OrderOptions& options) {
  est.degenerate = rounding_level(est.errors);
  if (est.degenerate) {
    est.slope = 0.0;
    est.residual = 0.0;
    return;
  }
  const std::size_t skip = static_cast<std::size_t>(options.exclude_coarsest);
  std::vector<std::pair<double, double>> points;
  for (std::size_t q = 0; q < est.hs.size(); ++q) points.push_back({est.hs[q], est.errors[q]});
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<double> hs, errors;
  for (std::size_t q = skip; q < points.size(); ++q) {
    hs.push_back(points[q].first);
    errors.push_back(points[q].second);
  }
  require(hs.size() >= 3, "excluding coarse steps left fewer than three points to fit");
  LineFit fit = fit_log_log(hs, errors);
  est.slope = fit.slope;
  est.residual = fit.residual;
}

}  // namespace

LineFit fit_log_log(std::span<const double> hs, std::span<const double> errors) {
  require(hs.size() == errors.size() && hs.size() >= 2, "need matching h/error samples");
  const double n = static_cast<double>(hs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    require(errors[i] > 0.0, "log fit needs positive errors");
    const double x = std::log(hs[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double r = std::log(errors[i]) - (fit.intercept + fit.slope * std::log(hs[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

OrderEstimate estimate_strong_order(const Method& method, const TestProblem& problem,
                                    const OrderOptions& options) {
  check_options(options);
  require(static_cast<bool>(problem.exact_strong),
          "problem '" + problem.name + "' has no pathwise exact solution");
  require(!method.weak(), "strong order needs a pathwise method; weak methods have none");

  const double h_min = *std::min_element(options.hs.begin(), options.hs.end());
  const long master_steps = steps_for(h_min, options);
  std::vector<long> ratios;
  for (double h : options.hs) {
    const long steps = steps_for(h, options);
    require(master_steps % steps == 0,
            "step size " + format_double(h) + " is not an integer multiple of the smallest");
    ratios.push_back(master_steps / steps);
  }

  const std::size_t nh = options.hs.size();
  std::vector<double> sum(nh, 0.0), sum_sq(nh, 0.0);
  std::vector<long> counted(nh, 0);
  long excluded = 0;

  const TimeGrid master_grid{options.t0, options.t_final, master_steps};
  for (long p = 0; p < options.trials; ++p) {
    RngStream path_rng = seed_worker(options.seed, static_cast<int>(p));
    WienerPath master = WienerPath::generate(path_rng, master_grid, problem.sys.m);
    const std::vector<double> exact_final =
        problem.exact_strong(options.t_final, master);

    for (std::size_t q = 0; q < nh; ++q) {
      WienerPath coarse = master.coarsen(ratios[q]);
      // zeta/series draws are method randomness, fresh per (path, h)
      RngStream aux(RngStream::derive(path_rng.seed(), 1 + q));
      try {
        Trajectory traj = integrate(
            make_path_stepper(method, problem.sys, coarse, options.series, aux),
            coarse.grid(), problem.x0);
        double err = 0.0;
        if (options.sup_norm) {
          for (long n = 0; n <= coarse.grid().steps; ++n) {
            const auto exact_n = problem.exact_strong(coarse.grid().node(n), master);
            double node_err = 0.0;
            for (int a = 0; a < traj.d; ++a) {
              const double diff = traj.values(n, a) - exact_n[a];
              node_err += diff * diff;
            }
            err = std::max(err, std::sqrt(node_err));
          }
        } else {
          for (int a = 0; a < traj.d; ++a) {
            const double diff = traj.back()[a] - exact_final[a];
            err += diff * diff;
          }
          err = std::sqrt(err);
        }
        sum[q] += err;
        sum_sq[q] += err * err;
        ++counted[q];
      } catch (const NumericError&) {
        ++excluded;
      }
    }
  }

  OrderEstimate est;
  est.mode = "strong";
  est.method = method.name();
  est.problem = problem.name;
  est.seed = options.seed;
  est.hs = options.hs;
  est.excluded = excluded;
  for (std::size_t q = 0; q < nh; ++q) {
    if (counted[q] == 0)
      throw NumericError("every path was excluded at h = " + format_double(options.hs[q]));
    const double n = static_cast<double>(counted[q]);
    const double mean = sum[q] / n;
    est.errors.push_back(mean);
    const double var = std::max(0.0, sum_sq[q] / n - mean * mean);
    est.stderrs.push_back(std::sqrt(var / n));
  }
  finish_estimate(est, options);
  return est;
}

OrderEstimate estimate_weak_order(const Method& method, const TestProblem& problem,
                                  const std::string& functional, const OrderOptions& options) {
  check_options(options);
  require(options.workers >= 1, "worker count must be positive");
  auto fit = problem.weak.find(functional);
  require(fit != problem.weak.end(),
          "problem '" + problem.name + "' has no functional '" + functional + "'");
  const WeakFunctional& f = fit->second;
  const double target = f.expectation(options.t_final);

  OrderEstimate est;
  est.mode = "weak";
  est.method = method.name();
  est.problem = problem.name;
  est.functional = functional;
  est.seed = options.seed;
  est.hs = options.hs;

  for (std::size_t q = 0; q < options.hs.size(); ++q) {
    const TimeGrid grid{options.t0, options.t_final, steps_for(options.hs[q], options)};
    const std::uint64_t h_seed = RngStream::derive(options.seed, q);
    const auto share = partition_trials(options.trials, options.workers);

    std::vector<double> w_sum(options.workers, 0.0), w_sum_sq(options.workers, 0.0);
    std::vector<long> w_count(options.workers, 0), w_excluded(options.workers, 0);
    auto work = [&](int w) {
      double sum = 0.0, sum_sq = 0.0;
      long count = 0, dropped = 0;
      for (long i = 0; i < share[w]; ++i) {
        RngStream rng(trial_seed(h_seed, w, i));
        try {
          Trajectory traj = integrate(
              make_sampling_stepper(method, problem.sys, options.series, rng), grid, problem.x0);
          const double value = f.apply(traj.back());
          sum += value;
          sum_sq += value * value;
          ++count;
        } catch (const NumericError&) {
          ++dropped;
        }
      }
      w_sum[w] = sum;
      w_sum_sq[w] = sum_sq;
      w_count[w] = count;
      w_excluded[w] = dropped;
    };
    if (options.workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < options.workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }

    double sum = 0.0, sum_sq = 0.0;
    long count = 0;
    for (int w = 0; w < options.workers; ++w) {
      sum += w_sum[w];
      sum_sq += w_sum_sq[w];
      count += w_count[w];
      est.excluded += w_excluded[w];
    }
    if (count == 0)
      throw NumericError("every trial was excluded at h = " + format_double(options.hs[q]));
    const double n = static_cast<double>(count);
    const double mean = sum / n;
    est.errors.push_back(std::abs(mean - target));
    const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / std::max(1.0, n - 1.0));
    est.stderrs.push_back(std::sqrt(var / n));
  }

  finish_estimate(est, options);
  for (std::size_t q = 0; q < est.hs.size(); ++q)
    if (est.stderrs[q] >= est.errors[q]) est.unreliable = true;
  return est;
}

void OrderEstimate::write_csv(std::ostream& out) const {
  out << "# mode: " << mode << "\n";
  out << "# method: " << method << "\n";
  out << "# problem: " << problem << "\n";
  if (!functional.empty()) out << "# functional: " << functional << "\n";
  out << "# seed: " << seed << "\n";
  out << "# slope: " << format_double(slope) << "\n";
  out << "# residual: " << format_double(residual) << "\n";
  if (degenerate) out << "# degenerate: errors at rounding level, slope not meaningful\n";
  if (unreliable) out << "# unreliable: Monte Carlo noise is not below the measured bias\n";
  if (excluded > 0) out << "# excluded: " << excluded << "\n";
  out << "h,error,mc_stderr\n";
  for (std::size_t q = 0; q < hs.size(); ++q)
    out << format_double(hs[q]) << "," << format_double(errors[q]) << ","
        << format_double(stderrs[q]) << "\n";
}

}  // namespace srk
