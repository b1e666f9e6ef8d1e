#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "integrate.hpp"
#include "problems.hpp"

namespace srk {

struct OrderOptions {
  std::vector<double> hs;   // tested step sizes; need at least 3
  long trials = 100;        // paths (strong) or Monte Carlo trials per h (weak)
  std::uint64_t seed = 0;
  double t0 = 0.0;
  double t_final = 1.0;
  int exclude_coarsest = 0;  // drop the largest hs from the fit (pre-asymptotic range)
  bool sup_norm = false;     // strong mode: whole-trajectory sup norm instead of the
                             // final-time Euclidean norm
  int workers = 1;           // weak mode parallelism
  SeriesPolicy series;
};

struct OrderEstimate {
  std::string mode;    // "strong" or "weak"
  std::string method;
  std::string problem;
  std::string functional;  // weak mode only
  std::uint64_t seed = 0;
  std::vector<double> hs;
  std::vector<double> errors;
  std::vector<double> stderrs;  // standard error of each error estimate
  double slope = 0.0;
  double residual = 0.0;
  bool degenerate = false;   // errors at rounding level; slope meaningless
  bool unreliable = false;   // weak mode: MC noise not below the measured bias
  long excluded = 0;         // non-finite trajectories dropped

  // Metadata block of '# key: value' lines, then h,error,mc_stderr rows.
  void write_csv(std::ostream& out) const;
};

// Pathwise error at the final time against the problem's exact solution,
// averaged over coupled paths: every tested h consumes increments
// aggregated from one fine master path per path index, so the comparison
// is against the same Brownian path throughout. hs must be integer
// multiples of the smallest one. The zeta/series draws of the strong
// table methods are method randomness and are resampled per (path, h).
OrderEstimate estimate_strong_order(const Method& method, const TestProblem& problem,
                                    const OrderOptions& options);

// Bias |E F(x_N) - analytic| per h from independent Monte Carlo
// ensembles, with the per-h standard error reported next to it. Flagged
// unreliable when any standard error is not below the bias it measures.
OrderEstimate estimate_weak_order(const Method& method, const TestProblem& problem,
                                  const std::string& functional, const OrderOptions& options);

// Least-squares slope of log(error) against log(h).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
LineFit fit_log_log(std::span<const double> hs, std::span<const double> errors);

}  // namespace srk
