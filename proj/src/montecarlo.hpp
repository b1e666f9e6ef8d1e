#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "integrate.hpp"

namespace srk {

// Stream for one worker; distinct workers get unrelated streams from the
// same master seed, so trajectories never share random numbers.
RngStream seed_worker(std::uint64_t master_seed, int worker_index);

// Seed for one trial inside a worker; reproducible for a fixed worker
// count.
std::uint64_t trial_seed(std::uint64_t master_seed, int worker_index, long local_index);

// Trials per worker: equal shares, remainder on the last worker.
std::vector<long> partition_trials(long trials, int workers);

// Running mean (and optional second moment) of trajectories, one value
// per grid node and component. Peak memory O((steps+1) * d) regardless
// of how many trajectories are accumulated.
class McAccumulator {
 public:
  McAccumulator() = default;
  McAccumulator(long nodes, int d, bool with_variance = false);

  void update(const Trajectory& traj);
  long count() const { return n_; }
  const Matrix& mean() const { return mean_; }
  // Unbiased per-node variance; requires with_variance and count >= 2.
  Matrix variance() const;
  bool with_variance() const { return with_variance_; }

  friend McAccumulator merge(const McAccumulator& a, const McAccumulator& b);

 private:
  long n_ = 0;
  bool with_variance_ = false;
  Matrix mean_;
  Matrix m2_;
};

McAccumulator merge(const McAccumulator& a, const McAccumulator& b);

struct McConfig {
  long trials = 1;
  int workers = 1;
  std::uint64_t master_seed = 0;
  TimeGrid grid;
  std::vector<double> x0;
  // Produces one trajectory from the trial's stream; typically wraps
  // integrate() with a sampling stepper.
  std::function<Trajectory(RngStream& rng)> simulate;
  // Trajectories failing this are rejected and excluded from the mean.
  // Defaults to all-finite.
  std::function<bool(const Trajectory&)> adequate;
  bool with_variance = false;

  void validate() const;
};

struct McResult {
  McAccumulator accumulator;
  long accepted = 0;
  long rejected = 0;

  // CSV with header t,mean_x1,...,mean_xd.
  void write_csv(std::ostream& out, const TimeGrid& grid) const;
};

// Runs the trials split across workers, each accumulating locally with
// the online mean recurrence; worker accumulators are merged in worker
// order, so the result is deterministic for a fixed configuration.
// Trajectories that blow up (non-finite) count as rejected.
McResult run_trials(const McConfig& cfg);

}  // namespace srk
