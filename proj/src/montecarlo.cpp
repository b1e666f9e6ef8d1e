#include "montecarlo.hpp"

#include <ostream>
#include <thread>

#include "textio.hpp"

namespace srk {

RngStream seed_worker(std::uint64_t master_seed, int worker_index) {
  return RngStream(RngStream::derive(master_seed, static_cast<std::uint64_t>(worker_index)));
}

std::uint64_t trial_seed(std::uint64_t master_seed, int worker_index, long local_index) {
  const std::uint64_t worker = RngStream::derive(master_seed, static_cast<std::uint64_t>(worker_index));
  return RngStream::derive(worker, static_cast<std::uint64_t>(local_index));
}

std::vector<long> partition_trials(long trials, int workers) {
  require(trials >= 1, "trial count must be positive");
  require(workers >= 1, "worker count must be positive");
  std::vector<long> share(workers, trials / workers);
  share.back() += trials % workers;
  return share;
}

McAccumulator::McAccumulator(long nodes, int d, bool with_variance)
    : with_variance_(with_variance), mean_(nodes, d) {
  if (with_variance_) m2_ = Matrix(nodes, d);
}

void McAccumulator::update(const Trajectory& traj) {
  require(traj.values.rows() == mean_.rows() && traj.values.cols() == mean_.cols(),
          "trajectory shape does not match the accumulator");
  ++n_;
  auto& mean = mean_.data();
  const auto& values = traj.values.data();
  if (!with_variance_) {
    for (std::size_t i = 0; i < mean.size(); ++i)
      mean[i] += (values[i] - mean[i]) / static_cast<double>(n_);
    return;
  }
  auto& m2 = m2_.data();
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double delta = values[i] - mean[i];
    mean[i] += delta / static_cast<double>(n_);
    m2[i] += delta * (values[i] - mean[i]);
  }
}

Matrix McAccumulator::variance() const {
  require(with_variance_, "accumulator was created without variance tracking");
  require(n_ >= 2, "variance needs at least two trajectories");
  Matrix var(mean_.rows(), mean_.cols());
  for (std::size_t i = 0; i < var.data().size(); ++i)
    var.data()[i] = m2_.data()[i] / static_cast<double>(n_ - 1);
  return var;
}

McAccumulator merge(const McAccumulator& a, const McAccumulator& b) {
  if (a.n_ == 0) return b;
  if (b.n_ == 0) return a;
  require(a.mean_.rows() == b.mean_.rows() && a.mean_.cols() == b.mean_.cols(),
          "cannot merge accumulators of different shapes");
  require(a.with_variance_ == b.with_variance_,
          "cannot merge accumulators with different statistics");
  McAccumulator out(a.mean_.rows(), a.mean_.cols(), a.with_variance_);
  out.n_ = a.n_ + b.n_;
  const double wa = static_cast<double>(a.n_) / static_cast<double>(out.n_);
  const double wb = static_cast<double>(b.n_) / static_cast<double>(out.n_);
  for (std::size_t i = 0; i < out.mean_.data().size(); ++i) {
    const double delta = b.mean_.data()[i] - a.mean_.data()[i];
    out.mean_.data()[i] = wa * a.mean_.data()[i] + wb * b.mean_.data()[i];
    if (a.with_variance_)
      out.m2_.data()[i] = a.m2_.data()[i] + b.m2_.data()[i] +
                          delta * delta * wa * static_cast<double>(b.n_);
  }
  return out;
}

void McConfig::validate() const {
  require(trials >= 1, "trial count must be positive");
  require(workers >= 1, "worker count must be positive");
  grid.validate();
  require(!x0.empty(), "initial state must not be empty");
  require(static_cast<bool>(simulate), "Monte Carlo config needs a simulate callback");
}

void McResult::write_csv(std::ostream& out, const TimeGrid& grid) const {
  const Matrix& mean = accumulator.mean();
  out << "t";
  for (long a = 1; a <= mean.cols(); ++a) out << ",mean_x" << a;
  out << "\n";
  for (long n = 0; n < mean.rows(); ++n) {
    out << format_double(grid.node(n));
    for (long a = 0; a < mean.cols(); ++a) out << "," << format_double(mean(n, a));
    out << "\n";
  }
}

McResult run_trials(const McConfig& cfg) {
  cfg.validate();
  const auto share = partition_trials(cfg.trials, cfg.workers);
  const long nodes = cfg.grid.steps + 1;
  const int d = static_cast<int>(cfg.x0.size());

  auto adequate = cfg.adequate ? cfg.adequate
                               : [](const Trajectory& t) { return t.finite(); };

  std::vector<McAccumulator> acc(cfg.workers);
  std::vector<long> rejected(cfg.workers, 0);
  std::vector<std::exception_ptr> failure(cfg.workers);

  auto work = [&](int w) {
    try {
      McAccumulator local(nodes, d, cfg.with_variance);
      for (long i = 0; i < share[w]; ++i) {
        RngStream rng(trial_seed(cfg.master_seed, w, i));
        try {
          Trajectory traj = cfg.simulate(rng);
          if (adequate(traj))
            local.update(traj);
          else
            ++rejected[w];
        } catch (const NumericError&) {
          ++rejected[w];
        }
      }
      acc[w] = std::move(local);
    } catch (...) {
      failure[w] = std::current_exception();
    }
  };

  if (cfg.workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(cfg.workers);
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  for (int w = 0; w < cfg.workers; ++w) {
    if (failure[w]) {
      try {
        std::rethrow_exception(failure[w]);
      } catch (const Error& e) {
        throw Error(e.code(), "worker " + std::to_string(w) + " failed: " + e.what());
      } catch (const std::exception& e) {
        throw Error(ErrorCode::numeric, "worker " + std::to_string(w) + " failed: " + e.what());
      }
    }
  }

  McResult result;
  result.accumulator = McAccumulator(nodes, d, cfg.with_variance);
  for (int w = 0; w < cfg.workers; ++w) {
    result.accumulator = merge(result.accumulator, acc[w]);
    result.rejected += rejected[w];
  }
  result.accepted = result.accumulator.count();
  if (result.accepted == 0)
    throw NumericError("every trajectory was rejected; nothing to average");
  return result;
}

}  // namespace srk
