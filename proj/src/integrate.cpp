#include "integrate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <ostream>

#include "textio.hpp"

namespace srk {

bool Trajectory::finite() const {
  return std::all_of(values.data().begin(), values.data().end(),
                     [](double v) { return std::isfinite(v); });
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "t";
  for (int a = 1; a <= d; ++a) out << ",x" << a;
  out << "\n";
  for (long n = 0; n <= grid.steps; ++n) {
    out << format_double(grid.node(n));
    for (int a = 0; a < d; ++a) out << "," << format_double(values(n, a));
    out << "\n";
  }
}

Trajectory integrate(const StepFn& step, const TimeGrid& grid, std::span<const double> x0) {
  grid.validate_allow_empty();
  require(!x0.empty(), "initial state must not be empty");
  const int d = static_cast<int>(x0.size());
  const double h = grid.step();

  Trajectory traj{grid, d, Matrix(grid.steps + 1, d)};
  std::copy(x0.begin(), x0.end(), traj.values.row(0).begin());
  for (long n = 0; n < grid.steps; ++n) {
    step(n, grid.node(n), traj.values.row(n), h, traj.values.row(n + 1));
    for (double v : traj.values.row(n + 1))
      if (!std::isfinite(v))
        throw NumericError("state became non-finite at step " + std::to_string(n + 1), n + 1);
  }
  return traj;
}

Method Method::euler_maruyama() { return Method{}; }

Method Method::from_table(CoefficientTable table) {
  Method m;
  m.floats_ = to_float(table);
  m.table_ = std::move(table);
  return m;
}

Method Method::resolve(const std::string& name) {
  std::string lowered = name;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lowered == "em" || lowered == "euler-maruyama") return euler_maruyama();
  for (const auto& bundled : bundled_table_names()) {
    std::string b = bundled;
    std::transform(b.begin(), b.end(), b.begin(), [](unsigned char c) { return std::tolower(c); });
    if (b == lowered) return from_table(bundled_table(bundled));
  }
  if (name.find(".json") != std::string::npos)
    return from_table(parse_table(read_text_file(name)));
  throw InvalidError("unknown method '" + name +
                     "': expected 'em', a bundled table name, or a .json table file");
}

const CoefficientTable& Method::table() const {
  require(table_.has_value(), "Euler-Maruyama has no coefficient table");
  return *table_;
}

const FloatTable& Method::floats() const {
  require(floats_.has_value(), "Euler-Maruyama has no coefficient table");
  return *floats_;
}

std::string Method::name() const { return table_ ? table_->name : "EM"; }

StepFn make_path_stepper(const Method& method, const SdeSystem& sys, const WienerPath& path,
                         const SeriesPolicy& series, RngStream aux) {
  sys.validate();
  require(path.m() == sys.m, "path noise dimension does not match the system");
  require(!method.weak(), "weak methods draw their own randomness; use make_sampling_stepper");
  // Copy the increments so the stepper owns its driving data.
  auto increments = std::make_shared<Matrix>(path.increments());

  if (method.is_em()) {
    return [sys, increments](long n, double t, std::span<const double> x, double h,
                             std::span<double> out) {
      em_step(sys, t, x, h, increments->row(n), out);
    };
  }

  const FloatTable& table = method.floats();
  if (table.kind == TableKind::scalar_strong) {
    ScalarSde scalar = as_scalar(sys);
    auto rng = std::make_shared<RngStream>(aux);
    return [table, scalar, increments, series, rng](long n, double t, std::span<const double> x,
                                                    double h, std::span<double> out) {
      ItoIntegralSet ints =
          sample_step_integrals(increments->row(n), h, series.resolve(h), *rng);
      out[0] = scalar_strong_step(table, scalar, t, x[0], h, ints);
    };
  }
  require(table.kind == TableKind::vector_strong, "unsupported table kind for path stepper");
  auto rng = std::make_shared<RngStream>(aux);
  return [table, sys, increments, series, rng](long n, double t, std::span<const double> x,
                                               double h, std::span<double> out) {
    ItoIntegralSet ints = sample_step_integrals(increments->row(n), h, series.resolve(h), *rng);
    vector_strong_step(table, sys, t, x, h, ints, out);
  };
}

StepFn make_sampling_stepper(const Method& method, const SdeSystem& sys,
                             const SeriesPolicy& series, RngStream rng) {
  sys.validate();
  auto stream = std::make_shared<RngStream>(rng);

  if (method.is_em()) {
    return [sys, stream](long, double t, std::span<const double> x, double h,
                         std::span<double> out) {
      std::vector<double> dw(sys.m);
      const double sd = std::sqrt(h);
      for (int l = 0; l < sys.m; ++l) dw[l] = stream->normal_sd(sd);
      em_step(sys, t, x, h, dw, out);
    };
  }

  const FloatTable& table = method.floats();
  if (table.kind == TableKind::vector_weak) {
    return [table, sys, stream](long, double t, std::span<const double> x, double h,
                                std::span<double> out) {
      WeakRandomSet rand = sample_weak_randoms(*stream, sys.m, h);
      vector_weak_step(table, sys, t, x, h, rand, out);
    };
  }
  if (table.kind == TableKind::scalar_strong) {
    ScalarSde scalar = as_scalar(sys);
    return [table, scalar, series, stream](long, double t, std::span<const double> x, double h,
                                           std::span<double> out) {
      const double dw = stream->normal_sd(std::sqrt(h));
      ItoIntegralSet ints = sample_step_integrals({&dw, 1}, h, series.resolve(h), *stream);
      out[0] = scalar_strong_step(table, scalar, t, x[0], h, ints);
    };
  }
  return [table, sys, series, stream](long, double t, std::span<const double> x, double h,
                                      std::span<double> out) {
    std::vector<double> dw(sys.m);
    const double sd = std::sqrt(h);
    for (int l = 0; l < sys.m; ++l) dw[l] = stream->normal_sd(sd);
    ItoIntegralSet ints = sample_step_integrals(dw, h, series.resolve(h), *stream);
    vector_strong_step(table, sys, t, x, h, ints, out);
  };
}

}  // namespace srk
