#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "grid.hpp"
#include "matrix.hpp"
#include "schemes.hpp"
#include "wiener.hpp"

namespace srk {

struct Trajectory {
  TimeGrid grid;
  int d = 1;
  Matrix values;  // (steps + 1) x d

  std::span<const double> at(long n) const { return values.row(n); }
  std::span<const double> back() const { return values.row(grid.steps); }
  bool finite() const;

  // CSV with header t,x1,...,xd.
  void write_csv(std::ostream& out) const;
};

// Advances one step; called once per step in order with the step index.
using StepFn = std::function<void(long n, double t, std::span<const double> x, double h,
                                  std::span<double> out)>;

// Runs the stepper over the grid. Throws NumericError naming the step
// index if the state leaves the finite range.
Trajectory integrate(const StepFn& step, const TimeGrid& grid, std::span<const double> x0);

// A solver selection: Euler-Maruyama or a coefficient table.
class Method {
 public:
  static Method euler_maruyama();
  static Method from_table(CoefficientTable table);
  // "em" or a bundled table name (case-insensitive), else a path to a
  // coefficient JSON file.
  static Method resolve(const std::string& name);

  bool is_em() const { return !table_.has_value(); }
  const CoefficientTable& table() const;
  const FloatTable& floats() const;
  std::string name() const;
  // True for methods driven by the weak random variables.
  bool weak() const { return table_ && table_->kind == TableKind::vector_weak; }

 private:
  std::optional<CoefficientTable> table_;
  std::optional<FloatTable> floats_;
};

// Controls the series truncation for the cross integrals; non-positive
// n_terms means the default policy max(1, ceil(1/h)).
struct SeriesPolicy {
  int n_terms = 0;
  SeriesConfig resolve(double h) const {
    return {n_terms >= 1 ? n_terms : default_series_terms(h)};
  }
};

// Stepper driven by a stored Wiener path; the aux stream supplies the
// zeta and series draws for the strong table methods. The path must
// match the integration grid. Strong methods only (EM included).
StepFn make_path_stepper(const Method& method, const SdeSystem& sys, const WienerPath& path,
                         const SeriesPolicy& series, RngStream aux);

// Stepper drawing its own randomness per step: fresh Gaussian increments
// for EM and strong tables, weak random sets for weak tables. Used by
// Monte Carlo runs where no path needs to be retained.
StepFn make_sampling_stepper(const Method& method, const SdeSystem& sys,
                             const SeriesPolicy& series, RngStream rng);

}  // namespace srk
