#pragma once

#include <iosfwd>

#include "grid.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace srk {

// Discretized trajectory of an m-dimensional Wiener process on a uniform
// grid. Increments are the stored representation (they are what every
// scheme consumes); cumulative values are computed on demand.
// Immutable after construction.
class WienerPath {
 public:
  WienerPath(TimeGrid grid, int m, Matrix increments);

  // Each increment is drawn independently as N(0, h), row by row with the
  // component index varying fastest.
  static WienerPath generate(RngStream& rng, const TimeGrid& grid, int m);

  const TimeGrid& grid() const { return grid_; }
  int m() const { return m_; }
  // steps x m matrix of increments dW_n^alpha.
  const Matrix& increments() const { return increments_; }
  std::span<const double> increment_row(long n) const { return increments_.row(n); }

  // (steps+1) x m matrix of W(t_n), first row all zeros.
  Matrix cumulative() const;

  // Coarser path on the same interval: groups of `factor` consecutive
  // increments summed. Requires factor to divide the step count.
  WienerPath coarsen(long factor) const;

  // CSV with header t,W1,...,Wm and one row of cumulative values per node.
  void write_csv(std::ostream& out) const;
  static WienerPath read_csv(std::istream& in);

 private:
  TimeGrid grid_;
  int m_;
  Matrix increments_;
};

}  // namespace srk
