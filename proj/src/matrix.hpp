#pragma once

#include <span>
#include <vector>

#include "error.hpp"

namespace srk {

// Dense row-major matrix of doubles; just enough for increments,
// trajectories and the small per-step integral matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(long rows, long cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {
    require(rows >= 0 && cols >= 0, "matrix dimensions must be non-negative");
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  double& operator()(long r, long c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  double operator()(long r, long c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  std::span<double> row(long r) {
    return {data_.data() + r * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(long r) const {
    return {data_.data() + r * cols_, static_cast<std::size_t>(cols_)};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<double> data_;
};

}  // namespace srk
