#include "wiener.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "textio.hpp"

namespace srk {

WienerPath::WienerPath(TimeGrid grid, int m, Matrix increments)
    : grid_(grid), m_(m), increments_(std::move(increments)) {
  grid_.validate_allow_empty();
  require(m_ >= 1, "noise dimension must be at least 1");
  require(increments_.rows() == grid_.steps && increments_.cols() == m_,
          "increment matrix must be steps x m");
}

WienerPath WienerPath::generate(RngStream& rng, const TimeGrid& grid, int m) {
  grid.validate();
  require(m >= 1, "noise dimension must be at least 1");
  const double sd = std::sqrt(grid.step());
  Matrix inc(grid.steps, m);
  for (long n = 0; n < grid.steps; ++n)
    for (int a = 0; a < m; ++a) inc(n, a) = rng.normal_sd(sd);
  return WienerPath(grid, m, std::move(inc));
}

Matrix WienerPath::cumulative() const {
  Matrix w(grid_.steps + 1, m_);
  for (long n = 0; n < grid_.steps; ++n)
    for (int a = 0; a < m_; ++a) w(n + 1, a) = w(n, a) + increments_(n, a);
  return w;
}

WienerPath WienerPath::coarsen(long factor) const {
  require(factor >= 1, "coarsening factor must be positive");
  require(grid_.steps % factor == 0, "coarsening factor must divide the step count");
  const long coarse_steps = grid_.steps / factor;
  Matrix inc(coarse_steps, m_);
  for (long n = 0; n < coarse_steps; ++n)
    for (long i = 0; i < factor; ++i)
      for (int a = 0; a < m_; ++a) inc(n, a) += increments_(n * factor + i, a);
  return WienerPath({grid_.t0, grid_.t_end, coarse_steps}, m_, std::move(inc));
}

void WienerPath::write_csv(std::ostream& out) const {
  out << "t";
  for (int a = 1; a <= m_; ++a) out << ",W" << a;
  out << "\n";
  Matrix w = cumulative();
  for (long n = 0; n <= grid_.steps; ++n) {
    out << format_double(grid_.node(n));
    for (int a = 0; a < m_; ++a) out << "," << format_double(w(n, a));
    out << "\n";
  }
}

WienerPath WienerPath::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty Wiener path CSV");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "t")
    throw IoError("Wiener path CSV must start with header t,W1,...");
  const int m = static_cast<int>(header.size()) - 1;

  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw IoError("Wiener path CSV row has " + std::to_string(fields.size()) +
                    " fields, expected " + std::to_string(header.size()));
    times.push_back(parse_double_field(fields[0], "Wiener path CSV"));
    for (int a = 0; a < m; ++a)
      values.push_back(parse_double_field(fields[a + 1], "Wiener path CSV"));
  }
  if (times.size() < 2) throw IoError("Wiener path CSV needs at least two rows");
  const long steps = static_cast<long>(times.size()) - 1;
  Matrix inc(steps, m);
  for (long n = 0; n < steps; ++n)
    for (int a = 0; a < m; ++a)
      inc(n, a) = values[(n + 1) * m + a] - values[n * m + a];
  return WienerPath({times.front(), times.back(), steps}, m, std::move(inc));
}

}  // namespace srk
