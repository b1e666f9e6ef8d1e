#include "problems.hpp"

#include <cmath>

#include "error.hpp"
#include "textio.hpp"

namespace srk {

namespace {

// Index of the grid node at time t; t must sit on the grid.
long node_index(const WienerPath& path, double t) {
  const double h = path.grid().step();
  const long n = std::lround((t - path.grid().t0) / h);
  require(n >= 0 && n <= path.grid().steps &&
              std::abs(path.grid().node(n) - t) <= 1e-9 * (1.0 + std::abs(t)),
          "time " + format_double(t) + " is not a node of the driving path");
  return n;
}

std::map<std::string, double> parse_params(const std::string& spec, std::string& name) {
  std::map<std::string, double> params;
  auto open = spec.find('(');
  if (open == std::string::npos) {
    name = spec;
    return params;
  }
  require(spec.back() == ')', "problem spec '" + spec + "' is missing ')'");
  name = spec.substr(0, open);
  std::string body = spec.substr(open + 1, spec.size() - open - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    std::string item = body.substr(pos, comma - pos);
    auto eq = item.find('=');
    require(eq != std::string::npos, "problem parameter '" + item + "' must look like key=value");
    params[item.substr(0, eq)] = parse_double_field(item.substr(eq + 1), "problem spec");
    pos = comma + 1;
  }
  return params;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  double v = it->second;
  params.erase(it);
  return v;
}

void expect_empty(const std::map<std::string, double>& params, const std::string& name) {
  if (!params.empty())
    throw InvalidError("unknown parameter '" + params.begin()->first + "' for problem " + name);
}

TestProblem make_gbm(std::map<std::string, double> params) {
  const double mu = take(params, "mu", 0.5);
  const double sigma = take(params, "sigma", 0.3);
  const double x0 = take(params, "x0", 1.0);
  expect_empty(params, "gbm");

  TestProblem p;
  p.name = "gbm";
  p.x0 = {x0};
  p.sys = {1, 1,
           [mu](double, std::span<const double> x, std::span<double> out) { out[0] = mu * x[0]; },
           [sigma](double, std::span<const double> x, std::span<double> out) {
             out[0] = sigma * x[0];
           }};
  p.exact_strong = [mu, sigma, x0](double t, const WienerPath& path) {
    const long n = node_index(path, t);
    double w = 0.0;
    for (long i = 0; i < n; ++i) w += path.increments()(i, 0);
    const double dt = t - path.grid().t0;
    return std::vector<double>{x0 * std::exp((mu - 0.5 * sigma * sigma) * dt + sigma * w)};
  };
  p.weak["identity"] = {[](std::span<const double> x) { return x[0]; },
                        [mu, x0](double t) { return x0 * std::exp(mu * t); }};
  p.weak["second_moment"] = {
      [](std::span<const double> x) { return x[0] * x[0]; },
      [mu, sigma, x0](double t) { return x0 * x0 * std::exp((2.0 * mu + sigma * sigma) * t); }};
  return p;
}

TestProblem make_ou(std::map<std::string, double> params) {
  const double theta = take(params, "theta", 1.0);
  const double sigma = take(params, "sigma", 0.5);
  const double x0 = take(params, "x0", 1.0);
  expect_empty(params, "ou");

  TestProblem p;
  p.name = "ou";
  p.x0 = {x0};
  p.sys = {1, 1,
           [theta](double, std::span<const double> x, std::span<double> out) {
             out[0] = -theta * x[0];
           },
           [sigma](double, std::span<const double>, std::span<double> out) { out[0] = sigma; }};
  // The noise integral of the closed-form solution is evaluated on the
  // driving path's own grid with midpoint exponents (quadrature error
  // O(h^2), exact when theta = 0); pass a fine path.
  p.exact_strong = [theta, sigma, x0](double t, const WienerPath& path) {
    const long n = node_index(path, t);
    const double h = path.grid().step();
    const double dt = t - path.grid().t0;
    double integral = 0.0;
    for (long i = 0; i < n; ++i) {
      const double mid = (static_cast<double>(i) + 0.5) * h;
      integral += std::exp(-theta * (dt - mid)) * path.increments()(i, 0);
    }
    return std::vector<double>{x0 * std::exp(-theta * dt) + sigma * integral};
  };
  p.weak["identity"] = {[](std::span<const double> x) { return x[0]; },
                        [theta, x0](double t) { return x0 * std::exp(-theta * t); }};
  p.weak["second_moment"] = {
      [](std::span<const double> x) { return x[0] * x[0]; },
      [theta, sigma, x0](double t) {
        const double decay = std::exp(-2.0 * theta * t);
        const double stat = theta == 0.0 ? sigma * sigma * t
                                         : sigma * sigma * (1.0 - decay) / (2.0 * theta);
        return x0 * x0 * decay + stat;
      }};
  return p;
}

TestProblem make_gbm2d(std::map<std::string, double> params) {
  const double mu1 = take(params, "mu1", 0.5);
  const double sigma1 = take(params, "sigma1", 0.3);
  const double mu2 = take(params, "mu2", 0.2);
  const double sigma2 = take(params, "sigma2", 0.4);
  const double x01 = take(params, "x01", 1.0);
  const double x02 = take(params, "x02", 1.0);
  expect_empty(params, "gbm2d");

  TestProblem p;
  p.name = "gbm2d";
  p.x0 = {x01, x02};
  p.sys = {2, 2,
           [mu1, mu2](double, std::span<const double> x, std::span<double> out) {
             out[0] = mu1 * x[0];
             out[1] = mu2 * x[1];
           },
           [sigma1, sigma2](double, std::span<const double> x, std::span<double> out) {
             out[0] = sigma1 * x[0];
             out[1] = 0.0;
             out[2] = 0.0;
             out[3] = sigma2 * x[1];
           }};
  p.exact_strong = [mu1, sigma1, mu2, sigma2, x01, x02](double t, const WienerPath& path) {
    const long n = node_index(path, t);
    double w1 = 0.0, w2 = 0.0;
    for (long i = 0; i < n; ++i) {
      w1 += path.increments()(i, 0);
      w2 += path.increments()(i, 1);
    }
    const double dt = t - path.grid().t0;
    return std::vector<double>{
        x01 * std::exp((mu1 - 0.5 * sigma1 * sigma1) * dt + sigma1 * w1),
        x02 * std::exp((mu2 - 0.5 * sigma2 * sigma2) * dt + sigma2 * w2)};
  };
  p.weak["identity"] = {[](std::span<const double> x) { return x[0]; },
                        [mu1, x01](double t) { return x01 * std::exp(mu1 * t); }};
  return p;
}

TestProblem make_zero(std::map<std::string, double> params) {
  const double x0 = take(params, "x0", 1.0);
  expect_empty(params, "zero");

  TestProblem p;
  p.name = "zero";
  p.x0 = {x0};
  p.sys = {1, 1,
           [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; },
           [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; }};
  p.exact_strong = [x0](double, const WienerPath&) { return std::vector<double>{x0}; };
  p.weak["identity"] = {[](std::span<const double> x) { return x[0]; },
                        [x0](double) { return x0; }};
  return p;
}

}  // namespace

std::vector<std::string> builtin_problem_names() { return {"gbm", "gbm2d", "ou", "zero"}; }

TestProblem make_problem(const std::string& spec) {
  std::string name;
  auto params = parse_params(spec, name);
  if (name == "gbm") return make_gbm(std::move(params));
  if (name == "ou") return make_ou(std::move(params));
  if (name == "gbm2d") return make_gbm2d(std::move(params));
  if (name == "zero") return make_zero(std::move(params));
  throw InvalidError("unknown problem '" + name + "'; built in: gbm, gbm2d, ou, zero");
}

}  // namespace srk
