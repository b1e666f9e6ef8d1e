#pragma once

#include <functional>
#include <span>

#include "error.hpp"

namespace srk {

// Ito system dx = f(t, x) dt + G(t, x) dW with state dimension d and
// noise dimension m. The diffusion callback fills a row-major d x m
// buffer, G(alpha, l) at out[alpha * m + l]. User callbacks must be safe
// for concurrent invocation when trajectories run in parallel.
struct SdeSystem {
  int d = 1;
  int m = 1;
  std::function<void(double t, std::span<const double> x, std::span<double> out)> drift;
  std::function<void(double t, std::span<const double> x, std::span<double> out)> diffusion;

  void validate() const {
    require(d >= 1 && m >= 1, "system dimensions must be positive");
    require(static_cast<bool>(drift) && static_cast<bool>(diffusion),
            "system needs drift and diffusion callbacks");
  }
};

// Scalar SDE dx = f(t, x) dt + g(t, x) dW; the form the scalar strong
// schemes are stated for.
struct ScalarSde {
  std::function<double(double t, double x)> drift;
  std::function<double(double t, double x)> diffusion;
};

inline SdeSystem as_system(const ScalarSde& sde) {
  return {1, 1,
          [f = sde.drift](double t, std::span<const double> x, std::span<double> out) {
            out[0] = f(t, x[0]);
          },
          [g = sde.diffusion](double t, std::span<const double> x, std::span<double> out) {
            out[0] = g(t, x[0]);
          }};
}

inline ScalarSde as_scalar(const SdeSystem& sys) {
  require(sys.d == 1 && sys.m == 1, "scalar scheme needs a d = 1, m = 1 system");
  return {[f = sys.drift](double t, double x) {
            double out;
            f(t, {&x, 1}, {&out, 1});
            return out;
          },
          [g = sys.diffusion](double t, double x) {
            double out;
            g(t, {&x, 1}, {&out, 1});
            return out;
          }};
}

}  // namespace srk
