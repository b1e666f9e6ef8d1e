#pragma once

#include <span>

#include "ito.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "sde.hpp"
#include "tables.hpp"

namespace srk {

// One Euler-Maruyama step: out = x + f(t,x) h + G(t,x) dW.
void em_step(const SdeSystem& sys, double t, std::span<const double> x, double h,
             std::span<const double> dw, std::span<double> out);

// One step of the scalar strong family (two coupled stage chains X0, X1).
// The integral set must be built from this step's increment with m = 1;
// its I^{10} carries the independent zeta draw.
double scalar_strong_step(const FloatTable& table, const ScalarSde& sde, double t, double x,
                          double h, const ItoIntegralSet& ints);

// One step of the strong vector family (stage chains X^0 and X^k,
// k = 1..m, coupled through I^{lk}/sqrt(h)).
void vector_strong_step(const FloatTable& table, const SdeSystem& sys, double t,
                        std::span<const double> x, double h, const ItoIntegralSet& ints,
                        std::span<double> out);

// Discrete random variables replacing the Ito integrals in the weak
// family: the three-point I-hat, the two-point I-tilde, and the pairwise
// products matrix assembled from them.
struct WeakRandomSet {
  double h = 0.0;
  std::vector<double> ihat;  // values in {-sqrt(3h), 0, sqrt(3h)}
  std::vector<double> itil;  // values in {-sqrt(h), sqrt(h)}
  Matrix ihat2;              // ihat2(k,k) = (ihat_k^2 - h)/2; ihat2(k,l) + ihat2(l,k) = ihat_k ihat_l

  int m() const { return static_cast<int>(ihat.size()); }
};

// Draws I-hat with probabilities (1/6, 2/3, 1/6) and I-tilde with
// (1/2, 1/2), then fills the product matrix. Draw order: all I-hat,
// then all I-tilde, component index ascending.
WeakRandomSet sample_weak_randoms(RngStream& rng, int m, double h);

// One step of the weak vector family (stage chains X^0, X^k and the
// hatted X^k coupled through I-hat^{kl}/sqrt(h)).
void vector_weak_step(const FloatTable& table, const SdeSystem& sys, double t,
                      std::span<const double> x, double h, const WeakRandomSet& rand,
                      std::span<double> out);

}  // namespace srk
