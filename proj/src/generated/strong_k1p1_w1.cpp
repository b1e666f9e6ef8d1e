// Generated stepper. Do not edit.
// table: K1P1   kind: scalar_strong   m: 1

#include "generated_api.hpp"

#include <cmath>
#include <vector>

namespace srk::gen {

double strong_k1p1_w1(const ScalarSde& sys, double t, double x, double h,
                           const ItoIntegralSet& I) {
    const double sqrt_h = std::sqrt(h);
    constexpr double c_A1_2_1 = 1.0;
    constexpr double c_B1_2_1 = 1.0;
    constexpr double c_a_1 = 1.0;
    constexpr double c_b1_1 = 1.0;
    constexpr double c_b2_1 = -1.0;
    constexpr double c_b2_2 = 1.0;
    const double F1 = sys.drift(t, x);
    const double G1 = sys.diffusion(t, x);
    const double X1_2 = x + c_A1_2_1 * F1 * h + c_B1_2_1 * G1 * sqrt_h;
    const double G2 = sys.diffusion(t, X1_2);
    return x + c_a_1 * F1 * h
             + c_b1_1 * G1 * I.single[0]
             + c_b2_1 * G1 * (I.dbl(0, 0) / sqrt_h)
             + c_b2_2 * G2 * (I.dbl(0, 0) / sqrt_h);
}

}  // namespace srk::gen
