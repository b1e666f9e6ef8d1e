// Generated stepper. Do not edit.
// table: SRK1W1   kind: scalar_strong   m: 1

#include "generated_api.hpp"

#include <cmath>
#include <vector>

namespace srk::gen {

double strong_srk1w1_w1(const ScalarSde& sys, double t, double x, double h,
                           const ItoIntegralSet& I) {
    const double sqrt_h = std::sqrt(h);
    constexpr double c_A0_2_1 = 3.0 / 4.0;
    constexpr double c_B0_2_1 = 3.0 / 2.0;
    constexpr double c_A1_2_1 = 1.0 / 4.0;
    constexpr double c_B1_2_1 = 1.0 / 2.0;
    constexpr double c_A1_3_1 = 1.0;
    constexpr double c_B1_3_1 = -1.0;
    constexpr double c_A1_4_3 = 1.0 / 4.0;
    constexpr double c_B1_4_1 = -5.0;
    constexpr double c_B1_4_2 = 3.0;
    constexpr double c_c1_2 = 1.0 / 4.0;
    constexpr double c_B1_4_3 = 1.0 / 2.0;
    constexpr double c_c1_3 = 1.0;
    constexpr double c_a_1 = 1.0 / 3.0;
    constexpr double c_a_2 = 2.0 / 3.0;
    constexpr double c_c0_2 = 3.0 / 4.0;
    constexpr double c_b1_1 = -1.0;
    constexpr double c_b2_1 = -1.0;
    constexpr double c_b3_1 = 2.0;
    constexpr double c_b4_1 = -2.0;
    constexpr double c_b1_2 = 4.0 / 3.0;
    constexpr double c_b2_2 = 4.0 / 3.0;
    constexpr double c_b3_2 = -4.0 / 3.0;
    constexpr double c_b4_2 = 5.0 / 3.0;
    constexpr double c_b1_3 = 2.0 / 3.0;
    constexpr double c_b2_3 = -1.0 / 3.0;
    constexpr double c_b3_3 = -2.0 / 3.0;
    constexpr double c_b4_3 = -2.0 / 3.0;
    constexpr double c_b4_4 = 1.0;
    constexpr double c_c1_4 = 1.0 / 4.0;
    const double F1 = sys.drift(t, x);
    const double G1 = sys.diffusion(t, x);
    const double X0_2 = x + c_A0_2_1 * F1 * h + c_B0_2_1 * G1 * (I.time_right[0] / h);
    const double F2 = sys.drift(t + c_c0_2 * h, X0_2);
    const double X1_2 = x + c_A1_2_1 * F1 * h + c_B1_2_1 * G1 * sqrt_h;
    const double G2 = sys.diffusion(t + c_c1_2 * h, X1_2);
    const double X1_3 = x + c_A1_3_1 * F1 * h + c_B1_3_1 * G1 * sqrt_h;
    const double G3 = sys.diffusion(t + c_c1_3 * h, X1_3);
    const double X1_4 = x + c_A1_4_3 * F1 * h + c_B1_4_1 * G1 * sqrt_h + c_B1_4_2 * G2 * sqrt_h + c_B1_4_3 * G3 * sqrt_h;
    const double G4 = sys.diffusion(t + c_c1_4 * h, X1_4);
    return x + c_a_1 * F1 * h
             + c_a_2 * F2 * h
             + c_b1_1 * G1 * I.single[0]
             + c_b2_1 * G1 * (I.dbl(0, 0) / sqrt_h)
             + c_b3_1 * G1 * (I.time_right[0] / h)
             + c_b4_1 * G1 * (I.triple_diag[0] / h)
             + c_b1_2 * G2 * I.single[0]
             + c_b2_2 * G2 * (I.dbl(0, 0) / sqrt_h)
             + c_b3_2 * G2 * (I.time_right[0] / h)
             + c_b4_2 * G2 * (I.triple_diag[0] / h)
             + c_b1_3 * G3 * I.single[0]
             + c_b2_3 * G3 * (I.dbl(0, 0) / sqrt_h)
             + c_b3_3 * G3 * (I.time_right[0] / h)
             + c_b4_3 * G3 * (I.triple_diag[0] / h)
             + c_b4_4 * G4 * (I.triple_diag[0] / h);
}

}  // namespace srk::gen
