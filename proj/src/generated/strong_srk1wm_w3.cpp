// Generated stepper. Do not edit.
// table: SRK1Wm   kind: vector_strong   m: 3

#include "generated_api.hpp"

#include <cmath>
#include <vector>

namespace srk::gen {

void strong_srk1wm_w3(const SdeSystem& sys, double t, std::span<const double> x, double h,
                         const ItoIntegralSet& I, std::span<double> out) {
    require(sys.m == 3, "strong_srk1wm_w3 is specialized for m = 3");
    const int d = sys.d;
    const double sqrt_h = std::sqrt(h);
    constexpr double c_B1_2_1 = 1.0;
    constexpr double c_B1_3_1 = -1.0;
    constexpr double c_a_1 = 1.0;
    constexpr double c_b1_1 = 1.0;
    constexpr double c_b2_2 = 1.0 / 2.0;
    constexpr double c_b2_3 = -1.0 / 2.0;
    std::vector<double> G1(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, x, G1);
    std::vector<double> F1(d);
    sys.drift(t, x, F1);
    std::vector<double> X1_2(d);
    for (int a = 0; a < d; ++a)
        X1_2[a] = x[a] + c_B1_2_1 * G1[a * 3 + 0] * (I.dbl(0, 0) / sqrt_h)
                  + c_B1_2_1 * G1[a * 3 + 1] * (I.dbl(1, 0) / sqrt_h)
                  + c_B1_2_1 * G1[a * 3 + 2] * (I.dbl(2, 0) / sqrt_h);
    std::vector<double> G2(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, X1_2, G2);
    std::vector<double> X2_2(d);
    for (int a = 0; a < d; ++a)
        X2_2[a] = x[a] + c_B1_2_1 * G1[a * 3 + 0] * (I.dbl(0, 1) / sqrt_h)
                  + c_B1_2_1 * G1[a * 3 + 1] * (I.dbl(1, 1) / sqrt_h)
                  + c_B1_2_1 * G1[a * 3 + 2] * (I.dbl(2, 1) / sqrt_h);
    std::vector<double> G4(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, X2_2, G4);
    std::vector<double> X3_2(d);
    for (int a = 0; a < d; ++a)
        X3_2[a] = x[a] + c_B1_2_1 * G1[a * 3 + 0] * (I.dbl(0, 2) / sqrt_h)
                  + c_B1_2_1 * G1[a * 3 + 1] * (I.dbl(1, 2) / sqrt_h)
                  + c_B1_2_1 * G1[a * 3 + 2] * (I.dbl(2, 2) / sqrt_h);
    std::vector<double> G6(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, X3_2, G6);
    std::vector<double> X1_3(d);
    for (int a = 0; a < d; ++a)
        X1_3[a] = x[a] + c_B1_3_1 * G1[a * 3 + 0] * (I.dbl(0, 0) / sqrt_h)
                  + c_B1_3_1 * G1[a * 3 + 1] * (I.dbl(1, 0) / sqrt_h)
                  + c_B1_3_1 * G1[a * 3 + 2] * (I.dbl(2, 0) / sqrt_h);
    std::vector<double> G3(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, X1_3, G3);
    std::vector<double> X2_3(d);
    for (int a = 0; a < d; ++a)
        X2_3[a] = x[a] + c_B1_3_1 * G1[a * 3 + 0] * (I.dbl(0, 1) / sqrt_h)
                  + c_B1_3_1 * G1[a * 3 + 1] * (I.dbl(1, 1) / sqrt_h)
                  + c_B1_3_1 * G1[a * 3 + 2] * (I.dbl(2, 1) / sqrt_h);
    std::vector<double> G5(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, X2_3, G5);
    std::vector<double> X3_3(d);
    for (int a = 0; a < d; ++a)
        X3_3[a] = x[a] + c_B1_3_1 * G1[a * 3 + 0] * (I.dbl(0, 2) / sqrt_h)
                  + c_B1_3_1 * G1[a * 3 + 1] * (I.dbl(1, 2) / sqrt_h)
                  + c_B1_3_1 * G1[a * 3 + 2] * (I.dbl(2, 2) / sqrt_h);
    std::vector<double> G7(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, X3_3, G7);
    for (int a = 0; a < d; ++a)
        out[a] = x[a] + c_a_1 * F1[a] * h
                 + c_b1_1 * G1[a * 3 + 0] * I.single[0]
                 + c_b2_2 * G2[a * 3 + 0] * sqrt_h
                 + c_b2_3 * G3[a * 3 + 0] * sqrt_h
                 + c_b1_1 * G1[a * 3 + 1] * I.single[1]
                 + c_b2_2 * G4[a * 3 + 1] * sqrt_h
                 + c_b2_3 * G5[a * 3 + 1] * sqrt_h
                 + c_b1_1 * G1[a * 3 + 2] * I.single[2]
                 + c_b2_2 * G6[a * 3 + 2] * sqrt_h
                 + c_b2_3 * G7[a * 3 + 2] * sqrt_h;
}

}  // namespace srk::gen
