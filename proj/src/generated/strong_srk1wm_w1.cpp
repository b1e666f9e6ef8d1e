// Generated stepper. Do not edit.
// table: SRK1Wm   kind: vector_strong   m: 1

#include "generated_api.hpp"

#include <cmath>
#include <vector>

namespace srk::gen {

void strong_srk1wm_w1(const SdeSystem& sys, double t, std::span<const double> x, double h,
                         const ItoIntegralSet& I, std::span<double> out) {
    require(sys.m == 1, "strong_srk1wm_w1 is specialized for m = 1");
    const int d = sys.d;
    const double sqrt_h = std::sqrt(h);
    constexpr double c_B1_2_1 = 1.0;
    constexpr double c_B1_3_1 = -1.0;
    constexpr double c_a_1 = 1.0;
    constexpr double c_b1_1 = 1.0;
    constexpr double c_b2_2 = 1.0 / 2.0;
    constexpr double c_b2_3 = -1.0 / 2.0;
    std::vector<double> G1(static_cast<std::size_t>(d) * 1);
    sys.diffusion(t, x, G1);
    std::vector<double> F1(d);
    sys.drift(t, x, F1);
    std::vector<double> X1_2(d);
    for (int a = 0; a < d; ++a)
        X1_2[a] = x[a] + c_B1_2_1 * G1[a] * (I.dbl(0, 0) / sqrt_h);
    std::vector<double> G2(static_cast<std::size_t>(d) * 1);
    sys.diffusion(t, X1_2, G2);
    std::vector<double> X1_3(d);
    for (int a = 0; a < d; ++a)
        X1_3[a] = x[a] + c_B1_3_1 * G1[a] * (I.dbl(0, 0) / sqrt_h);
    std::vector<double> G3(static_cast<std::size_t>(d) * 1);
    sys.diffusion(t, X1_3, G3);
    for (int a = 0; a < d; ++a)
        out[a] = x[a] + c_a_1 * F1[a] * h
                 + c_b1_1 * G1[a] * I.single[0]
                 + c_b2_2 * G2[a] * sqrt_h
                 + c_b2_3 * G3[a] * sqrt_h;
}

}  // namespace srk::gen
