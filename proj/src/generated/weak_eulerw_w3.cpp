// Generated stepper. Do not edit.
// table: EulerW   kind: vector_weak   m: 3

#include "generated_api.hpp"

#include <cmath>
#include <vector>

namespace srk::gen {

void weak_eulerw_w3(const SdeSystem& sys, double t, std::span<const double> x, double h,
                         const WeakRandomSet& R, std::span<double> out) {
    require(sys.m == 3, "weak_eulerw_w3 is specialized for m = 3");
    const int d = sys.d;
    constexpr double c_a_1 = 1.0;
    constexpr double c_b1_1 = 1.0;
    std::vector<double> F1(d);
    sys.drift(t, x, F1);
    std::vector<double> G1(static_cast<std::size_t>(d) * 3);
    sys.diffusion(t, x, G1);
    for (int a = 0; a < d; ++a)
        out[a] = x[a] + c_a_1 * F1[a] * h
                 + c_b1_1 * G1[a * 3 + 0] * R.ihat[0]
                 + c_b1_1 * G1[a * 3 + 1] * R.ihat[1]
                 + c_b1_1 * G1[a * 3 + 2] * R.ihat[2];
}

}  // namespace srk::gen
