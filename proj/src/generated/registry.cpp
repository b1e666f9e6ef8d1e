// Generated lookup table for the emitted steppers. Do not edit.
#include "generated_api.hpp"

namespace srk::gen {

void weak_eulerw_w1(const SdeSystem&, double, std::span<const double>, double, const WeakRandomSet&, std::span<double>);
void weak_eulerw_w2(const SdeSystem&, double, std::span<const double>, double, const WeakRandomSet&, std::span<double>);
void weak_eulerw_w3(const SdeSystem&, double, std::span<const double>, double, const WeakRandomSet&, std::span<double>);
void weak_eulerw_w4(const SdeSystem&, double, std::span<const double>, double, const WeakRandomSet&, std::span<double>);
void weak_eulerw_w5(const SdeSystem&, double, std::span<const double>, double, const WeakRandomSet&, std::span<double>);
void weak_eulerw_w6(const SdeSystem&, double, std::span<const double>, double, const WeakRandomSet&, std::span<double>);
double strong_k1p1_w1(const ScalarSde&, double, double, double, const ItoIntegralSet&);
double strong_srk1w1_w1(const ScalarSde&, double, double, double, const ItoIntegralSet&);
void strong_srk1wm_w1(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk1wm_w2(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk1wm_w3(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk1wm_w4(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk1wm_w5(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk1wm_w6(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
double strong_srk2w1_w1(const ScalarSde&, double, double, double, const ItoIntegralSet&);
void strong_srk2wm_w1(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk2wm_w2(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk2wm_w3(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk2wm_w4(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk2wm_w5(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);
void strong_srk2wm_w6(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, std::span<double>);

namespace {
const GeneratedStepper kSteppers[] = {
    {"weak_eulerw_w1", "EulerW", TableKind::vector_weak, 1, nullptr, nullptr, weak_eulerw_w1},
    {"weak_eulerw_w2", "EulerW", TableKind::vector_weak, 2, nullptr, nullptr, weak_eulerw_w2},
    {"weak_eulerw_w3", "EulerW", TableKind::vector_weak, 3, nullptr, nullptr, weak_eulerw_w3},
    {"weak_eulerw_w4", "EulerW", TableKind::vector_weak, 4, nullptr, nullptr, weak_eulerw_w4},
    {"weak_eulerw_w5", "EulerW", TableKind::vector_weak, 5, nullptr, nullptr, weak_eulerw_w5},
    {"weak_eulerw_w6", "EulerW", TableKind::vector_weak, 6, nullptr, nullptr, weak_eulerw_w6},
    {"strong_k1p1_w1", "K1P1", TableKind::scalar_strong, 1, strong_k1p1_w1, nullptr, nullptr},
    {"strong_srk1w1_w1", "SRK1W1", TableKind::scalar_strong, 1, strong_srk1w1_w1, nullptr, nullptr},
    {"strong_srk1wm_w1", "SRK1Wm", TableKind::vector_strong, 1, nullptr, strong_srk1wm_w1, nullptr},
    {"strong_srk1wm_w2", "SRK1Wm", TableKind::vector_strong, 2, nullptr, strong_srk1wm_w2, nullptr},
    {"strong_srk1wm_w3", "SRK1Wm", TableKind::vector_strong, 3, nullptr, strong_srk1wm_w3, nullptr},
    {"strong_srk1wm_w4", "SRK1Wm", TableKind::vector_strong, 4, nullptr, strong_srk1wm_w4, nullptr},
    {"strong_srk1wm_w5", "SRK1Wm", TableKind::vector_strong, 5, nullptr, strong_srk1wm_w5, nullptr},
    {"strong_srk1wm_w6", "SRK1Wm", TableKind::vector_strong, 6, nullptr, strong_srk1wm_w6, nullptr},
    {"strong_srk2w1_w1", "SRK2W1", TableKind::scalar_strong, 1, strong_srk2w1_w1, nullptr, nullptr},
    {"strong_srk2wm_w1", "SRK2Wm", TableKind::vector_strong, 1, nullptr, strong_srk2wm_w1, nullptr},
    {"strong_srk2wm_w2", "SRK2Wm", TableKind::vector_strong, 2, nullptr, strong_srk2wm_w2, nullptr},
    {"strong_srk2wm_w3", "SRK2Wm", TableKind::vector_strong, 3, nullptr, strong_srk2wm_w3, nullptr},
    {"strong_srk2wm_w4", "SRK2Wm", TableKind::vector_strong, 4, nullptr, strong_srk2wm_w4, nullptr},
    {"strong_srk2wm_w5", "SRK2Wm", TableKind::vector_strong, 5, nullptr, strong_srk2wm_w5, nullptr},
    {"strong_srk2wm_w6", "SRK2Wm", TableKind::vector_strong, 6, nullptr, strong_srk2wm_w6, nullptr},
};
}  // namespace

std::span<const GeneratedStepper> generated_steppers() { return kSteppers; }

}  // namespace srk::gen
