#pragma once

#include <span>
#include <string_view>

#include "ito.hpp"
#include "schemes.hpp"
#include "sde.hpp"

// Interface of the emitted specialized steppers. Each generated source
// unit defines one function; registry.cpp (also generated) defines the
// lookup table.

namespace srk::gen {

using ScalarStepFn = double (*)(const ScalarSde&, double t, double x, double h,
                                const ItoIntegralSet&);
using VectorStrongStepFn = void (*)(const SdeSystem&, double t, std::span<const double> x,
                                    double h, const ItoIntegralSet&, std::span<double> out);
using VectorWeakStepFn = void (*)(const SdeSystem&, double t, std::span<const double> x, double h,
                                  const WeakRandomSet&, std::span<double> out);

struct GeneratedStepper {
  const char* name;
  const char* table;
  TableKind kind;
  int m;
  ScalarStepFn scalar;
  VectorStrongStepFn vector_strong;
  VectorWeakStepFn vector_weak;
};

std::span<const GeneratedStepper> generated_steppers();

inline const GeneratedStepper* find_generated(std::string_view name) {
  for (const GeneratedStepper& s : generated_steppers())
    if (name == s.name) return &s;
  return nullptr;
}

}  // namespace srk::gen
