#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sde.hpp"
#include "wiener.hpp"

namespace srk {

// A functional F whose expectation at the final time has a closed form;
// what the weak-order harness measures.
struct WeakFunctional {
  std::function<double(std::span<const double> x)> apply;
  std::function<double(double t_final)> expectation;
};

// Analytically solvable SDE used by the convergence harness. The
// pathwise solution is evaluated from a stored driving path at one of
// its grid times.
struct TestProblem {
  std::string name;
  SdeSystem sys;
  std::vector<double> x0;
  std::function<std::vector<double>(double t, const WienerPath& path)> exact_strong;
  std::map<std::string, WeakFunctional> weak;
};

std::vector<std::string> builtin_problem_names();

// Accepts a bare name ("gbm") or a parameterized form like
// "gbm(mu=0.5,sigma=0.3,x0=1)". Unknown names or parameters are
// rejected.
TestProblem make_problem(const std::string& spec);

}  // namespace srk
