#pragma once

#include <Eigen/Dense>

#include <functional>

namespace renyi::opt {

using Eigen::VectorXd;

struct Result {
  VectorXd x;
  double value = 0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  double initialStep = 0.25;
  double tolerance = 1e-9;   // minimum relative improvement of the best vertex...
  int stallIterations = 50;  // ...over this many iterations
  int maxEvaluations = 100000;
  int restarts = 1;          // fresh simplex around the best point after convergence
};

// Adaptive-coefficient Nelder-Mead simplex descent.
Result nelder_mead(const std::function<double(const VectorXd&)>& f, const VectorXd& x0,
                   const NelderMeadOptions& options = {});

struct LbfgsOptions {
  int memory = 12;
  int maxIterations = 3000;
  double gradientTol = 1e-11;
  double relativeTol = 1e-14;
  int stallIterations = 6;
};

using ValueAndGradient = std::function<double(const VectorXd& x, VectorXd& grad)>;

// Limited-memory BFGS with Armijo backtracking; non-finite trial values are treated as failures.
Result lbfgs(const ValueAndGradient& fg, const VectorXd& x0, const LbfgsOptions& options = {});

struct ScalarResult {
  double x = 0;
  double value = 0;
  int evaluations = 0;
};

ScalarResult golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                     double xTol = 1e-8);
ScalarResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                     double xTol = 1e-8);

}  // namespace renyi::opt
