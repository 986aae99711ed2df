#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "renyi/order.hpp"
#include "renyi/spectral.hpp"

namespace renyi {

inline constexpr double kProbSumTol = 1e-10;
inline constexpr double kZeroProb = 1e-15;

// Probabilities over integer labels.
struct DiscreteDistribution {
  std::vector<int> labels;
  VectorXd probs;

  DiscreteDistribution() = default;
  // Labels default to 0..n-1. Tiny negative round-off is clipped.
  explicit DiscreteDistribution(VectorXd p, std::vector<int> labels = {});

  static DiscreteDistribution uniform(int n, int firstLabel = 0);
  static DiscreteDistribution point_mass(int label);
  // Normalizes nonnegative weights.
  static DiscreteDistribution from_weights(const VectorXd& w, std::vector<int> labels = {});

  Index size() const { return probs.size(); }
  double prob_of(int label) const;
  int min_label() const;
  int max_label() const;
  double mean() const;
};

// Density sampled at left endpoints periodStart + i * period / gridSize.
struct CircularDensity {
  double periodStart = 0;
  double period = 0;
  VectorXd values;

  CircularDensity() = default;
  CircularDensity(VectorXd values, double period, double periodStart = 0.0);

  static CircularDensity uniform(Index gridSize, double period, double periodStart = 0.0);
  static CircularDensity from_function(const std::function<double(double)>& f, Index gridSize, double period,
                                       double periodStart = 0.0);

  Index grid_size() const { return values.size(); }
  double spacing() const { return period / static_cast<double>(values.size()); }
  double point(Index i) const { return periodStart + static_cast<double>(i) * spacing(); }
  double normalization() const { return spacing() * values.sum(); }
  VectorXd masses() const { return spacing() * values; }
};

// Density on [a, b] (possibly infinite ends) carried with its quadrature rule.
struct RealLineDensity {
  double a = 0, b = 0;
  VectorXd nodes, weights, values;
  bool uniformGrid = false;  // midpoint grid of equal cells, needed for wrapping

  // Midpoint grid: values at a + (i + 1/2)(b - a)/n.
  static RealLineDensity on_grid(double a, double b, VectorXd values);
  static RealLineDensity from_function(const std::function<double(double)>& f, double a, double b, Index cells);
  // Composite Gauss-Legendre on a mapped variable: sine map for finite [a, b], tangent map with the given
  // scale for infinite ends.
  static RealLineDensity from_function_quadrature(const std::function<double(double)>& f, double a, double b,
                                                  double scale = 1.0, int panels = 64, int order = 16);

  Index grid_size() const { return values.size(); }
  double normalization() const { return weights.dot(values); }
  double moment(const std::function<double(double)>& g) const;
};

double renyi_entropy(const VectorXd& probs, const RenyiOrder& order);
double renyi_entropy(const DiscreteDistribution& d, const RenyiOrder& order);
double renyi_entropy(const CircularDensity& d, const RenyiOrder& order);
double renyi_entropy(const RealLineDensity& d, const RenyiOrder& order);
// Rényi entropy of a density given by values with quadrature weights.
double renyi_entropy_weighted(const VectorXd& values, const VectorXd& weights, const RenyiOrder& order);

template <class D>
double renyi_length(const D& d, const RenyiOrder& order) {
  return std::exp(renyi_entropy(d, order));
}

// D_alpha(p || q) on aligned vectors; +inf when the order requires it.
double classical_relative_entropy(const VectorXd& p, const VectorXd& q, const RenyiOrder& order);
double classical_relative_entropy(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                  const RenyiOrder& order);
double classical_relative_entropy(const CircularDensity& p, const CircularDensity& q, const RenyiOrder& order);

// Sibson's I_alpha for prior p_j and channel rows p(a|j).
double sibson_mutual_information(const VectorXd& prior, const Eigen::MatrixXd& channel, const RenyiOrder& order);
double sibson_mutual_information(const DiscreteDistribution& prior, const std::vector<DiscreteDistribution>& conditionals,
                                 const RenyiOrder& order);
// D_alpha(p_AX || q_A p_X), the quantity minimized by the Sibson closed form.
double sibson_objective(const VectorXd& prior, const Eigen::MatrixXd& channel, const VectorXd& q,
                        const RenyiOrder& order);

struct ConvolutionBound {
  double value = 0;
  DiscreteDistribution minimizer;  // best q found (masses for circular inputs)
  bool converged = false;
  int evaluations = 0;
};

struct ConvolutionSearch {
  int starts = 8;
  unsigned seed = 7;
  int maxEvaluations = 100000;
  double tolerance = 1e-9;
};

// inf_q D_alpha(perr || q * prior reflected) over distributions q on Z.
ConvolutionBound convolution_lower_bound(const DiscreteDistribution& perr, const DiscreteDistribution& prior,
                                         const RenyiOrder& order, const ConvolutionSearch& search = {});
// Cyclic variant on Z_m with probability vectors indexed 0..m-1.
ConvolutionBound convolution_lower_bound_cyclic(const VectorXd& perr, const VectorXd& prior, const RenyiOrder& order,
                                                const ConvolutionSearch& search = {});
// Circular densities on a shared grid; the search runs over cell masses.
ConvolutionBound convolution_lower_bound(const CircularDensity& perr, const CircularDensity& prior,
                                         const RenyiOrder& order, const ConvolutionSearch& search = {});
// (q * prior reflected)(y) = sum_x q(y + x) prior(x) for y in perr's labels.
VectorXd reflected_convolution(const DiscreteDistribution& q, const DiscreteDistribution& prior,
                               const std::vector<int>& at);

// Concentration onto one interval: (Cr)(y) = sum_j r(y + j * length).
CircularDensity wrap_mod_interval(const RealLineDensity& d, double intervalLength);
// Labels reduced modulo m into 0..m-1.
DiscreteDistribution wrap_mod_interval(const DiscreteDistribution& d, int intervalLength);

DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b);
// Circular convolution; result sits on the grid starting at a.periodStart + b.periodStart.
CircularDensity convolve(const CircularDensity& a, const CircularDensity& b);

enum class ExtremalKind { SecondMoment, FirstMomentHalfLine, AbsFirstMomentLine };

struct ExtremalDensity {
  RealLineDensity density;
  double lambda = 0;  // scale
  double K = 0;       // normalization of the unit-scale profile
  ExtremalKind kind = ExtremalKind::SecondMoment;
};

// Maximum-entropy densities under a second-moment (sigma = RMS) or first-moment (sigma = mean of x or |x|)
// constraint; for the first-moment kinds the order is the length order beta > 1/2.
ExtremalDensity maxent_extremal_density(const RenyiOrder& order, double sigma, ExtremalKind kind);
// Closed-form entropy of the second-moment extremal density.
double maxent_second_moment_entropy(const RenyiOrder& order, double sigma);
// Closed-form Rényi length of the first-moment extremal density (half line), for conjugate orders.
double maxent_first_moment_length(const RenyiOrder& beta, double mean);

}  // namespace renyi
