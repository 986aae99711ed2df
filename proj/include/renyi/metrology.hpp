#pragma once

#include <json.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "renyi/entropy.hpp"
#include "renyi/order.hpp"
#include "renyi/quantum.hpp"
#include "renyi/spectral.hpp"

namespace renyi {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kCompletenessTol = 1e-8;
inline constexpr double kSlackTol = 1e-6;

// Integer eigenvalue labels of a diagonal generator; throws when the spectrum is not integral.
std::vector<int> integer_labels(const Generator<>& g);

// p(theta) = sum_k c_k exp(i k theta) for |k| <= maxFrequency.
struct TrigDensity {
  int maxFrequency = 0;
  CVector coefficients;

  // sum_{m,m'} K_{mm'} exp(i (l_m - l_m') theta).
  static TrigDensity from_kernel(const CMatrix& kernel, const std::vector<int>& labels);

  std::complex<double> coefficient(int k) const;
  double operator()(double theta) const;
  double normalization() const { return 2.0 * kPi * coefficient(0).real(); }
  // Integral of (theta - chi)^2 p(theta) over [chi - pi, chi + pi).
  double second_moment(double chi = 0.0) const;
  CircularDensity sample(Index gridSize, double periodStart = -kPi) const;
};

struct PhaseDeviation {
  double chi = 0;
  double deviation = 0;
};
// Minimum over reference angles of the standard deviation about that angle.
PhaseDeviation minimum_phase_deviation(const TrigDensity& p);

// Effects F_i F_i^dagger attached to estimate angles.
struct EstimatorPovm {
  std::vector<double> angles;
  std::vector<CMatrix> factors;

  static EstimatorPovm constant(Index dim, double angle);

  Index dim() const { return factors.empty() ? 0 : factors.front().rows(); }
  std::size_t size() const { return angles.size(); }
  CMatrix effect(std::size_t i) const { return factors[i] * factors[i].adjoint(); }
  // Largest entry of |sum of effects - identity|.
  double completeness_defect() const;
};

// Grid-sampled covariant phase measurement with kets
// |phi> = U sum_m exp(i zeta_m) exp(-i m phi)|m> / sqrt(2 pi) on phi_i = -pi + 2 pi i / gridSize.
struct PhasePovm {
  Index gridSize = 1024;
  std::vector<int> labels;
  std::vector<double> referencePhases;
  CMatrix rotation;  // empty for the canonical kets

  static PhasePovm canonical(const Generator<>& basis, Index gridSize = 1024, std::vector<double> zeta = {});
  static PhasePovm rotated(const Generator<>& basis, Index gridSize, const CMatrix& unitary);

  Index dim() const { return static_cast<Index>(labels.size()); }
  double angle(Index i) const { return -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(gridSize); }
  CVector ket(double phi) const;
  EstimatorPovm estimator() const;
};

TrigDensity canonical_phase_trig(const DensityOperator<>& rho, const PhasePovm& povm);
CircularDensity canonical_phase_density(const DensityOperator<>& rho, const PhasePovm& povm);

// Covariant average (1/2 pi) sum_i exp(i G phi_i) E_i exp(-i G phi_i) over the estimator effects.
CMatrix averaged_effect(const EstimatorPovm& povm, const std::vector<int>& labels);

enum class PriorKind { UniformCircle, UniformInterval };

struct Prior {
  PriorKind kind = PriorKind::UniformCircle;
  double length = 2.0 * kPi;
  double center = 0.0;

  static Prior circle() { return {}; }
  static Prior interval(double length, double center = 0.0) { return {PriorKind::UniformInterval, length, center}; }
};

struct EstimationScenario {
  DensityOperator<> probe;
  Generator<> generator;
  Prior prior;
  EstimatorPovm estimator;
  Index gridSize = 4096;  // density and prior grid on [-pi, pi)
};

struct ErrorStatistics {
  bool circular = true;
  CircularDensity errorDensity;      // circular displacement: error wrapped into [-pi, pi)
  RealLineDensity lineDensity;       // non-integral displacement spectrum: unwrapped error
  std::optional<TrigDensity> exact;  // uniform circle prior only
  double rmse = 0;
  double completenessDefect = 0;
  double intervalLength = 2.0 * kPi;  // prior length after alignment with the grid
  std::vector<std::pair<RenyiOrder, double>> renyiEntropies;

  double entropy(const RenyiOrder& order) const;
};

nlohmann::json to_json(const ErrorStatistics& s);

// Uniform circle prior: exact error density tr[rho M~_theta] from the averaged effect.
ErrorStatistics error_distribution(const EstimationScenario& scenario, const std::vector<RenyiOrder>& orders = {1.0});
// Uniform interval prior discretized on the grid; errors wrap when the displacement spectrum is integral.
ErrorStatistics interval_error_distribution(const EstimationScenario& scenario,
                                            const std::vector<RenyiOrder>& orders = {1.0});

// Two-branch Gamma-function scaling function; requires order >= 1/2.
double scaling_function_f(const RenyiOrder& order);
// alpha^{alpha/(alpha-1)} f(alpha), with its limit pi/sqrt(3) at infinity.
double scaled_scaling_function(const RenyiOrder& order);

struct ScalingMaximum {
  double alphaStar = 0;
  double fMax = 0;
};
ScalingMaximum maximize_scaling_function();
double f_max();

// measured >= bound, slack = measured - bound.
struct BoundCheck {
  std::string name;
  double bound = 0;
  double measured = 0;
  double slack = 0;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();

  bool holds(double tol = kSlackTol) const { return slack >= -tol; }
};

BoundCheck make_check(std::string name, double bound, double measured, double alpha = std::numeric_limits<double>::quiet_NaN(),
                      double beta = std::numeric_limits<double>::quiet_NaN());
nlohmann::json to_json(const BoundCheck& c);

// Error entropy plus conjugate generator entropy against log 2 pi (uniform circle prior).
BoundCheck error_tradeoff_check(const EstimationScenario& scenario, const ErrorStatistics& stats, const RenyiOrder& alpha);
BoundCheck error_tradeoff_check(const EstimationScenario& scenario, const RenyiOrder& alpha);

struct RmseBounds {
  double bound1 = 0;  // pi / (sqrt(3) L_{1/2})
  double bound2 = 0;  // max_n p(n)
  double bound3 = 0;  // f_max / (<N> + 1/2)
  double best() const { return std::max({bound1, bound2, bound3}); }
};
// Number-basis populations of the probe.
RmseBounds rmse_lower_bounds(const DensityOperator<>& probe);
std::vector<BoundCheck> rmse_bound_checks(const DensityOperator<>& probe, double rmse);

struct FisherComparison {
  double deltaN = 0;
  double fisherBound = 0;  // 1/(2 delta N), +inf for number states
};
FisherComparison fisher_comparison(const DensityOperator<>& probe);

// Length-deviation relation and its three specializations. A NaN chi selects the minimizing reference angle.
std::vector<BoundCheck> length_deviation_checks(const DensityOperator<>& rho, double chi, const RenyiOrder& alpha);

// Asymmetry used by the checkers: closed form for pure states and at order 1, numeric infimum otherwise.
double checker_asymmetry(const DensityOperator<>& rho, const Generator<>& g, const RenyiOrder& order,
                         const SigmaSearchOptions& options = {});

// Prior-interval tradeoff, RMSE bounds from the asymmetry and its upper bounds, and the number-generator
// Heisenberg limit when the generator labels start at 0.
std::vector<BoundCheck> interval_checks(const EstimationScenario& scenario, const ErrorStatistics& stats,
                                        const RenyiOrder& alpha, double asymmetry);

// Phase entropy plus asymmetry against log 2 pi, and exp(asymmetry) times phase deviation.
std::vector<BoundCheck> phase_asymmetry_checks(const DensityOperator<>& rho, const Generator<>& g,
                                               const RenyiOrder& alpha, double asymmetry, Index gridSize = 4096);

// Error entropy under the h(G) displacement plus H_beta of the original G distribution against log l_I.
BoundCheck nonlinear_generator_check(const EstimationScenario& scenario, const std::function<double(double)>& h,
                                     const RenyiOrder& alpha);

struct RotationReport {
  double rmse = 0;
  double meanAbsJz = 0;
  double zeroWeight = 0;
  double deviation = 0;  // minimum over reference angles of the rotation-angle deviation
  std::vector<BoundCheck> checks;
};
// Probe over J_z eigenstates m = -jmax..jmax; estimator defaults to the canonical rotation-angle kets.
RotationReport rotation_bounds(const DensityOperator<>& probe, const Prior& prior,
                               const std::vector<RenyiOrder>& alphas = {0.5, 0.75, 1.0, 2.0, RenyiOrder::infinity()},
                               std::optional<EstimatorPovm> estimator = std::nullopt, Index gridSize = 2048);

enum class ProbeFamily { TwoTerm, RealAmplitudes };

struct ConjectureResult {
  double minimum = 0;  // (<N> + 1/2) times the minimum phase deviation
  CVector bestProbe;
  std::string family;
  int evaluations = 0;
  double conjectured = 0;     // pi / (2 sqrt 3)
  double guaranteed = 0;      // f_max
  double asymptoticCap = 0;   // 2 (-z_A / 3)^{3/2}
};
ConjectureResult conjecture_search(ProbeFamily family, Index cutoff, int budget, unsigned seed = 11);
nlohmann::json to_json(const ConjectureResult& r);

struct InequalityChain {
  double sibson = 0;       // I_alpha of the measurement channel
  double holevo = 0;       // chi_alpha of the ensemble
  double asymmetry = 0;    // A_alpha of the probe
  double entropyBeta = 0;  // H_beta of the probe's generator distribution
  std::vector<BoundCheck> checks;
};
// Measurement information, Holevo quantity, asymmetry and conjugate generator entropy in increasing order.
InequalityChain inequality_chain(const SignalEnsemble& ensemble, const DensityOperator<>& probe,
                                 const EstimatorPovm& measurement, const RenyiOrder& alpha,
                                 const SigmaSearchOptions& options = {});

// The dephasing-type map built from the averaged effect, acting on number-basis operators.
CMatrix averaged_effect_map(const CMatrix& rho, const CMatrix& averagedEffect);

}  // namespace renyi
