#pragma once

#include <json.hpp>

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "renyi/metrology.hpp"
#include "renyi/order.hpp"
#include "renyi/quantum.hpp"
#include "renyi/spectral.hpp"

namespace renyi {

// Best rational approximation p/q with q <= maxDenominator and |x - p/q| <= tol, by continued fractions.
std::optional<std::pair<long long, long long>> rationalize(double x, double tol, long long maxDenominator);

// Distinct levels (hbar = 1) with a uniform degeneracy factor; basis index = k * degeneracy + d.
class EnergySpectrum {
 public:
  static constexpr double kRelTol = 1e-9;
  static constexpr long long kMaxDenominator = 1000;

  EnergySpectrum(std::vector<double> levels, Index degeneracy = 1);

  const std::vector<double>& levels() const { return levels_; }
  Index degeneracy() const { return degeneracy_; }
  Index level_count() const { return static_cast<Index>(levels_.size()); }
  Index dim() const { return level_count() * degeneracy_; }
  bool periodic() const { return periodic_; }
  double ground() const { return ground_; }
  // Fundamental angular frequency and period; meaningful when periodic.
  double omega() const { return omega_; }
  double period() const { return tau_; }
  // (E_k - ground) / omega for periodic spectra.
  const std::vector<int>& quanta() const { return quanta_; }
  Generator<> generator() const { return Generator<>::energy(levels_, degeneracy_); }

 private:
  std::vector<double> levels_;
  Index degeneracy_ = 1;
  bool periodic_ = false;
  double ground_ = 0, omega_ = 0, tau_ = 0;
  std::vector<int> quanta_;
};

// p(t) = sum_j c_j exp(i w_j t).
struct AlmostPeriodicDensity {
  std::vector<double> frequencies;
  std::vector<std::complex<double>> coefficients;
  std::optional<double> period;  // set for periodic spectra

  double operator()(double t) const;
  // Frequencies whose coefficient is not negligible.
  std::vector<double> active_frequencies(double tol = 1e-14) const;
};

AlmostPeriodicDensity almost_periodic_density(const DensityOperator<>& rho, const EnergySpectrum& spectrum);

struct WindowSchedule {
  double s0 = 0;       // first window; 0 selects 100 / (smallest gap between active frequencies)
  int windows = 17;    // s = 2^m s0 for m = 0..windows-1
  int tail = 3;        // windows entering the limsup estimate
  double tolerance = 1e-5;
  int periodPoints = 0;  // grid points per period on the commensurate path; 0 selects automatically
};

struct BesicovitchMean {
  double value = 0;
  double spread = 0;  // max - min over the tail windows
  int windowsUsed = 0;
  bool exactPeriod = false;
  bool converged = false;
  std::vector<double> windowAverages;
};

// Long-time mean of f; frequencies bound the oscillation scale. With a period the mean is one-period quadrature.
BesicovitchMean besicovitch_mean(const std::function<double(double)>& f, const std::vector<double>& frequencies,
                                 std::optional<double> period, const WindowSchedule& schedule = {});

// Long-time mean of g(p(t)); the fast path for density-derived integrands.
BesicovitchMean besicovitch_mean(const AlmostPeriodicDensity& p, const std::function<double(double)>& g,
                                 const WindowSchedule& schedule = {});

struct ApEntropy {
  double value = 0;
  BesicovitchMean mean;
};

ApEntropy almost_periodic_renyi_entropy(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                        const RenyiOrder& order, const WindowSchedule& schedule = {});

// Periodic spectra: p_tau(t) = p_ap(t) / tau sampled on [0, tau).
CircularDensity periodic_time_density(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                      Index gridSize = 8192);

// Minimum over reference times of the canonical time deviation; refused for nonperiodic spectra.
double canonical_time_deviation(const DensityOperator<>& rho, const EnergySpectrum& spectrum);

struct ApTradeoffReport {
  double asymmetry = 0;
  double apEntropy = 0;
  std::vector<BoundCheck> checks;
  BesicovitchMean mean;
};

// Asymmetry plus almost-periodic entropy against 0, with the Shannon and conjugate-order entropy versions.
ApTradeoffReport almost_periodic_tradeoff_check(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                                const RenyiOrder& order, const WindowSchedule& schedule = {},
                                                const SigmaSearchOptions& options = {});

struct TimeEstimationReport {
  double rmse = 0;
  double intervalLength = 0;
  double errorEntropy = 0;
  double asymmetry = 0;
  bool heisenbergAvailable = false;
  std::string refusal;
  std::vector<BoundCheck> checks;
};

// Interval prior of length priorLength (time units). Periodic spectra use the canonical time measurement;
// nonperiodic spectra use the phase measurement on level indices.
TimeEstimationReport time_estimation_bounds(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                            double priorLength, const RenyiOrder& order, Index gridSize = 2048,
                                            const SigmaSearchOptions& options = {});

// -H_alpha^ap.
double information_gain_lower_bound(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                    const RenyiOrder& order, const WindowSchedule& schedule = {});

struct PeriodicApproximationPoint {
  long long maxDenominator = 0;
  double apEntropy = 0;
  double change = 0;  // |H(Q) - H(reference)|
};

// Levels rounded to rationals (in units of the smallest gap) with bounded denominators.
std::vector<PeriodicApproximationPoint> periodic_approximation_trend(const DensityOperator<>& rho,
                                                                     const EnergySpectrum& spectrum,
                                                                     const RenyiOrder& order,
                                                                     const std::vector<long long>& denominators,
                                                                     const WindowSchedule& schedule = {});

nlohmann::json to_json(const BesicovitchMean& m);

}  // namespace renyi
