#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "renyi/entropy.hpp"
#include "renyi/order.hpp"
#include "renyi/spectral.hpp"

namespace renyi {

// Sandwiched Rényi divergence. Orders below 1/2 are evaluated but flagged by the checked variant.
double sandwiched_relative_entropy(const CMatrix& rho, const CMatrix& sigma, const RenyiOrder& order);
double sandwiched_relative_entropy(const DensityOperator<>& rho, const DensityOperator<>& sigma, const RenyiOrder& order);

struct CheckedDivergence {
  double value = 0;
  bool belowHalf = false;  // order outside the range where data processing is guaranteed
};
CheckedDivergence sandwiched_relative_entropy_checked(const DensityOperator<>& rho, const DensityOperator<>& sigma,
                                                      const RenyiOrder& order);

enum class AsymmetryMethod { PureDuality, NumericInfimum };

struct StartRecord {
  std::string label;
  double value = 0;  // objective after local optimization from this start
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct OptimizerDiagnostics {
  std::vector<StartRecord> starts;
  std::size_t bestStart = 0;
  bool converged = false;
};

struct AsymmetryResult {
  double value = 0;
  AsymmetryMethod method = AsymmetryMethod::NumericInfimum;
  DensityOperator<> minimizer;
  RenyiOrder order = 1.0;
  OptimizerDiagnostics diagnostics;
};

nlohmann::json to_json(const AsymmetryResult& r);

struct SigmaSearchOptions {
  int starts = 8;  // total, including the structured starts
  unsigned seed = 20240611;
  int maxIterations = 3000;
  int polishEvaluations = 20000;  // simplex polish budget for nonsmooth (infinite-order) objectives
  std::vector<std::pair<std::string, CMatrix>> extraStarts;  // caller-supplied warm starts
};

AsymmetryResult asymmetry_pure(const DensityOperator<>& psi, const Generator<>& g, const RenyiOrder& order);
AsymmetryResult asymmetry_numeric(const DensityOperator<>& rho, const Generator<>& g, const RenyiOrder& order,
                                  const SigmaSearchOptions& options = {});
// H(rho_G) - H(rho).
double asymmetry_alpha1(const DensityOperator<>& rho, const Generator<>& g);
// Rényi entropy of the eigenspace weights at the conjugate order.
double asymmetry_upper_bound(const DensityOperator<>& rho, const Generator<>& g, const RenyiOrder& order);
// The commuting state attaining the pure-state asymmetry: weights proportional to p_k^beta.
DensityOperator<> pure_state_optimal_commuting_state(const DensityOperator<>& psi, const Generator<>& g,
                                                     const RenyiOrder& order);

struct SignalEnsemble {
  std::vector<double> displacements;
  DiscreteDistribution priors;
  std::vector<DensityOperator<>> states;
  Generator<> generator;
  bool fromProbe = false;

  // rho_j = displace(probe, g, x_j).
  static SignalEnsemble from_probe(const DensityOperator<>& probe, const Generator<>& g, const std::vector<double>& x,
                                   const VectorXd& priorWeights);
  // Uniform prior on [a, b) split into equal cells; each state is the displaced probe averaged over its cell.
  static SignalEnsemble uniform_partition(const DensityOperator<>& probe, const Generator<>& g, double a, double b,
                                          int cells);

  Index size() const { return static_cast<Index>(states.size()); }
  CMatrix average_state() const;
};

struct HolevoResult {
  double value = 0;
  DensityOperator<> minimizer;
  OptimizerDiagnostics diagnostics;
};

HolevoResult renyi_holevo(const SignalEnsemble& ensemble, const RenyiOrder& order, const SigmaSearchOptions& options = {});
// Same, warm-started from a commuting state (typically the asymmetry minimizer of the probe).
HolevoResult renyi_holevo(const SignalEnsemble& ensemble, const RenyiOrder& order, const CMatrix& warmStart,
                          const SigmaSearchOptions& options = {});

struct UniformEnsemblePoint {
  double r = 0;
  int cells = 0;
  double chi = 0;
};

// chi_alpha of cell-partitioned uniform ensembles on [-r, r]; cells = ceil(2r / cellWidth) capped at maxCells.
std::vector<UniformEnsemblePoint> uniform_ensemble_asymmetry_approximation(const DensityOperator<>& rho,
                                                                           const Generator<>& g,
                                                                           const RenyiOrder& order,
                                                                           const std::vector<double>& rValues,
                                                                           double cellWidth = 0.25, int maxCells = 256,
                                                                           const SigmaSearchOptions& options = {});

struct CoherenceMeasures {
  double orderValue = 0;  // C_alpha at the requested order
  double geometric = 0;   // C_g = 1 - exp(-A_{1/2})
  double robustness = 0;  // C_R = exp(A_inf) - 1
  double relativeEntropy = 0;
  bool pure = false;
};

CoherenceMeasures coherence_measures(const DensityOperator<>& rho, const Generator<>& basis, const RenyiOrder& order,
                                     const SigmaSearchOptions& options = {});

struct CoherenceBounds {
  double renyiLower = 0;  // log 2pi - H_alpha(phase), clipped at 0
  double renyiUpper = 0;  // H_beta of populations
  double geometricLower = 0, geometricUpper = 0;
  double robustnessLower = 0, robustnessUpper = 0;
  double robustnessComparison = 0;  // sum |rho_mm'| - 1
  double phaseDensitySup = 0;
};

// Phase density built from kets sum_m exp(i zeta_m) exp(-i m phi)|m>/sqrt(2pi); zeta empty means all zero.
CoherenceBounds coherence_bounds(const DensityOperator<>& rho, const Generator<>& basis, const std::vector<double>& zeta,
                                 const RenyiOrder& order, Index gridSize = 4096);

// Pure state proportional to sum_n v^n |n>, truncated where the tail weight drops below tailTol.
DensityOperator<> coherent_phase_state(double v, double tailTol = 1e-10, Index minDim = 2);

struct ConvergedCoherence {
  double robustness = 0;
  Index cutoff = 0;
  double lastChange = 0;
};
// Doubles the cutoff until C_R moves by less than tol.
ConvergedCoherence coherent_phase_state_robustness(double v, double tol = 1e-6);

}  // namespace renyi
