#include "renyi/time_energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "renyi/quadrature.hpp"

namespace renyi {

namespace {

using cd = std::complex<double>;

CMatrix reduced_level_matrix(const DensityOperator<>& rho, const EnergySpectrum& s) {
  require_same_dim<double>(rho.dim(), s.dim());
  if (s.degeneracy() == 1) return rho.matrix();
  return partial_trace_matrix(rho.matrix(), {0}, {s.level_count(), s.degeneracy()});
}

double smallest_gap(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double g = kInf;
  for (std::size_t i = 1; i < v.size(); ++i) g = std::min(g, v[i] - v[i - 1]);
  return g;
}

// Power of the density used by the entropy of the given order; order 1 returns p log p.
std::function<double(double)> entropy_integrand(const RenyiOrder& order) {
  if (order.is_one()) return [](double p) { return p > 0 ? p * std::log(p) : 0.0; };
  if (order.is_zero()) return [](double p) { return p > kZeroProb ? 1.0 : 0.0; };
  const double a = order.value();
  return [a](double p) { return p > 0 ? std::pow(p, a) : 0.0; };
}

double entropy_from_mean(const RenyiOrder& order, double mean) {
  if (order.is_one()) return -mean;
  if (order.is_infinite()) return -std::log(mean);
  return std::log(mean) / (1.0 - order.value());
}

Index default_period_points(const std::vector<double>& freqs, double period) {
  double top = 0;
  for (double w : freqs) top = std::max(top, std::abs(w));
  const double cycles = top * period / (2.0 * kPi);
  return std::max<Index>(8192, static_cast<Index>(std::ceil(64.0 * (cycles + 1.0))));
}

struct WindowPlan {
  double s0 = 0, h = 0;
  bool constant = false;
};

WindowPlan plan_windows(const std::vector<double>& frequencies, const WindowSchedule& schedule) {
  double top = 0;
  for (double w : frequencies) top = std::max(top, std::abs(w));
  WindowPlan plan;
  if (frequencies.size() < 2 || !(top > 0)) {
    plan.constant = true;
    return plan;
  }
  plan.s0 = schedule.s0 > 0 ? schedule.s0 : 100.0 / smallest_gap(frequencies);
  plan.h = std::min(kPi / top, plan.s0 / 16.0);
  return plan;
}

constexpr int kPanelOrder = 8;

// Window means (or running maxima) from a panel integrator that adds the panel [a, a + w] to acc and max.
template <class Panel>
BesicovitchMean windowed(const WindowPlan& plan, const WindowSchedule& schedule, bool supremum, Panel&& panel) {
  BesicovitchMean out;
  double acc = 0, lo = 0, runningMax = -kInf;
  for (int m = 0; m < schedule.windows; ++m) {
    const double s = std::ldexp(plan.s0, m);
    const long long panels = std::max<long long>(1, std::llround(std::ceil((s - lo) / plan.h)));
    const double w = (s - lo) / static_cast<double>(panels);
    panel(lo, w, panels, acc, runningMax);
    lo = s;
    out.windowAverages.push_back(supremum ? runningMax : acc / s);
  }
  const int n = static_cast<int>(out.windowAverages.size());
  const int tail = std::clamp(schedule.tail, 1, n);
  const auto first = out.windowAverages.end() - tail;
  const auto [mn, mx] = std::minmax_element(first, out.windowAverages.end());
  out.value = *mx;
  out.spread = *mx - *mn;
  out.windowsUsed = n;
  out.converged = out.spread <= schedule.tolerance * std::max(1.0, std::abs(out.value));
  return out;
}

BesicovitchMean constant_mean(double v) {
  BesicovitchMean out;
  out.value = v;
  out.converged = true;
  out.windowAverages = {v};
  out.windowsUsed = 1;
  return out;
}

BesicovitchMean windowed_generic(const std::function<double(double)>& f, const std::vector<double>& frequencies,
                                 const WindowSchedule& schedule) {
  const WindowPlan plan = plan_windows(frequencies, schedule);
  if (plan.constant) return constant_mean(f(0.0));
  const QuadratureRule rule = gauss_legendre(kPanelOrder);
  return windowed(plan, schedule, false, [&](double lo, double w, long long panels, double& acc, double& mx) {
    for (long long p = 0; p < panels; ++p) {
      const double mid = lo + (static_cast<double>(p) + 0.5) * w;
      for (int q = 0; q < kPanelOrder; ++q) {
        const double v = f(mid + 0.5 * w * rule.nodes(q));
        acc += 0.5 * w * rule.weights(q) * v;
        mx = std::max(mx, v);
      }
    }
  });
}

// g(p(t)) with p expanded over nonnegative frequencies; panel phases advance by recurrence.
BesicovitchMean windowed_density(const AlmostPeriodicDensity& p, const std::function<double(double)>& g,
                                 const WindowSchedule& schedule, bool supremum) {
  const auto active = p.active_frequencies();
  const WindowPlan plan = plan_windows(active, schedule);
  if (plan.constant) return constant_mean(g(std::max(0.0, p(0.0))));
  double c0 = 0;
  std::vector<double> freq;
  std::vector<cd> coef;
  for (std::size_t j = 0; j < p.frequencies.size(); ++j) {
    if (std::abs(p.coefficients[j]) <= 1e-14) continue;
    if (std::abs(p.frequencies[j]) == 0.0) {
      c0 += p.coefficients[j].real();
    } else if (p.frequencies[j] > 0) {
      freq.push_back(p.frequencies[j]);
      coef.push_back(2.0 * p.coefficients[j]);
    }
  }
  const std::size_t J = freq.size();
  const QuadratureRule rule = gauss_legendre(kPanelOrder);
  std::vector<cd> phase(J), step(J), node(J * kPanelOrder);
  return windowed(plan, schedule, supremum, [&](double lo, double w, long long panels, double& acc, double& mx) {
    for (std::size_t j = 0; j < J; ++j) {
      step[j] = std::polar(1.0, freq[j] * w);
      for (int q = 0; q < kPanelOrder; ++q)
        node[j * kPanelOrder + q] = coef[j] * std::polar(1.0, freq[j] * 0.5 * w * rule.nodes(q));
    }
    for (long long b = 0; b < panels; ++b) {
      if (b % 1024 == 0)
        for (std::size_t j = 0; j < J; ++j) phase[j] = std::polar(1.0, freq[j] * (lo + (static_cast<double>(b) + 0.5) * w));
      double vals[kPanelOrder];
      for (int q = 0; q < kPanelOrder; ++q) vals[q] = c0;
      for (std::size_t j = 0; j < J; ++j) {
        const cd ph = phase[j];
        const cd* nd = &node[j * kPanelOrder];
        for (int q = 0; q < kPanelOrder; ++q) vals[q] += (ph * nd[q]).real();
        phase[j] *= step[j];
      }
      for (int q = 0; q < kPanelOrder; ++q) {
        const double v = g(std::max(0.0, vals[q]));
        acc += 0.5 * w * rule.weights(q) * v;
        mx = std::max(mx, v);
      }
    }
  });
}

BesicovitchMean periodic_mean(const std::function<double(double)>& f, const std::vector<double>& frequencies,
                              double period, const WindowSchedule& schedule, bool supremum) {
  const Index n = schedule.periodPoints > 0 ? schedule.periodPoints : default_period_points(frequencies, period);
  double acc = 0, mx = -kInf;
  for (Index i = 0; i < n; ++i) {
    const double v = f(period * static_cast<double>(i) / static_cast<double>(n));
    acc += v;
    mx = std::max(mx, v);
  }
  BesicovitchMean out;
  out.exactPeriod = true;
  out.converged = true;
  out.windowsUsed = 1;
  out.value = supremum ? mx : acc / static_cast<double>(n);
  out.windowAverages = {out.value};
  return out;
}

// Long-time mean (or supremum) of g(p(t)).
BesicovitchMean long_time(const AlmostPeriodicDensity& p, const std::function<double(double)>& g,
                          const WindowSchedule& schedule, bool supremum) {
  if (p.period)
    return periodic_mean([&](double t) { return g(std::max(0.0, p(t))); }, p.active_frequencies(), *p.period,
                         schedule, supremum);
  return windowed_density(p, g, schedule, supremum);
}

// Complete time measurement on level labels: effects sum_d |phi,d><phi,d| on the phase grid.
EstimatorPovm block_phase_estimator(const std::vector<int>& labels, Index degeneracy, Index gridSize) {
  const Index levels = static_cast<Index>(labels.size());
  EstimatorPovm povm;
  const double s = 1.0 / std::sqrt(static_cast<double>(gridSize));
  for (Index i = 0; i < gridSize; ++i) {
    const double phi = -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(gridSize);
    CMatrix f = CMatrix::Zero(levels * degeneracy, degeneracy);
    for (Index k = 0; k < levels; ++k)
      for (Index d = 0; d < degeneracy; ++d)
        f(k * degeneracy + d, d) = std::polar(s, -labels[static_cast<std::size_t>(k)] * phi);
    povm.angles.push_back(phi);
    povm.factors.push_back(std::move(f));
  }
  return povm;
}

Generator<> quanta_generator(const EnergySpectrum& s) {
  std::vector<double> v;
  for (int n : s.quanta())
    for (Index d = 0; d < s.degeneracy(); ++d) v.push_back(static_cast<double>(n));
  return Generator<>::diagonal(v, GeneratorKind::Custom, 0.5);
}

}  // namespace

std::optional<std::pair<long long, long long>> rationalize(double x, double tol, long long maxDenominator) {
  if (!std::isfinite(x)) return std::nullopt;
  const double sign = x < 0 ? -1.0 : 1.0;
  double r = std::abs(x);
  long long h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h_{-1}, h_{-2}, k_{-1}, k_{-2}
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (a > 1e15) break;
    const long long ai = static_cast<long long>(a);
    const long long h = ai * h0 + h1, k = ai * k0 + k1;
    if (k > maxDenominator) break;
    if (std::abs(std::abs(x) - static_cast<double>(h) / static_cast<double>(k)) <= tol)
      return std::make_pair(static_cast<long long>(sign) * h, k);
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    const double frac = r - a;
    if (frac <= 0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

EnergySpectrum::EnergySpectrum(std::vector<double> levels, Index degeneracy)
    : levels_(std::move(levels)), degeneracy_(degeneracy) {
  if (levels_.empty()) throw ValidationError("energy spectrum needs at least one level");
  if (degeneracy_ < 1) throw ValidationError("degeneracy must be positive");
  for (double e : levels_)
    if (!std::isfinite(e)) throw ValidationError("energy levels must be finite");
  ground_ = *std::min_element(levels_.begin(), levels_.end());
  double scale = 0;
  for (double e : levels_) scale = std::max(scale, std::abs(e - ground_));
  if (smallest_gap(levels_) <= 1e-12 * std::max(1.0, scale))
    throw ValidationError("energy levels must be distinct; use the degeneracy factor");

  quanta_.assign(levels_.size(), 0);
  if (levels_.size() == 1) {
    periodic_ = true;
    omega_ = 1.0;
    tau_ = 2.0 * kPi;
    return;
  }
  double ref = kInf;
  for (double e : levels_)
    if (e > ground_) ref = std::min(ref, e - ground_);
  std::vector<long long> num(levels_.size()), den(levels_.size());
  long long lcm = 1;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const double r = (levels_[k] - ground_) / ref;
    const auto q = rationalize(r, kRelTol * std::max(1.0, r), kMaxDenominator);
    if (!q) return;
    num[k] = q->first;
    den[k] = q->second;
    lcm = std::lcm(lcm, den[k]);
    if (lcm > kMaxDenominator) return;
  }
  long long g = 0;
  std::vector<long long> n(levels_.size());
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    n[k] = num[k] * (lcm / den[k]);
    g = std::gcd(g, n[k]);
  }
  periodic_ = true;
  omega_ = ref * static_cast<double>(g) / static_cast<double>(lcm);
  tau_ = 2.0 * kPi / omega_;
  for (std::size_t k = 0; k < levels_.size(); ++k) quanta_[k] = static_cast<int>(n[k] / g);
}

double AlmostPeriodicDensity::operator()(double t) const {
  double v = 0;
  for (std::size_t j = 0; j < frequencies.size(); ++j) {
    const double c = std::cos(frequencies[j] * t), s = std::sin(frequencies[j] * t);
    v += coefficients[j].real() * c - coefficients[j].imag() * s;
  }
  return v;
}

std::vector<double> AlmostPeriodicDensity::active_frequencies(double tol) const {
  std::vector<double> out;
  for (std::size_t j = 0; j < frequencies.size(); ++j)
    if (std::abs(coefficients[j]) > tol) out.push_back(frequencies[j]);
  return out;
}

AlmostPeriodicDensity almost_periodic_density(const DensityOperator<>& rho, const EnergySpectrum& spectrum) {
  const CMatrix r = reduced_level_matrix(rho, spectrum);
  const auto& e = spectrum.levels();
  struct Term {
    double w;
    cd c;
  };
  std::vector<Term> terms;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b)
      terms.push_back({e[a] - e[b], r(static_cast<Index>(a), static_cast<Index>(b))});
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.w < y.w; });
  double scale = 0;
  for (const auto& t : terms) scale = std::max(scale, std::abs(t.w));
  const double tol = 1e-12 * std::max(1.0, scale);

  AlmostPeriodicDensity p;
  for (const auto& t : terms) {
    if (!p.frequencies.empty() && t.w - p.frequencies.back() <= tol) {
      p.coefficients.back() += t.c;
    } else {
      p.frequencies.push_back(t.w);
      p.coefficients.push_back(t.c);
    }
  }
  for (std::size_t j = 0; j < p.frequencies.size(); ++j) {
    const std::size_t m = p.frequencies.size() - 1 - j;
    if (std::abs(p.coefficients[j] - std::conj(p.coefficients[m])) > 1e-9)
      throw ValidationError("time density is not real: state not Hermitian in the energy basis");
    if (std::abs(p.frequencies[j]) <= tol && std::abs(p.coefficients[j] - 1.0) > 1e-9)
      throw ValidationError("time density does not average to 1");
  }
  if (spectrum.periodic()) {
    for (std::size_t j = 0; j < p.frequencies.size(); ++j)
      p.frequencies[j] = spectrum.omega() * std::round(p.frequencies[j] / spectrum.omega());
    p.period = spectrum.period();
  }
  return p;
}

BesicovitchMean besicovitch_mean(const std::function<double(double)>& f, const std::vector<double>& frequencies,
                                 std::optional<double> period, const WindowSchedule& schedule) {
  if (period) return periodic_mean(f, frequencies, *period, schedule, false);
  return windowed_generic(f, frequencies, schedule);
}

BesicovitchMean besicovitch_mean(const AlmostPeriodicDensity& p, const std::function<double(double)>& g,
                                 const WindowSchedule& schedule) {
  return long_time(p, g, schedule, false);
}

ApEntropy almost_periodic_renyi_entropy(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                        const RenyiOrder& order, const WindowSchedule& schedule) {
  const AlmostPeriodicDensity p = almost_periodic_density(rho, spectrum);
  ApEntropy out;
  if (order.is_infinite())
    out.mean = long_time(p, [](double x) { return x; }, schedule, true);
  else
    out.mean = long_time(p, entropy_integrand(order), schedule, false);
  out.value = entropy_from_mean(order, out.mean.value);
  return out;
}

CircularDensity periodic_time_density(const DensityOperator<>& rho, const EnergySpectrum& spectrum, Index gridSize) {
  if (!spectrum.periodic()) throw ValidationError("time density over one period needs a periodic spectrum");
  const AlmostPeriodicDensity p = almost_periodic_density(rho, spectrum);
  const double tau = spectrum.period();
  return CircularDensity::from_function([&](double t) { return std::max(0.0, p(t)) / tau; }, gridSize, tau, 0.0);
}

double canonical_time_deviation(const DensityOperator<>& rho, const EnergySpectrum& spectrum) {
  if (!spectrum.periodic())
    throw ValidationError("deviation about a reference time is undefined for a nonperiodic spectrum: "
                          "t^2 is not almost periodic");
  const CMatrix r = reduced_level_matrix(rho, spectrum) / (2.0 * kPi);
  const TrigDensity trig = TrigDensity::from_kernel(r, spectrum.quanta());
  return minimum_phase_deviation(trig).deviation / spectrum.omega();
}

ApTradeoffReport almost_periodic_tradeoff_check(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                                const RenyiOrder& order, const WindowSchedule& schedule,
                                                const SigmaSearchOptions& options) {
  const Generator<> g = spectrum.generator();
  ApTradeoffReport out;
  out.asymmetry = checker_asymmetry(rho, g, order, options);
  const ApEntropy h = almost_periodic_renyi_entropy(rho, spectrum, order, schedule);
  out.apEntropy = h.value;
  out.mean = h.mean;
  const double a = order.value();
  out.checks.push_back(make_check("almost_periodic_tradeoff", 0.0, out.asymmetry + h.value, a));

  const double h1 = order.is_one() ? h.value : almost_periodic_renyi_entropy(rho, spectrum, 1.0, schedule).value;
  const double hDeph = von_neumann_entropy(dephase(rho, g).matrix());
  out.checks.push_back(make_check("shannon_time_tradeoff", von_neumann_entropy(rho.matrix()), hDeph + h1, 1.0, 1.0));

  const RenyiOrder beta = order.conjugate();
  const double hb = beta == order ? h.value : almost_periodic_renyi_entropy(rho, spectrum, beta, schedule).value;
  const VectorXd levels = eigenspace_weights(rho.matrix(), g.decomposition()).cwiseMax(0.0);
  out.checks.push_back(make_check("level_time_tradeoff", 0.0, renyi_entropy(levels, order) + hb, a, beta.value()));
  return out;
}

TimeEstimationReport time_estimation_bounds(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                            double priorLength, const RenyiOrder& order, Index gridSize,
                                            const SigmaSearchOptions& options) {
  require_same_dim<double>(rho.dim(), spectrum.dim());
  if (!(priorLength > 0)) throw ValidationError("prior interval must have positive length");
  TimeEstimationReport out;
  out.asymmetry = checker_asymmetry(rho, spectrum.generator(), order, options);
  const double a = order.value();

  if (spectrum.periodic()) {
    const double w = spectrum.omega();
    if (priorLength > spectrum.period() * (1.0 + 1e-12))
      throw ValidationError("prior interval longer than the period");
    const auto& q = spectrum.quanta();
    const int span = *std::max_element(q.begin(), q.end());
    if (gridSize <= span) throw ValidationError("time grid too coarse for the spectrum");
    EstimationScenario sc{rho, quanta_generator(spectrum), Prior::interval(w * priorLength),
                          block_phase_estimator(q, spectrum.degeneracy(), gridSize), gridSize};
    const ErrorStatistics st = interval_error_distribution(sc, {order});
    out.rmse = st.rmse / w;
    out.intervalLength = st.intervalLength / w;
    out.errorEntropy = st.entropy(order) - std::log(w);
    out.heisenbergAvailable = true;
    out.checks.push_back(make_check("time_tradeoff", std::log(out.intervalLength), out.errorEntropy + out.asymmetry, a));

    double meanQuanta = 0;
    const VectorXd pop = rho.populations().cwiseMax(0.0);
    for (Index i = 0; i < pop.size(); ++i) meanQuanta += pop(i) * q[static_cast<std::size_t>(i / spectrum.degeneracy())];
    const double tau = spectrum.period();
    out.checks.push_back(make_check("time_heisenberg",
                                    out.intervalLength / tau * f_max() / (w * meanQuanta + 0.5 * w), out.rmse));

    const CircularDensity pt = periodic_time_density(rho, spectrum, std::max<Index>(gridSize, 4096));
    out.checks.push_back(
        make_check("time_energy_tradeoff", std::log(tau), out.asymmetry + renyi_entropy(pt, order), a));
    out.checks.push_back(make_check("time_energy_deviation", scaled_scaling_function(order) * tau / (2.0 * kPi),
                                    std::exp(out.asymmetry) * canonical_time_deviation(rho, spectrum), a));
    return out;
  }

  const double delta = 2.0 * kPi / static_cast<double>(gridSize);
  if (priorLength / delta > 2e5) throw ValidationError("prior interval too long for the time grid");
  std::vector<int> labels(static_cast<std::size_t>(spectrum.level_count()));
  std::iota(labels.begin(), labels.end(), 0);
  if (gridSize <= static_cast<Index>(labels.size())) throw ValidationError("time grid too coarse for the spectrum");
  EstimationScenario sc{rho, spectrum.generator(), Prior::interval(priorLength),
                        block_phase_estimator(labels, spectrum.degeneracy(), gridSize), gridSize};
  const ErrorStatistics st = interval_error_distribution(sc, {order});
  out.rmse = st.rmse;
  out.intervalLength = st.intervalLength;
  out.errorEntropy = st.entropy(order);
  out.refusal = "spectrum is not periodic: no period for the Heisenberg-type and deviation relations";
  out.checks.push_back(make_check("time_tradeoff", std::log(out.intervalLength), out.errorEntropy + out.asymmetry, a));
  return out;
}

double information_gain_lower_bound(const DensityOperator<>& rho, const EnergySpectrum& spectrum,
                                    const RenyiOrder& order, const WindowSchedule& schedule) {
  return -almost_periodic_renyi_entropy(rho, spectrum, order, schedule).value;
}

std::vector<PeriodicApproximationPoint> periodic_approximation_trend(const DensityOperator<>& rho,
                                                                     const EnergySpectrum& spectrum,
                                                                     const RenyiOrder& order,
                                                                     const std::vector<long long>& denominators,
                                                                     const WindowSchedule& schedule) {
  const double reference = almost_periodic_renyi_entropy(rho, spectrum, order, schedule).value;
  const auto& e = spectrum.levels();
  double ref = kInf;
  for (double x : e)
    if (x > spectrum.ground()) ref = std::min(ref, x - spectrum.ground());
  std::vector<PeriodicApproximationPoint> out;
  for (long long q : denominators) {
    if (q < 1) throw ValidationError("denominators must be positive");
    std::vector<double> approx;
    for (double x : e)
      approx.push_back(spectrum.ground() +
                       ref * std::round((x - spectrum.ground()) / ref * static_cast<double>(q)) / static_cast<double>(q));
    try {
      const EnergySpectrum s(approx, spectrum.degeneracy());
      if (!s.periodic()) continue;
      const double h = almost_periodic_renyi_entropy(rho, s, order).value;
      out.push_back({q, h, std::abs(h - reference)});
    } catch (const ValidationError&) {
      // rounding merged two levels
    }
  }
  return out;
}

nlohmann::json to_json(const BesicovitchMean& m) {
  return {{"value", m.value},
          {"spread", m.spread},
          {"windows_used", m.windowsUsed},
          {"exact_period", m.exactPeriod},
          {"converged", m.converged}};
}

}  // namespace renyi
