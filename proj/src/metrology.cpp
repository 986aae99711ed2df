#include "renyi/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "renyi/optimize.hpp"
#include "renyi/random.hpp"

namespace renyi {

namespace {

using cd = std::complex<double>;

VectorXd generator_distribution(const DensityOperator<>& rho, const Generator<>& g) {
  return eigenspace_weights(rho.matrix(), g.decomposition()).cwiseMax(0.0);
}

double mean_label(const VectorXd& p, const std::vector<double>& values) {
  double m = 0;
  for (Index i = 0; i < p.size(); ++i) m += p(i) * values[static_cast<std::size_t>(i)];
  return m;
}

std::vector<double> generator_values(const Generator<>& g) {
  if (!g.is_diagonal()) throw ValidationError("estimation scenarios need a diagonal generator");
  return g.diagonal_values();
}

// Basis populations paired with the diagonal generator values.
VectorXd basis_populations(const DensityOperator<>& rho) { return rho.populations().cwiseMax(0.0); }

double wrap_angle(double x) {
  double y = std::fmod(x + kPi, 2.0 * kPi);
  if (y < 0) y += 2.0 * kPi;
  return y - kPi;
}

void fill_entropies(ErrorStatistics& s, const std::vector<RenyiOrder>& orders) {
  for (const auto& a : orders) s.renyiEntropies.emplace_back(a, s.entropy(a));
}

}  // namespace

std::vector<int> integer_labels(const Generator<>& g) {
  const auto& v = generator_values(g);
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = std::round(v[i]);
    if (std::abs(v[i] - r) > 1e-9 * std::max(1.0, std::abs(v[i])))
      throw ValidationError("generator spectrum is not integral");
    out[i] = static_cast<int>(r);
  }
  return out;
}

TrigDensity TrigDensity::from_kernel(const CMatrix& kernel, const std::vector<int>& labels) {
  if (static_cast<Index>(labels.size()) != kernel.rows()) throw ValidationError("label count differs from dimension");
  const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
  TrigDensity t;
  t.maxFrequency = *hi - *lo;
  t.coefficients = CVector::Zero(2 * t.maxFrequency + 1);
  for (Index m = 0; m < kernel.rows(); ++m)
    for (Index n = 0; n < kernel.cols(); ++n)
      t.coefficients(labels[static_cast<std::size_t>(m)] - labels[static_cast<std::size_t>(n)] + t.maxFrequency) +=
          kernel(m, n);
  return t;
}

std::complex<double> TrigDensity::coefficient(int k) const {
  if (std::abs(k) > maxFrequency) return 0.0;
  return coefficients(k + maxFrequency);
}

double TrigDensity::operator()(double theta) const {
  const cd z = std::polar(1.0, theta);
  cd zk = 1.0, acc = coefficient(0);
  for (int k = 1; k <= maxFrequency; ++k) {
    zk *= z;
    acc += coefficient(k) * zk + coefficient(-k) * std::conj(zk);
  }
  return acc.real();
}

double TrigDensity::second_moment(double chi) const {
  // integral over [-pi, pi) of u^2 exp(i k u): 2 pi^3 / 3 at k = 0, 4 pi (-1)^k / k^2 otherwise
  const cd z = std::polar(1.0, chi);
  cd zk = 1.0;
  double acc = coefficient(0).real() * 2.0 * kPi * kPi * kPi / 3.0;
  for (int k = 1; k <= maxFrequency; ++k) {
    zk *= z;
    const double ik = 4.0 * kPi * ((k % 2) ? -1.0 : 1.0) / (double(k) * k);
    acc += ik * (coefficient(k) * zk + coefficient(-k) * std::conj(zk)).real();
  }
  return acc;
}

CircularDensity TrigDensity::sample(Index gridSize, double periodStart) const {
  VectorXd v(gridSize);
  for (Index i = 0; i < gridSize; ++i)
    v(i) = (*this)(periodStart + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(gridSize));
  return CircularDensity(v.cwiseMax(0.0), 2.0 * kPi, periodStart);
}

PhaseDeviation minimum_phase_deviation(const TrigDensity& p) {
  const int n = std::max(64, 16 * (p.maxFrequency + 1));
  const double h = 2.0 * kPi / n;
  int best = 0;
  double bestV = kInf;
  for (int i = 0; i < n; ++i) {
    const double v = p.second_moment(-kPi + i * h);
    if (v < bestV) {
      bestV = v;
      best = i;
    }
  }
  const double c = -kPi + best * h;
  const auto r = opt::golden_section_minimize([&](double chi) { return p.second_moment(chi); }, c - h, c + h, 1e-12);
  PhaseDeviation out;
  out.chi = r.value < bestV ? wrap_angle(r.x) : c;
  out.deviation = std::sqrt(std::max(0.0, std::min(r.value, bestV)));
  return out;
}

EstimatorPovm EstimatorPovm::constant(Index dim, double angle) {
  EstimatorPovm p;
  p.angles = {angle};
  p.factors = {CMatrix::Identity(dim, dim)};
  return p;
}

double EstimatorPovm::completeness_defect() const {
  if (factors.empty()) return kInf;
  CMatrix s = CMatrix::Zero(dim(), dim());
  for (const auto& f : factors) s.noalias() += f * f.adjoint();
  return (s - CMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

PhasePovm PhasePovm::canonical(const Generator<>& basis, Index gridSize, std::vector<double> zeta) {
  PhasePovm p;
  p.gridSize = gridSize;
  p.labels = integer_labels(basis);
  if (zeta.empty()) zeta.assign(p.labels.size(), 0.0);
  if (zeta.size() != p.labels.size()) throw ValidationError("reference phase count differs from dimension");
  p.referencePhases = std::move(zeta);
  const auto [lo, hi] = std::minmax_element(p.labels.begin(), p.labels.end());
  if (gridSize <= *hi - *lo) throw ValidationError("phase grid too coarse for the generator spectrum");
  return p;
}

PhasePovm PhasePovm::rotated(const Generator<>& basis, Index gridSize, const CMatrix& unitary) {
  PhasePovm p = canonical(basis, gridSize);
  if (unitary.rows() != p.dim() || unitary.cols() != p.dim()) throw ValidationError("rotation dimension mismatch");
  p.rotation = unitary;
  return p;
}

CVector PhasePovm::ket(double phi) const {
  CVector v(dim());
  const double s = 1.0 / std::sqrt(2.0 * kPi);
  for (Index m = 0; m < dim(); ++m)
    v(m) = s * std::polar(1.0, referencePhases[static_cast<std::size_t>(m)] -
                                   labels[static_cast<std::size_t>(m)] * phi);
  if (rotation.size() > 0) return rotation * v;
  return v;
}

EstimatorPovm PhasePovm::estimator() const {
  EstimatorPovm e;
  const double w = std::sqrt(2.0 * kPi / static_cast<double>(gridSize));
  e.angles.reserve(static_cast<std::size_t>(gridSize));
  e.factors.reserve(static_cast<std::size_t>(gridSize));
  for (Index i = 0; i < gridSize; ++i) {
    e.angles.push_back(angle(i));
    e.factors.emplace_back(w * ket(angle(i)));
  }
  return e;
}

TrigDensity canonical_phase_trig(const DensityOperator<>& rho, const PhasePovm& povm) {
  require_same_dim<double>(rho.dim(), povm.dim());
  CMatrix r = povm.rotation.size() > 0 ? CMatrix(povm.rotation.adjoint() * rho.matrix() * povm.rotation) : rho.matrix();
  for (Index m = 0; m < r.rows(); ++m)
    for (Index n = 0; n < r.cols(); ++n)
      r(m, n) *= std::polar(1.0 / (2.0 * kPi), povm.referencePhases[static_cast<std::size_t>(n)] -
                                                  povm.referencePhases[static_cast<std::size_t>(m)]);
  return TrigDensity::from_kernel(r, povm.labels);
}

CircularDensity canonical_phase_density(const DensityOperator<>& rho, const PhasePovm& povm) {
  return canonical_phase_trig(rho, povm).sample(povm.gridSize);
}

CMatrix averaged_effect(const EstimatorPovm& povm, const std::vector<int>& labels) {
  const Index d = static_cast<Index>(labels.size());
  require_same_dim<double>(povm.dim(), d);
  CMatrix out = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < povm.size(); ++i) {
    CMatrix f = povm.factors[i];
    for (Index m = 0; m < d; ++m) f.row(m) *= std::polar(1.0, labels[static_cast<std::size_t>(m)] * povm.angles[i]);
    out.noalias() += f * f.adjoint();
  }
  return out / (2.0 * kPi);
}

CMatrix averaged_effect_map(const CMatrix& rho, const CMatrix& averagedEffect) {
  return rho.cwiseProduct(CMatrix(2.0 * kPi * averagedEffect.transpose()));
}

double ErrorStatistics::entropy(const RenyiOrder& order) const {
  return circular ? renyi_entropy(errorDensity, order) : renyi_entropy(lineDensity, order);
}

nlohmann::json to_json(const ErrorStatistics& s) {
  nlohmann::json j;
  j["circular"] = s.circular;
  j["rmse"] = s.rmse;
  j["completeness_defect"] = s.completenessDefect;
  j["interval_length"] = s.intervalLength;
  nlohmann::json h = nlohmann::json::array();
  for (const auto& [a, v] : s.renyiEntropies) h.push_back({{"order", a.str()}, {"entropy", v}});
  j["renyi_entropies"] = h;
  if (s.circular) {
    j["grid_start"] = s.errorDensity.periodStart;
    j["grid_size"] = s.errorDensity.grid_size();
    j["density"] = std::vector<double>(s.errorDensity.values.data(),
                                       s.errorDensity.values.data() + s.errorDensity.values.size());
  } else {
    j["grid_start"] = s.lineDensity.a;
    j["grid_end"] = s.lineDensity.b;
    j["density"] = std::vector<double>(s.lineDensity.values.data(),
                                       s.lineDensity.values.data() + s.lineDensity.values.size());
  }
  return j;
}

ErrorStatistics error_distribution(const EstimationScenario& scenario, const std::vector<RenyiOrder>& orders) {
  if (scenario.prior.kind != PriorKind::UniformCircle)
    throw ValidationError("error_distribution needs a uniform circle prior");
  const auto labels = integer_labels(scenario.generator);
  require_same_dim<double>(scenario.probe.dim(), static_cast<Index>(labels.size()));
  ErrorStatistics s;
  s.completenessDefect = scenario.estimator.completeness_defect();
  if (s.completenessDefect > kCompletenessTol) throw ValidationError("estimator effects do not sum to the identity");
  const CMatrix avg = averaged_effect(scenario.estimator, labels);
  const double diagDefect = (avg.diagonal().real().array() - 1.0 / (2.0 * kPi)).abs().maxCoeff();
  if (diagDefect > kCompletenessTol) throw ValidationError("averaged effect has the wrong diagonal");
  const CMatrix kernel = scenario.probe.matrix().cwiseProduct(CMatrix(avg.transpose()));
  s.exact = TrigDensity::from_kernel(kernel, labels);
  s.rmse = std::sqrt(std::max(0.0, s.exact->second_moment(0.0)));
  s.errorDensity = s.exact->sample(scenario.gridSize);
  fill_entropies(s, orders);
  return s;
}

ErrorStatistics interval_error_distribution(const EstimationScenario& scenario, const std::vector<RenyiOrder>& orders) {
  const auto& values = generator_values(scenario.generator);
  const Index d = static_cast<Index>(values.size());
  require_same_dim<double>(scenario.probe.dim(), d);
  require_same_dim<double>(scenario.estimator.dim(), d);
  bool circular = true;
  try {
    integer_labels(scenario.generator);
  } catch (const ValidationError&) {
    circular = false;
  }
  const Index M = scenario.gridSize;
  const double delta = 2.0 * kPi / static_cast<double>(M);
  const double length = scenario.prior.kind == PriorKind::UniformCircle ? 2.0 * kPi : scenario.prior.length;
  if (!(length > 0)) throw ValidationError("prior interval must have positive length");
  if (circular && length > 2.0 * kPi * (1.0 + 1e-12)) throw ValidationError("prior interval longer than the period");
  const Index K = std::max<Index>(1, static_cast<Index>(std::llround(length / delta)));
  const double center = scenario.prior.kind == PriorKind::UniformCircle ? 0.0 : scenario.prior.center;
  const Index s0 = static_cast<Index>(std::llround((center - 0.5 * (K - 1) * delta + kPi) / delta));

  ErrorStatistics out;
  out.circular = circular;
  out.intervalLength = static_cast<double>(K) * delta;
  out.completenessDefect = scenario.estimator.completeness_defect();
  if (out.completenessDefect > kCompletenessTol) throw ValidationError("estimator effects do not sum to the identity");

  CMatrix w(d, K);
  VectorXd x(K);
  for (Index k = 0; k < K; ++k) {
    x(k) = -kPi + static_cast<double>(s0 + k) * delta;
    for (Index m = 0; m < d; ++m) w(m, k) = std::polar(1.0, values[static_cast<std::size_t>(m)] * x(k));
  }

  std::map<long long, double> bins;
  VectorXd circ = VectorXd::Zero(circular ? M : 0);
  const CMatrix& rho = scenario.probe.matrix();
  for (std::size_t i = 0; i < scenario.estimator.size(); ++i) {
    const CMatrix& f = scenario.estimator.factors[i];
    VectorXd vals = VectorXd::Zero(K);
    for (Index c = 0; c < f.cols(); ++c) {
      const CMatrix u = w.array().colwise() * f.col(c).array();
      const CMatrix ru = rho * u;
      vals += u.conjugate().cwiseProduct(ru).colwise().sum().real().transpose();
    }
    const double phi = scenario.estimator.angles[i];
    for (Index k = 0; k < K; ++k) {
      const double mass = std::max(0.0, vals(k)) / static_cast<double>(K);
      if (mass == 0.0) continue;
      const double e = phi - x(k);
      if (circular) {
        long long j = std::llround((wrap_angle(e) + kPi) / delta);
        j = ((j % M) + M) % M;
        circ(static_cast<Index>(j)) += mass;
      } else {
        bins[std::llround(e / delta)] += mass;
      }
    }
  }

  double second = 0;
  if (circular) {
    for (Index j = 0; j < M; ++j) {
      const double y = -kPi + static_cast<double>(j) * delta;
      second += circ(j) * y * y;
    }
    out.errorDensity = CircularDensity(circ / delta, 2.0 * kPi, -kPi);
  } else {
    const long long lo = bins.begin()->first, hi = bins.rbegin()->first;
    VectorXd v = VectorXd::Zero(static_cast<Index>(hi - lo + 1));
    for (const auto& [j, m] : bins) {
      v(static_cast<Index>(j - lo)) = m / delta;
      second += m * (static_cast<double>(j) * delta) * (static_cast<double>(j) * delta);
    }
    out.lineDensity = RealLineDensity::on_grid((static_cast<double>(lo) - 0.5) * delta,
                                               (static_cast<double>(hi) + 0.5) * delta, v);
  }
  out.rmse = std::sqrt(second);
  fill_entropies(out, orders);
  return out;
}

double scaling_function_f(const RenyiOrder& order) {
  if (!order.at_least_half()) throw ValidationError("scaling function needs order >= 1/2");
  if (order.is_infinite()) return 0.0;
  if (order.is_one()) return std::sqrt(2.0 * kPi / std::exp(3.0));
  if (order.is_half()) return 0.5;
  const double a = std::max(order.value(), 0.5);
  double lf = std::log(2.0) - std::log(a) + 0.5 * (std::log(kPi) - std::log(3.0 * a - 1.0)) +
              std::log1p(1.5 * (a - 1.0)) / (1.0 - a);
  if (a < 1.0) {
    const double s = 1.0 / (1.0 - a);
    lf += 0.5 * std::log(1.0 - a) + std::lgamma(s) - std::lgamma(s - 0.5);
  } else {
    const double s = a / (a - 1.0);
    lf += 0.5 * std::log(a - 1.0) + std::lgamma(s + 0.5) - std::lgamma(s);
  }
  return std::exp(lf);
}

double scaled_scaling_function(const RenyiOrder& order) {
  if (order.is_infinite()) return kPi / std::sqrt(3.0);
  if (order.is_one()) return std::exp(1.0) * scaling_function_f(order);
  const double a = order.value();
  return std::exp(std::log(scaling_function_f(order)) + a / (a - 1.0) * std::log(a));
}

ScalingMaximum maximize_scaling_function() {
  const auto r = opt::golden_section_maximize([](double a) { return scaling_function_f(a); }, 0.5, 3.0, 1e-10);
  return {r.x, r.value};
}

double f_max() {
  static const double v = maximize_scaling_function().fMax;
  return v;
}

BoundCheck make_check(std::string name, double bound, double measured, double alpha, double beta) {
  BoundCheck c;
  c.name = std::move(name);
  c.bound = bound;
  c.measured = measured;
  c.slack = measured - bound;
  if (std::isinf(bound) && std::isinf(measured) && (bound > 0) == (measured > 0)) c.slack = 0;
  c.alpha = alpha;
  c.beta = beta;
  return c;
}

nlohmann::json to_json(const BoundCheck& c) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  return {{"name", c.name}, {"bound", num(c.bound)},   {"measured", num(c.measured)},
          {"slack", num(c.slack)}, {"alpha", num(c.alpha)}, {"beta", num(c.beta)}};
}

namespace {
double order_value(const RenyiOrder& a) { return a.value(); }
}  // namespace

BoundCheck error_tradeoff_check(const EstimationScenario& scenario, const ErrorStatistics& stats,
                                const RenyiOrder& alpha) {
  const RenyiOrder beta = alpha.conjugate();
  const double hg = renyi_entropy(generator_distribution(scenario.probe, scenario.generator), beta);
  return make_check("error_tradeoff", std::log(2.0 * kPi), stats.entropy(alpha) + hg, order_value(alpha),
                    order_value(beta));
}

BoundCheck error_tradeoff_check(const EstimationScenario& scenario, const RenyiOrder& alpha) {
  return error_tradeoff_check(scenario, error_distribution(scenario, {}), alpha);
}

RmseBounds rmse_lower_bounds(const DensityOperator<>& probe) {
  const VectorXd p = basis_populations(probe);
  RmseBounds b;
  const double l = std::pow(p.cwiseSqrt().sum(), 2);
  b.bound1 = kPi / (std::sqrt(3.0) * l);
  b.bound2 = p.maxCoeff();
  double mean = 0;
  for (Index n = 0; n < p.size(); ++n) mean += n * p(n);
  b.bound3 = f_max() / (mean + 0.5);
  return b;
}

std::vector<BoundCheck> rmse_bound_checks(const DensityOperator<>& probe, double rmse) {
  const auto b = rmse_lower_bounds(probe);
  return {make_check("rmse_length_half", b.bound1, rmse), make_check("rmse_max_probability", b.bound2, rmse),
          make_check("rmse_heisenberg", b.bound3, rmse)};
}

FisherComparison fisher_comparison(const DensityOperator<>& probe) {
  const VectorXd p = basis_populations(probe);
  double m = 0, m2 = 0;
  for (Index n = 0; n < p.size(); ++n) {
    m += n * p(n);
    m2 += double(n) * n * p(n);
  }
  FisherComparison f;
  f.deltaN = std::sqrt(std::max(0.0, m2 - m * m));
  f.fisherBound = f.deltaN > 1e-12 ? 1.0 / (2.0 * f.deltaN) : kInf;
  return f;
}

std::vector<BoundCheck> length_deviation_checks(const DensityOperator<>& rho, double chi, const RenyiOrder& alpha) {
  const auto g = Generator<>::number(rho.dim());
  const TrigDensity p = canonical_phase_trig(rho, PhasePovm::canonical(g, 2 * rho.dim()));
  const double dev = std::isnan(chi) ? minimum_phase_deviation(p).deviation
                                     : std::sqrt(std::max(0.0, p.second_moment(chi)));
  const VectorXd pn = basis_populations(rho);
  const RenyiOrder beta = alpha.conjugate();
  double mean = 0;
  for (Index n = 0; n < pn.size(); ++n) mean += n * pn(n);
  return {
      make_check("length_deviation", scaled_scaling_function(alpha), std::exp(renyi_entropy(pn, beta)) * dev,
                 order_value(alpha), order_value(beta)),
      make_check("length_half_deviation", kPi / std::sqrt(3.0), std::exp(renyi_entropy(pn, 0.5)) * dev),
      make_check("deviation_max_probability", pn.maxCoeff(), dev),
      make_check("mean_number_deviation", f_max(), (mean + 0.5) * dev),
  };
}

double checker_asymmetry(const DensityOperator<>& rho, const Generator<>& g, const RenyiOrder& order,
                         const SigmaSearchOptions& options) {
  if (order.is_one()) return asymmetry_alpha1(rho, g);
  if (rho.is_pure(1e-12)) return asymmetry_pure(rho, g, order).value;
  return asymmetry_numeric(rho, g, order, options).value;
}

std::vector<BoundCheck> interval_checks(const EstimationScenario& scenario, const ErrorStatistics& stats,
                                        const RenyiOrder& alpha, double asymmetry) {
  const double l = stats.intervalLength;
  const VectorXd pg = generator_distribution(scenario.probe, scenario.generator);
  const double a = order_value(alpha);
  std::vector<BoundCheck> out{
      make_check("interval_tradeoff", std::log(l), stats.entropy(alpha) + asymmetry, a),
      make_check("rmse_asymmetry", scaled_scaling_function(alpha) * l * std::exp(-asymmetry) / (2.0 * kPi),
                 stats.rmse, a),
      make_check("rmse_interval_length_half", l / (2.0 * std::sqrt(3.0) * std::exp(renyi_entropy(pg, 0.5))),
                 stats.rmse),
      make_check("rmse_interval_max_probability", l / (2.0 * kPi) * pg.maxCoeff(), stats.rmse),
  };
  const double hRho = von_neumann_entropy(scenario.probe.matrix());
  const double hDeph = von_neumann_entropy(dephase(scenario.probe, scenario.generator).matrix());
  out.push_back(make_check("rmse_interval_purity", l * std::exp(hRho - hDeph) / std::sqrt(2.0 * kPi * std::exp(1.0)),
                           stats.rmse));
  if (scenario.generator.kind() == GeneratorKind::Number) {
    const double mean = mean_label(basis_populations(scenario.probe), scenario.generator.diagonal_values());
    out.push_back(make_check("rmse_interval_heisenberg", l / (2.0 * kPi) * f_max() / (mean + 0.5), stats.rmse));
  }
  return out;
}

std::vector<BoundCheck> phase_asymmetry_checks(const DensityOperator<>& rho, const Generator<>& g,
                                               const RenyiOrder& alpha, double asymmetry, Index gridSize) {
  const auto povm = PhasePovm::canonical(g, gridSize);
  const TrigDensity p = canonical_phase_trig(rho, povm);
  const double h = renyi_entropy(p.sample(gridSize), alpha);
  const double dev = minimum_phase_deviation(p).deviation;
  const double a = order_value(alpha);
  return {make_check("phase_asymmetry_tradeoff", std::log(2.0 * kPi), h + asymmetry, a),
          make_check("phase_asymmetry_deviation", scaled_scaling_function(alpha), std::exp(asymmetry) * dev, a)};
}

BoundCheck nonlinear_generator_check(const EstimationScenario& scenario, const std::function<double(double)>& h,
                                     const RenyiOrder& alpha) {
  EstimationScenario shifted = scenario;
  shifted.generator = scenario.generator.mapped(h);
  const ErrorStatistics stats = interval_error_distribution(shifted, {});
  const RenyiOrder beta = alpha.conjugate();
  const double hg = renyi_entropy(generator_distribution(scenario.probe, scenario.generator), beta);
  return make_check("nonlinear_tradeoff", std::log(stats.intervalLength), stats.entropy(alpha) + hg,
                    order_value(alpha), order_value(beta));
}

RotationReport rotation_bounds(const DensityOperator<>& probe, const Prior& prior, const std::vector<RenyiOrder>& alphas,
                               std::optional<EstimatorPovm> estimator, Index gridSize) {
  if (probe.dim() % 2 == 0) throw ValidationError("rotation probes need odd dimension 2 jmax + 1");
  const int jmax = static_cast<int>((probe.dim() - 1) / 2);
  const auto g = Generator<>::angular_momentum_z(jmax);
  const auto povm = PhasePovm::canonical(g, gridSize);
  EstimationScenario sc{probe, g, prior, estimator ? *estimator : povm.estimator(), gridSize};
  const ErrorStatistics stats =
      prior.kind == PriorKind::UniformCircle ? error_distribution(sc, {}) : interval_error_distribution(sc, {});

  RotationReport r;
  r.rmse = stats.rmse;
  const VectorXd p = basis_populations(probe);
  for (int m = -jmax; m <= jmax; ++m) r.meanAbsJz += std::abs(m) * p(m + jmax);
  r.zeroWeight = p(jmax);
  r.deviation = minimum_phase_deviation(canonical_phase_trig(probe, povm)).deviation;
  const double l = stats.intervalLength;
  const double denom = 2.0 * r.meanAbsJz + 0.5 * r.zeroWeight;
  r.checks.push_back(make_check("rotation_heisenberg", l / (2.0 * kPi) * f_max() / denom, r.rmse));
  r.checks.push_back(make_check("rotation_heisenberg_weak", l / (2.0 * kPi) * f_max() / (2.0 * r.meanAbsJz + 0.5),
                                l / (2.0 * kPi) * f_max() / denom));
  for (const auto& a : alphas) {
    const RenyiOrder beta = a.conjugate();
    r.checks.push_back(make_check("rotation_length_upper", std::exp(renyi_entropy(p, beta)),
                                  a.power_factor() * denom, order_value(a), order_value(beta)));
  }
  r.checks.push_back(make_check("rotation_deviation_max_probability", p.maxCoeff(), r.deviation));
  return r;
}

namespace {

double conjecture_objective(const CVector& amplitudes) {
  const auto rho = DensityOperator<>::pure(amplitudes);
  const auto g = Generator<>::number(rho.dim());
  const TrigDensity p = canonical_phase_trig(rho, PhasePovm::canonical(g, 2 * rho.dim()));
  const VectorXd pn = basis_populations(rho);
  double mean = 0;
  for (Index n = 0; n < pn.size(); ++n) mean += n * pn(n);
  return (mean + 0.5) * minimum_phase_deviation(p).deviation;
}

}  // namespace

ConjectureResult conjecture_search(ProbeFamily family, Index cutoff, int budget, unsigned seed) {
  if (cutoff < 2) throw ValidationError("cutoff must be at least 2");
  ConjectureResult r;
  r.conjectured = kPi / (2.0 * std::sqrt(3.0));
  r.guaranteed = f_max();
  r.asymptoticCap = 2.0 * std::pow(2.338107410459767 / 3.0, 1.5);
  r.minimum = kInf;
  auto consider = [&](const CVector& v) {
    const double f = conjecture_objective(v);
    ++r.evaluations;
    if (f < r.minimum) {
      r.minimum = f;
      r.bestProbe = v / v.norm();
    }
    return f;
  };
  if (family == ProbeFamily::TwoTerm) {
    r.family = "two_term";
    const Index pairs = cutoff * (cutoff - 1) / 2;
    const int perPair = std::max(8, budget / static_cast<int>(std::max<Index>(1, pairs)));
    for (Index a = 0; a < cutoff; ++a)
      for (Index b = a + 1; b < cutoff; ++b) {
        auto build = [&](double t) {
          CVector v = CVector::Zero(cutoff);
          v(a) = std::cos(t);
          v(b) = std::sin(t);
          return v;
        };
        // coarse scan then golden refinement of the mixing angle
        const int scan = std::max(4, perPair / 2);
        double bestT = 0, bestF = kInf;
        for (int i = 0; i <= scan; ++i) {
          const double t = 0.5 * kPi * i / scan;
          const double f = consider(build(t));
          if (f < bestF) {
            bestF = f;
            bestT = t;
          }
        }
        const double h = 0.5 * kPi / scan;
        const auto res = opt::golden_section_minimize([&](double t) { return consider(build(t)); },
                                                      std::max(0.0, bestT - h), std::min(0.5 * kPi, bestT + h), 1e-9);
        (void)res;
      }
  } else {
    r.family = "real_amplitudes";
    Rng rng(seed);
    const int starts = 4;
    opt::NelderMeadOptions o;
    o.maxEvaluations = std::max(100, budget / starts);
    o.initialStep = 0.3;
    for (int s = 0; s < starts; ++s) {
      VectorXd x0(cutoff);
      if (s == 0) {
        x0.setZero();
        x0(0) = 1.0;
        x0(1) = 0.3;
      } else {
        for (Index i = 0; i < cutoff; ++i) x0(i) = std::abs(random_ginibre(1, 1, rng)(0, 0).real());
      }
      opt::nelder_mead(
          [&](const VectorXd& x) {
            if (x.norm() < 1e-12) return kInf;
            return consider(x.cast<cd>());
          },
          x0, o);
    }
  }
  return r;
}

nlohmann::json to_json(const ConjectureResult& r) {
  std::vector<double> amps(static_cast<std::size_t>(r.bestProbe.size()));
  for (Index i = 0; i < r.bestProbe.size(); ++i) amps[static_cast<std::size_t>(i)] = std::abs(r.bestProbe(i));
  return {{"family", r.family},
          {"minimum", r.minimum},
          {"evaluations", r.evaluations},
          {"best_probe_abs_amplitudes", amps},
          {"conjectured_bound", r.conjectured},
          {"guaranteed_bound", r.guaranteed},
          {"asymptotic_cap", r.asymptoticCap}};
}

InequalityChain inequality_chain(const SignalEnsemble& ensemble, const DensityOperator<>& probe,
                                 const EstimatorPovm& measurement, const RenyiOrder& alpha,
                                 const SigmaSearchOptions& options) {
  require_same_dim<double>(probe.dim(), measurement.dim());
  if (measurement.completeness_defect() > kCompletenessTol) throw ValidationError("measurement effects do not sum to the identity");
  const Generator<>& g = ensemble.generator;
  InequalityChain out;
  Eigen::MatrixXd channel(ensemble.size(), static_cast<Index>(measurement.size()));
  for (Index j = 0; j < ensemble.size(); ++j) {
    const CMatrix& r = ensemble.states[static_cast<std::size_t>(j)].matrix();
    for (std::size_t i = 0; i < measurement.size(); ++i) {
      const CMatrix& f = measurement.factors[i];
      channel(j, static_cast<Index>(i)) = std::max(0.0, (f.adjoint() * r * f).trace().real());
    }
  }
  out.sibson = sibson_mutual_information(ensemble.priors.probs, channel, alpha);
  if (alpha.is_one()) {
    out.asymmetry = asymmetry_alpha1(probe, g);
    out.holevo = renyi_holevo(ensemble, alpha, options).value;
  } else {
    const AsymmetryResult a = probe.is_pure(1e-12) ? asymmetry_pure(probe, g, alpha) : asymmetry_numeric(probe, g, alpha, options);
    out.asymmetry = a.value;
    out.holevo = renyi_holevo(ensemble, alpha, a.minimizer.matrix(), options).value;
  }
  out.entropyBeta = asymmetry_upper_bound(probe, g, alpha);
  const double av = alpha.value(), bv = alpha.conjugate().value();
  out.checks = {make_check("measurement_below_holevo", out.sibson, out.holevo, av),
                make_check("holevo_below_asymmetry", out.holevo, out.asymmetry, av),
                make_check("asymmetry_below_entropy", out.asymmetry, out.entropyBeta, av, bv)};
  return out;
}

}  // namespace renyi
