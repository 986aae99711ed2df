#include "renyi/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "renyi/optimize.hpp"
#include "renyi/quadrature.hpp"

namespace renyi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailPower = 10.0;

std::vector<int> default_labels(Index n, int first = 0) {
  std::vector<int> l(static_cast<std::size_t>(n));
  std::iota(l.begin(), l.end(), first);
  return l;
}

// log sum_i exp(t_i) over finite entries.
double log_sum_exp(const std::vector<double>& t) {
  double m = -kInf;
  for (double v : t) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double v : t) s += std::exp(v - m);
  return m + std::log(s);
}

int positive_mod(long long a, long long m) { return static_cast<int>(((a % m) + m) % m); }

}  // namespace

DiscreteDistribution::DiscreteDistribution(VectorXd p, std::vector<int> l) : probs(std::move(p)) {
  if (l.empty()) l = default_labels(probs.size());
  if (static_cast<Index>(l.size()) != probs.size()) throw ValidationError("label count differs from probability count");
  if (probs.size() == 0) throw ValidationError("empty distribution");
  if (probs.minCoeff() < -kProbSumTol) throw ValidationError("negative probability");
  probs = probs.cwiseMax(0.0);
  if (std::abs(probs.sum() - 1.0) > kProbSumTol) throw ValidationError("probabilities do not sum to 1");
  labels = std::move(l);
}

DiscreteDistribution DiscreteDistribution::uniform(int n, int firstLabel) {
  return DiscreteDistribution(VectorXd::Constant(n, 1.0 / n), default_labels(n, firstLabel));
}

DiscreteDistribution DiscreteDistribution::point_mass(int label) {
  return DiscreteDistribution(VectorXd::Ones(1), {label});
}

DiscreteDistribution DiscreteDistribution::from_weights(const VectorXd& w, std::vector<int> l) {
  const double s = w.cwiseMax(0.0).sum();
  if (!(s > 0)) throw ValidationError("weights have zero total");
  return DiscreteDistribution(VectorXd(w.cwiseMax(0.0) / s), std::move(l));
}

double DiscreteDistribution::prob_of(int label) const {
  double s = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) s += probs(static_cast<Index>(i));
  return s;
}

int DiscreteDistribution::min_label() const { return *std::min_element(labels.begin(), labels.end()); }
int DiscreteDistribution::max_label() const { return *std::max_element(labels.begin(), labels.end()); }

double DiscreteDistribution::mean() const {
  double m = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) m += labels[i] * probs(static_cast<Index>(i));
  return m;
}

CircularDensity::CircularDensity(VectorXd v, double p, double start) : periodStart(start), period(p), values(std::move(v)) {
  if (!(period > 0)) throw ValidationError("period must be positive");
  if (values.size() == 0) throw ValidationError("empty grid");
}

CircularDensity CircularDensity::uniform(Index gridSize, double period, double periodStart) {
  return CircularDensity(VectorXd::Constant(gridSize, 1.0 / period), period, periodStart);
}

CircularDensity CircularDensity::from_function(const std::function<double(double)>& f, Index gridSize, double period,
                                               double periodStart) {
  VectorXd v(gridSize);
  for (Index i = 0; i < gridSize; ++i) v(i) = f(periodStart + period * static_cast<double>(i) / static_cast<double>(gridSize));
  return CircularDensity(std::move(v), period, periodStart);
}

RealLineDensity RealLineDensity::on_grid(double a, double b, VectorXd values) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) throw ValidationError("grid needs a finite interval");
  RealLineDensity d;
  d.a = a;
  d.b = b;
  const Index n = values.size();
  const double h = (b - a) / static_cast<double>(n);
  d.nodes = VectorXd::LinSpaced(n, a + 0.5 * h, b - 0.5 * h);
  d.weights = VectorXd::Constant(n, h);
  d.values = std::move(values);
  d.uniformGrid = true;
  return d;
}

RealLineDensity RealLineDensity::from_function(const std::function<double(double)>& f, double a, double b, Index cells) {
  const double h = (b - a) / static_cast<double>(cells);
  VectorXd v(cells);
  for (Index i = 0; i < cells; ++i) v(i) = f(a + (static_cast<double>(i) + 0.5) * h);
  return on_grid(a, b, std::move(v));
}

RealLineDensity RealLineDensity::from_function_quadrature(const std::function<double(double)>& f, double a, double b,
                                                          double scale, int panels, int order) {
  if (!(b > a)) throw ValidationError("empty interval");
  const bool finiteA = std::isfinite(a), finiteB = std::isfinite(b);
  std::function<double(double)> x, dx;
  double t0, t1;
  if (finiteA && finiteB) {
    // cosine map clusters nodes near both ends
    t0 = 0;
    t1 = kPi;
    x = [=](double t) { return a + 0.5 * (b - a) * (1.0 - std::cos(t)); };
    dx = [=](double t) { return 0.5 * (b - a) * std::sin(t); };
  } else {
    // algebraic map x = scale ((1 - |t|)^-k - 1) turns power-law tails into vanishing powers of (1 - |t|)
    const double k = kTailPower;
    auto stretch = [=](double t) { return scale * (std::pow(1.0 - std::abs(t), -k) - 1.0); };
    auto dstretch = [=](double t) { return scale * k * std::pow(1.0 - std::abs(t), -k - 1.0); };
    dx = dstretch;
    if (finiteA) {
      t0 = 0;
      t1 = 1;
      x = [=](double t) { return a + stretch(t); };
    } else if (finiteB) {
      t0 = -1;
      t1 = 0;
      x = [=](double t) { return b - stretch(t); };
    } else {
      t0 = -1;
      t1 = 1;
      x = [=](double t) { return t < 0 ? -stretch(t) : stretch(t); };
    }
  }
  // uniform panels, graded geometrically toward infinite ends where the mapped integrand is a fractional power
  std::vector<double> breaks;
  const double w = (t1 - t0) / panels;
  const int grade = 16;
  breaks.push_back(t0);
  if (!finiteA)
    for (int k = grade; k >= 1; --k) breaks.push_back(t0 + w * std::pow(0.5, k));
  for (int i = 1; i < panels; ++i) breaks.push_back(t0 + w * i);
  if (!finiteB)
    for (int k = 1; k <= grade; ++k) breaks.push_back(t1 - w * std::pow(0.5, k));
  breaks.push_back(t1);
  std::sort(breaks.begin(), breaks.end());
  const QuadratureRule q = composite_gauss_legendre(breaks, order);
  RealLineDensity d;
  d.a = a;
  d.b = b;
  d.nodes.resize(q.nodes.size());
  d.weights.resize(q.nodes.size());
  d.values.resize(q.nodes.size());
  for (Index i = 0; i < q.nodes.size(); ++i) {
    d.nodes(i) = x(q.nodes(i));
    d.weights(i) = q.weights(i) * dx(q.nodes(i));
    d.values(i) = f(d.nodes(i));
  }
  return d;
}

double RealLineDensity::moment(const std::function<double(double)>& g) const {
  double s = 0;
  for (Index i = 0; i < values.size(); ++i)
    if (values(i) != 0) s += weights(i) * g(nodes(i)) * values(i);
  return s;
}

double renyi_entropy_weighted(const VectorXd& values, const VectorXd& weights, const RenyiOrder& order) {
  const VectorXd v = values.cwiseMax(0.0);
  if (order.is_zero()) {
    double s = 0;
    for (Index i = 0; i < v.size(); ++i)
      if (v(i) * weights(i) > kZeroProb) s += weights(i);
    return std::log(s);
  }
  if (order.is_infinite()) return -std::log(v.maxCoeff());
  if (order.is_one()) {
    double h = 0;
    for (Index i = 0; i < v.size(); ++i)
      if (v(i) > 0) h -= weights(i) * v(i) * std::log(v(i));
    return h;
  }
  const double a = order.value();
  const double m = v.maxCoeff();
  double s = 0;
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) > 0) s += weights(i) * std::pow(v(i) / m, a);
  return (std::log(s) + a * std::log(m)) / (1.0 - a);
}

double renyi_entropy(const VectorXd& probs, const RenyiOrder& order) {
  return renyi_entropy_weighted(probs, VectorXd::Ones(probs.size()), order);
}

double renyi_entropy(const DiscreteDistribution& d, const RenyiOrder& order) { return renyi_entropy(d.probs, order); }

double renyi_entropy(const CircularDensity& d, const RenyiOrder& order) {
  return renyi_entropy_weighted(d.values, VectorXd::Constant(d.grid_size(), d.spacing()), order);
}

double renyi_entropy(const RealLineDensity& d, const RenyiOrder& order) {
  return renyi_entropy_weighted(d.values, d.weights, order);
}

double classical_relative_entropy(const VectorXd& pIn, const VectorXd& qIn, const RenyiOrder& order) {
  if (pIn.size() != qIn.size()) throw ValidationError("mismatched grids");
  const VectorXd p = pIn.cwiseMax(0.0), q = qIn.cwiseMax(0.0);
  const Index n = p.size();
  bool outside = false;
  for (Index i = 0; i < n; ++i)
    if (p(i) > 0 && q(i) <= 0) outside = true;
  if (order.is_zero()) {
    double s = 0;
    for (Index i = 0; i < n; ++i)
      if (p(i) > 0) s += q(i);
    return s > 0 ? -std::log(s) : kInf;
  }
  if (order.is_infinite()) {
    if (outside) return kInf;
    double m = -kInf;
    for (Index i = 0; i < n; ++i)
      if (p(i) > 0) m = std::max(m, std::log(p(i)) - std::log(q(i)));
    return m;
  }
  if (order.is_one()) {
    if (outside) return kInf;
    double d = 0;
    for (Index i = 0; i < n; ++i)
      if (p(i) > 0) d += p(i) * (std::log(p(i)) - std::log(q(i)));
    return d;
  }
  const double a = order.value();
  if (a > 1 && outside) return kInf;
  std::vector<double> t;
  for (Index i = 0; i < n; ++i)
    if (p(i) > 0 && q(i) > 0) t.push_back(a * std::log(p(i)) + (1.0 - a) * std::log(q(i)));
  if (t.empty()) return kInf;
  return log_sum_exp(t) / (a - 1.0);
}

double classical_relative_entropy(const DiscreteDistribution& p, const DiscreteDistribution& q, const RenyiOrder& order) {
  if (p.labels != q.labels) throw ValidationError("mismatched grids");
  return classical_relative_entropy(p.probs, q.probs, order);
}

double classical_relative_entropy(const CircularDensity& p, const CircularDensity& q, const RenyiOrder& order) {
  if (p.grid_size() != q.grid_size() || std::abs(p.period - q.period) > 1e-12 ||
      std::abs(p.periodStart - q.periodStart) > 1e-12)
    throw ValidationError("mismatched grids");
  return classical_relative_entropy(p.masses(), q.masses(), order);
}

double sibson_mutual_information(const VectorXd& prior, const Eigen::MatrixXd& w, const RenyiOrder& order) {
  if (prior.size() != w.rows()) throw ValidationError("one conditional per prior atom required");
  const Index na = w.cols();
  if (order.is_one()) {
    const VectorXd out = w.transpose() * prior;
    double s = 0;
    for (Index j = 0; j < w.rows(); ++j)
      for (Index a = 0; a < na; ++a)
        if (prior(j) > 0 && w(j, a) > 0) s += prior(j) * w(j, a) * (std::log(w(j, a)) - std::log(out(a)));
    return s;
  }
  if (order.is_infinite()) {
    double s = 0;
    for (Index a = 0; a < na; ++a) {
      double m = 0;
      for (Index j = 0; j < w.rows(); ++j)
        if (prior(j) > 0) m = std::max(m, w(j, a));
      s += m;
    }
    return std::log(s);
  }
  if (order.is_zero()) {
    double m = 0;
    for (Index a = 0; a < na; ++a) {
      double s = 0;
      for (Index j = 0; j < w.rows(); ++j)
        if (w(j, a) > 0) s += prior(j);
      m = std::max(m, s);
    }
    return -std::log(m);
  }
  const double al = order.value();
  // log r_alpha(a) / alpha for each output, then log-sum-exp
  std::vector<double> t;
  for (Index a = 0; a < na; ++a) {
    std::vector<double> u;
    for (Index j = 0; j < w.rows(); ++j)
      if (prior(j) > 0 && w(j, a) > 0) u.push_back(std::log(prior(j)) + al * std::log(w(j, a)));
    if (!u.empty()) t.push_back(log_sum_exp(u) / al);
  }
  return al / (al - 1.0) * log_sum_exp(t);
}

double sibson_mutual_information(const DiscreteDistribution& prior, const std::vector<DiscreteDistribution>& conditionals,
                                 const RenyiOrder& order) {
  if (static_cast<Index>(conditionals.size()) != prior.size()) throw ValidationError("one conditional per prior atom required");
  std::set<int> outs;
  for (const auto& c : conditionals) outs.insert(c.labels.begin(), c.labels.end());
  std::map<int, Index> col;
  for (int l : outs) col.emplace(l, static_cast<Index>(col.size()));
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(prior.size(), static_cast<Index>(outs.size()));
  for (Index j = 0; j < prior.size(); ++j) {
    const auto& c = conditionals[static_cast<std::size_t>(j)];
    for (Index a = 0; a < c.size(); ++a) w(j, col.at(c.labels[static_cast<std::size_t>(a)])) += c.probs(a);
  }
  return sibson_mutual_information(prior.probs, w, order);
}

double sibson_objective(const VectorXd& prior, const Eigen::MatrixXd& w, const VectorXd& q, const RenyiOrder& order) {
  const Index nj = w.rows(), na = w.cols();
  VectorXd joint(nj * na), prod(nj * na);
  for (Index j = 0; j < nj; ++j)
    for (Index a = 0; a < na; ++a) {
      joint(j * na + a) = prior(j) * w(j, a);
      prod(j * na + a) = prior(j) * q(a);
    }
  return classical_relative_entropy(joint, prod, order);
}

namespace {

// q = x^2 / |x|^2 keeps point masses reachable.
VectorXd squares_to_simplex(const VectorXd& x) {
  const VectorXd s = x.array().square();
  const double t = s.sum();
  return t > 0 ? VectorXd(s / t) : VectorXd(VectorXd::Constant(x.size(), 1.0 / static_cast<double>(x.size())));
}

ConvolutionBound minimize_over_simplex(Index n, const std::function<double(const VectorXd&)>& objective,
                                       const ConvolutionSearch& search, std::vector<int> labels) {
  std::mt19937_64 rng(search.seed);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  ConvolutionBound best;
  best.value = kInf;
  VectorXd bestQ = VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  opt::NelderMeadOptions o;
  o.maxEvaluations = search.maxEvaluations;
  o.tolerance = search.tolerance;
  o.initialStep = 0.2;
  bool allConverged = true;
  for (int s = 0; s < std::max(1, search.starts); ++s) {
    VectorXd x0(n);
    for (Index i = 0; i < n; ++i) x0(i) = s == 0 ? 1.0 : u(rng);
    const opt::Result r = opt::nelder_mead([&](const VectorXd& x) { return objective(squares_to_simplex(x)); }, x0, o);
    best.evaluations += r.evaluations;
    allConverged = allConverged && r.converged;
    if (r.value < best.value) {
      best.value = r.value;
      bestQ = squares_to_simplex(r.x);
    }
  }
  best.converged = allConverged;
  best.minimizer = DiscreteDistribution(bestQ / bestQ.sum(), std::move(labels));
  return best;
}

}  // namespace

VectorXd reflected_convolution(const DiscreteDistribution& q, const DiscreteDistribution& prior, const std::vector<int>& at) {
  std::map<int, double> qm;
  for (Index i = 0; i < q.size(); ++i) qm[q.labels[static_cast<std::size_t>(i)]] += q.probs(i);
  VectorXd r = VectorXd::Zero(static_cast<Index>(at.size()));
  for (std::size_t k = 0; k < at.size(); ++k)
    for (Index j = 0; j < prior.size(); ++j) {
      const auto it = qm.find(at[k] + prior.labels[static_cast<std::size_t>(j)]);
      if (it != qm.end()) r(static_cast<Index>(k)) += it->second * prior.probs(j);
    }
  return r;
}

ConvolutionBound convolution_lower_bound(const DiscreteDistribution& perr, const DiscreteDistribution& prior,
                                         const RenyiOrder& order, const ConvolutionSearch& search) {
  const int lo = perr.min_label() + prior.min_label();
  const int hi = perr.max_label() + prior.max_label();
  const Index n = hi - lo + 1;
  // dense index tables: r(y_k) = sum_j q[y_k + x_j - lo] prior_j
  const Index ny = perr.size(), nx = prior.size();
  Eigen::MatrixXi idx(ny, nx);
  for (Index k = 0; k < ny; ++k)
    for (Index j = 0; j < nx; ++j)
      idx(k, j) = perr.labels[static_cast<std::size_t>(k)] + prior.labels[static_cast<std::size_t>(j)] - lo;
  auto objective = [&](const VectorXd& q) {
    VectorXd r = VectorXd::Zero(ny);
    for (Index k = 0; k < ny; ++k)
      for (Index j = 0; j < nx; ++j) r(k) += q(idx(k, j)) * prior.probs(j);
    return classical_relative_entropy(perr.probs, r, order);
  };
  return minimize_over_simplex(n, objective, search, default_labels(n, lo));
}

ConvolutionBound convolution_lower_bound_cyclic(const VectorXd& perr, const VectorXd& prior, const RenyiOrder& order,
                                                const ConvolutionSearch& search) {
  const Index m = perr.size();
  if (prior.size() != m) throw ValidationError("mismatched grids");
  auto objective = [&](const VectorXd& q) {
    VectorXd r = VectorXd::Zero(m);
    for (Index y = 0; y < m; ++y)
      for (Index x = 0; x < m; ++x)
        if (prior(x) > 0) r(y) += q((y + x) % m) * prior(x);
    return classical_relative_entropy(perr, r, order);
  };
  return minimize_over_simplex(m, objective, search, default_labels(m));
}

ConvolutionBound convolution_lower_bound(const CircularDensity& perr, const CircularDensity& prior,
                                         const RenyiOrder& order, const ConvolutionSearch& search) {
  if (perr.grid_size() != prior.grid_size() || std::abs(perr.period - prior.period) > 1e-12)
    throw ValidationError("mismatched grids");
  return convolution_lower_bound_cyclic(perr.masses() / perr.normalization(), prior.masses() / prior.normalization(),
                                        order, search);
}

CircularDensity wrap_mod_interval(const RealLineDensity& d, double intervalLength) {
  if (!(intervalLength > 0)) throw ValidationError("interval length must be positive");
  if (!d.uniformGrid) throw ValidationError("wrapping needs a uniform midpoint grid");
  const double h = (d.b - d.a) / static_cast<double>(d.grid_size());
  const double ratio = intervalLength / h;
  const long long m = std::llround(ratio);
  if (m < 1 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * std::max(1.0, ratio))
    throw ValidationError("grid spacing does not divide the interval length");
  VectorXd out = VectorXd::Zero(static_cast<Index>(m));
  for (Index i = 0; i < d.grid_size(); ++i) out(positive_mod(i, m)) += std::max(0.0, d.values(i));
  CircularDensity c(std::move(out), intervalLength, d.a + 0.5 * h);
  c.values /= c.normalization();
  return c;
}

DiscreteDistribution wrap_mod_interval(const DiscreteDistribution& d, int intervalLength) {
  if (intervalLength < 1) throw ValidationError("interval length must be positive");
  VectorXd out = VectorXd::Zero(intervalLength);
  for (Index i = 0; i < d.size(); ++i) out(positive_mod(d.labels[static_cast<std::size_t>(i)], intervalLength)) += d.probs(i);
  return DiscreteDistribution::from_weights(out);
}

DiscreteDistribution convolve(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  const int lo = a.min_label() + b.min_label(), hi = a.max_label() + b.max_label();
  VectorXd out = VectorXd::Zero(hi - lo + 1);
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j)
      out(a.labels[static_cast<std::size_t>(i)] + b.labels[static_cast<std::size_t>(j)] - lo) += a.probs(i) * b.probs(j);
  return DiscreteDistribution::from_weights(out, default_labels(out.size(), lo));
}

CircularDensity convolve(const CircularDensity& a, const CircularDensity& b) {
  if (a.grid_size() != b.grid_size() || std::abs(a.period - b.period) > 1e-12) throw ValidationError("mismatched grids");
  const Index n = a.grid_size();
  const double h = a.spacing();
  VectorXd out = VectorXd::Zero(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i) += a.values(j) * b.values(positive_mod(i - j, n));
  return CircularDensity(h * out, a.period, a.periodStart + b.periodStart);
}

ExtremalDensity maxent_extremal_density(const RenyiOrder& order, double sigma, ExtremalKind kind) {
  if (!order.at_least_half()) throw ValidationError("extremal densities need order >= 1/2");
  if (!(sigma > 0)) throw ValidationError("sigma must be positive");
  ExtremalDensity e;
  e.kind = kind;
  if (kind == ExtremalKind::SecondMoment) {
    if (order.is_one()) {
      e.lambda = sigma;
      e.K = 1.0 / std::sqrt(2 * kPi);
      e.density = RealLineDensity::from_function_quadrature(
          [=](double x) { return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2 * kPi)); }, -kInf, kInf,
          sigma);
      return e;
    }
    if (order.is_infinite()) {
      e.lambda = sigma * std::sqrt(3.0);
      e.K = 0.5;
      const double lam = e.lambda;
      e.density = RealLineDensity::from_function_quadrature([=](double) { return 0.5 / lam; }, -lam, lam);
      return e;
    }
    const double a = order.value();
    const double lam = sigma * std::sqrt((3 * a - 1) / std::abs(1 - a));
    e.lambda = lam;
    if (a < 1) {
      const double m = 1.0 / (1 - a);
      e.K = std::exp(std::lgamma(m) - std::lgamma(m - 0.5)) / std::sqrt(kPi);
      const double K = e.K;
      e.density = RealLineDensity::from_function_quadrature(
          [=](double x) { return K / lam * std::pow(1 + x * x / (lam * lam), -m); }, -kInf, kInf, lam);
    } else {
      const double m = a / (a - 1);
      e.K = std::exp(std::lgamma(m + 0.5) - std::lgamma(m)) / std::sqrt(kPi);
      const double K = e.K, k = 1.0 / (a - 1);
      e.density = RealLineDensity::from_function_quadrature(
          [=](double x) { return K / lam * std::pow(std::max(0.0, 1 - x * x / (lam * lam)), k); }, -lam, lam);
    }
    return e;
  }

  const double b = order.value();
  if (order.is_half()) throw ValidationError("first-moment extremal density needs order > 1/2");
  const double xbar = sigma;
  std::function<double(double)> unit;  // density on x >= 0 with mean xbar
  double upper = kInf;
  if (order.is_one()) {
    e.lambda = xbar;
    e.K = 1.0;
    unit = [=](double x) { return std::exp(-x / xbar) / xbar; };
  } else if (order.is_infinite()) {
    e.lambda = 2 * xbar;
    e.K = 1.0;
    upper = 2 * xbar;
    unit = [=](double) { return 0.5 / xbar; };
  } else {
    const double lam = xbar * (2 * b - 1) / std::abs(1 - b);
    const double K = b / std::abs(1 - b);
    e.lambda = lam;
    e.K = K;
    if (b < 1) {
      const double m = 1.0 / (1 - b);
      unit = [=](double x) { return K / lam * std::pow(1 + x / lam, -m); };
    } else {
      const double k = 1.0 / (b - 1);
      upper = lam;
      unit = [=](double x) { return K / lam * std::pow(std::max(0.0, 1 - x / lam), k); };
    }
  }
  const double scale = e.lambda;
  if (kind == ExtremalKind::FirstMomentHalfLine) {
    e.density = RealLineDensity::from_function_quadrature(unit, 0.0, upper, scale);
  } else {
    const double lo = std::isfinite(upper) ? -upper : -kInf;
    e.density = RealLineDensity::from_function_quadrature([=](double x) { return 0.5 * unit(std::abs(x)); }, lo, upper,
                                                          scale, 128);
  }
  return e;
}

double maxent_second_moment_entropy(const RenyiOrder& order, double sigma) {
  if (!order.at_least_half()) throw ValidationError("extremal densities need order >= 1/2");
  if (order.is_one()) return std::log(sigma) + 0.5 * std::log(2 * kPi * std::exp(1.0));
  if (order.is_infinite()) return std::log(2 * std::sqrt(3.0) * sigma);
  const double a = order.value();
  double logK;
  if (a < 1) {
    const double m = 1.0 / (1 - a);
    logK = std::lgamma(m) - std::lgamma(m - 0.5) - 0.5 * std::log(kPi);
  } else {
    const double m = a / (a - 1);
    logK = std::lgamma(m + 0.5) - std::lgamma(m) - 0.5 * std::log(kPi);
  }
  return std::log(sigma) + 0.5 * std::log((3 * a - 1) / std::abs(1 - a)) +
         std::log(2 * a / (3 * a - 1)) / (1 - a) - logK;
}

double maxent_first_moment_length(const RenyiOrder& beta, double mean) {
  return beta.conjugate().power_factor() * mean;
}

}  // namespace renyi
