#include "renyi/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "renyi/optimize.hpp"
#include "renyi/random.hpp"

namespace renyi {

namespace {

// Weight of I/d mixed into every trial state so negative powers stay finite.
constexpr double kMixing = 1e-9;
constexpr double kContainTol = 1e-10;
const std::vector<double> kContinuationOrders = {64.0, 512.0, 4096.0};

struct Eig {
  VectorXd w;
  CMatrix v;
};

Eig eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix from_eig(const CMatrix& v, const VectorXd& w) { return v * w.cast<std::complex<double>>().asDiagonal() * v.adjoint(); }

// log sum z_i^a over positive z_i; -inf when none are positive.
double log_power_sum(const VectorXd& z, double a) {
  const double top = z.maxCoeff();
  if (!(top > 0)) return -kInf;
  double s = 0;
  for (Index i = 0; i < z.size(); ++i)
    if (z(i) > 0) s += std::pow(z(i) / top, a);
  return a * std::log(top) + std::log(s);
}

template <class F, class DF>
Eigen::MatrixXd divided_differences(const VectorXd& s, F f, DF df) {
  const Index n = s.size();
  Eigen::MatrixXd out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double gap = s(i) - s(j);
      if (std::abs(gap) <= 1e-10 * std::max(std::abs(s(i)), std::abs(s(j))))
        out(i, j) = df(0.5 * (s(i) + s(j)));
      else
        out(i, j) = (f(s(i)) - f(s(j))) / gap;
    }
  return out;
}

CMatrix schur(const Eigen::MatrixXd& gamma, const CMatrix& a) {
  return (gamma.cast<std::complex<double>>().array() * a.array()).matrix();
}

void require_order_at_least_half(const RenyiOrder& order) {
  if (!order.at_least_half()) throw ValidationError("order must be at least 1/2");
}

// f(sigma) = (1/(a-1)) log sum_j p_j tr[(sigma^g/2 rho_j sigma^g/2)^a] with its limits at a = 1 and infinity.
class EnsembleDivergence {
 public:
  EnsembleDivergence(const std::vector<double>& weights, const std::vector<CMatrix>& states, double order)
      : a_(order), one_(std::abs(order - 1.0) <= RenyiOrder::kSnap), inf_(std::isinf(order)) {
    const Index d = states.front().rows();
    mean_ = CMatrix::Zero(d, d);
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (weights[j] <= 0) continue;
      const Eig e = eig(states[j]);
      std::vector<Index> keep;
      for (Index i = 0; i < e.w.size(); ++i)
        if (e.w(i) > kSupportTol) keep.push_back(i);
      Part p;
      p.weight = weights[j];
      p.factor.resize(d, static_cast<Index>(keep.size()));
      for (std::size_t c = 0; c < keep.size(); ++c)
        p.factor.col(static_cast<Index>(c)) = e.v.col(keep[c]) * std::sqrt(e.w(keep[c]));
      parts_.push_back(std::move(p));
      mean_ += weights[j] * states[j];
      constant_ -= weights[j] * von_neumann_entropy(states[j]);
    }
  }

  bool smooth() const { return !inf_ || (parts_.size() == 1 && parts_.front().factor.cols() == 1); }

  double operator()(const CMatrix& sigma, CMatrix* grad) const {
    const Eig se = eig(sigma);
    if (!(se.w.minCoeff() > 0)) return kInf;
    if (one_) return relative_entropy(se, grad);
    if (inf_) return max_relative_entropy(se, grad);
    return sandwiched(se, grad);
  }

 private:
  struct Part {
    double weight = 0;
    CMatrix factor;  // eigenvectors scaled by sqrt of eigenvalues, support only
  };

  double relative_entropy(const Eig& se, CMatrix* grad) const {
    const VectorXd logs = se.w.array().log();
    const double f = constant_ - (mean_ * from_eig(se.v, logs)).trace().real();
    if (grad) {
      const auto gamma = divided_differences(
          se.w, [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; });
      *grad = -se.v * schur(gamma, se.v.adjoint() * mean_ * se.v) * se.v.adjoint();
    }
    return f;
  }

  double max_relative_entropy(const Eig& se, CMatrix* grad) const {
    const CMatrix inv = from_eig(se.v, se.w.cwiseInverse());
    double best = -kInf;
    CVector arg;
    for (const Part& p : parts_) {
      const CMatrix z = p.factor.adjoint() * inv * p.factor;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(z));
      const Index top = z.rows() - 1;
      const double l = std::log(es.eigenvalues()(top));
      if (l > best) {
        best = l;
        arg = inv * p.factor * es.eigenvectors().col(top);
      }
    }
    if (grad) *grad = -(arg * arg.adjoint()) / std::exp(best);
    return best;
  }

  double sandwiched(const Eig& se, CMatrix* grad) const {
    const double g = (1.0 - a_) / a_;
    const CMatrix sg = from_eig(se.v, se.w.array().pow(g).matrix());
    std::vector<double> logq(parts_.size());
    std::vector<Eig> zs(parts_.size());
    double top = -kInf;
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      zs[j] = eig(CMatrix(parts_[j].factor.adjoint() * sg * parts_[j].factor));
      logq[j] = log_power_sum(zs[j].w, a_);
      top = std::max(top, std::log(parts_[j].weight) + logq[j]);
    }
    if (!std::isfinite(top)) return a_ < 1 ? kInf : -kInf;
    double s = 0;
    for (std::size_t j = 0; j < parts_.size(); ++j) s += std::exp(std::log(parts_[j].weight) + logq[j] - top);
    const double l = top + std::log(s);
    if (grad) {
      const Index d = sg.rows();
      CMatrix w = CMatrix::Zero(d, d);
      for (std::size_t j = 0; j < parts_.size(); ++j) {
        const double omega = std::exp(std::log(parts_[j].weight) + logq[j] - l);
        VectorXd scaled(zs[j].w.size());
        for (Index i = 0; i < scaled.size(); ++i)
          scaled(i) = zs[j].w(i) > 0 ? std::exp((a_ - 1) * std::log(zs[j].w(i)) - logq[j]) : 0.0;
        const CMatrix fy = parts_[j].factor * zs[j].v;
        w += omega * fy * scaled.cast<std::complex<double>>().asDiagonal() * fy.adjoint();
      }
      const auto gamma = divided_differences(
          se.w, [g](double x) { return std::pow(x, g); }, [g](double x) { return g * std::pow(x, g - 1); });
      *grad = (a_ / (a_ - 1)) * se.v * schur(gamma, se.v.adjoint() * w * se.v) * se.v.adjoint();
    }
    return l / (a_ - 1);
  }

  double a_;
  bool one_, inf_;
  std::vector<Part> parts_;
  CMatrix mean_;
  double constant_ = 0;
};

// sigma = (1 - eps) sum_k B_k C_k C_k^dag B_k^dag / t + eps I/d. Rank-one blocks use one real parameter.
class BlockParameterization {
 public:
  explicit BlockParameterization(std::vector<CMatrix> bases) : bases_(std::move(bases)) {
    d_ = bases_.front().rows();
    Index off = 0;
    for (const CMatrix& b : bases_) {
      offsets_.push_back(off);
      off += b.cols() == 1 ? 1 : 2 * b.cols() * b.cols();
    }
    size_ = off;
  }

  Index size() const { return size_; }

  CMatrix state(const VectorXd& x, CMatrix* unmixed = nullptr) const {
    CMatrix m = CMatrix::Zero(d_, d_);
    for (std::size_t k = 0; k < bases_.size(); ++k) {
      const CMatrix c = block(x, k);
      m += bases_[k] * (c * c.adjoint()) * bases_[k].adjoint();
    }
    const double t = m.trace().real();
    if (!(t > 0)) return CMatrix::Zero(d_, d_);
    m /= t;
    if (unmixed) *unmixed = m;
    return (1 - kMixing) * m + CMatrix::Identity(d_, d_) * (kMixing / static_cast<double>(d_));
  }

  VectorXd pullback(const VectorXd& x, const CMatrix& grad) const {
    CMatrix sigma;
    state(x, &sigma);
    double t = 0;
    for (std::size_t k = 0; k < bases_.size(); ++k) t += block(x, k).squaredNorm();
    const std::complex<double> shift = (grad * sigma).trace();
    const CMatrix h = (1 - kMixing) * (grad - shift * CMatrix::Identity(d_, d_)) / t;
    VectorXd out(size_);
    for (std::size_t k = 0; k < bases_.size(); ++k) {
      const CMatrix dk = bases_[k].adjoint() * h * bases_[k] * block(x, k);
      const Index r = bases_[k].cols(), o = offsets_[k];
      if (r == 1) {
        out(o) = 2 * dk(0, 0).real();
        continue;
      }
      for (Index j = 0; j < r; ++j)
        for (Index i = 0; i < r; ++i) {
          out(o + j * r + i) = 2 * dk(i, j).real();
          out(o + r * r + j * r + i) = 2 * dk(i, j).imag();
        }
    }
    return out;
  }

  // Square-root factors of the blocks of sigma, lifted slightly so no direction starts frozen at zero.
  VectorXd encode(const CMatrix& sigma) const {
    VectorXd x(size_);
    const double lift = 1e-6 / static_cast<double>(d_);
    for (std::size_t k = 0; k < bases_.size(); ++k) {
      const Index r = bases_[k].cols(), o = offsets_[k];
      CMatrix s = bases_[k].adjoint() * sigma * bases_[k];
      s += lift * CMatrix::Identity(r, r);
      if (r == 1) {
        x(o) = std::sqrt(std::max(0.0, s(0, 0).real()));
        continue;
      }
      const CMatrix c = support_function(CMatrix(hermitian_part(s)), [](double v) { return std::sqrt(v); });
      for (Index j = 0; j < r; ++j)
        for (Index i = 0; i < r; ++i) {
          x(o + j * r + i) = c(i, j).real();
          x(o + r * r + j * r + i) = c(i, j).imag();
        }
    }
    return x;
  }

  CMatrix project(const CMatrix& m) const {
    CMatrix out = CMatrix::Zero(d_, d_);
    for (const CMatrix& b : bases_) out += b * (b.adjoint() * m * b) * b.adjoint();
    return out;
  }

 private:
  CMatrix block(const VectorXd& x, std::size_t k) const {
    const Index r = bases_[k].cols(), o = offsets_[k];
    CMatrix c(r, r);
    if (r == 1) {
      c(0, 0) = x(o);
      return c;
    }
    for (Index j = 0; j < r; ++j)
      for (Index i = 0; i < r; ++i) c(i, j) = {x(o + j * r + i), x(o + r * r + j * r + i)};
    return c;
  }

  std::vector<CMatrix> bases_;
  std::vector<Index> offsets_;
  Index d_ = 0, size_ = 0;
};

struct SearchOutcome {
  CMatrix sigma;
  double value = kInf;
  OptimizerDiagnostics diagnostics;
};

struct Descent {
  VectorXd x;
  double value = kInf;
  int iterations = 0, evaluations = 0;
  bool converged = false;
};

Descent descend(const EnsembleDivergence& f, const BlockParameterization& par, const VectorXd& x0,
                const SigmaSearchOptions& options) {
  opt::LbfgsOptions lo;
  lo.maxIterations = options.maxIterations;
  auto run = [&](const EnsembleDivergence& obj, const VectorXd& start) {
    return opt::lbfgs(
        [&](const VectorXd& x, VectorXd& g) {
          CMatrix grad;
          const double v = obj(par.state(x), &grad);
          if (std::isfinite(v)) g = par.pullback(x, grad);
          return v;
        },
        start, lo);
  };
  opt::Result r = run(f, x0);
  Descent out{r.x, r.value, r.iterations, r.evaluations, r.converged};
  return out;
}

// Minimizes f over the image of par from each start; infinite orders on nonsmooth objectives go through a
// continuation in the order followed by a simplex polish.
SearchOutcome search(const std::vector<double>& weights, const std::vector<CMatrix>& states, const RenyiOrder& order,
                     const BlockParameterization& par, const std::vector<std::pair<std::string, CMatrix>>& starts,
                     const SigmaSearchOptions& options) {
  const double a = order.value();
  const EnsembleDivergence f(weights, states, a);
  const bool continuation = !f.smooth();
  std::vector<EnsembleDivergence> ladder;
  if (continuation)
    for (double b : kContinuationOrders) ladder.emplace_back(weights, states, b);

  SearchOutcome out;
  VectorXd bestX;
  for (const auto& [label, sigma0] : starts) {
    VectorXd x = par.encode(sigma0);
    StartRecord rec;
    rec.label = label;
    const double initial = f(par.state(x), nullptr);
    if (continuation) {
      for (const auto& g : ladder) {
        const Descent d = descend(g, par, x, options);
        x = d.x;
        rec.iterations += d.iterations;
        rec.evaluations += d.evaluations;
      }
    }
    Descent d = descend(f, par, x, options);
    rec.iterations += d.iterations;
    rec.evaluations += d.evaluations;
    rec.converged = d.converged;
    x = d.x;
    double v = d.value;
    if (!(v <= initial)) {
      x = par.encode(sigma0);
      v = initial;
    }
    rec.value = v;
    out.diagnostics.starts.push_back(rec);
    if (v < out.value) {
      out.value = v;
      bestX = x;
      out.diagnostics.bestStart = out.diagnostics.starts.size() - 1;
      out.diagnostics.converged = rec.converged;
    }
    if (out.value <= 1e-14) break;
  }

  if (continuation && out.value > 1e-14) {
    opt::NelderMeadOptions no;
    no.initialStep = 0.05;
    no.maxEvaluations = options.polishEvaluations;
    no.tolerance = 1e-12;
    const opt::Result p = opt::nelder_mead([&](const VectorXd& x) { return f(par.state(x), nullptr); }, bestX, no);
    StartRecord rec;
    rec.label = "simplex polish";
    rec.value = std::min(p.value, out.value);
    rec.iterations = p.iterations;
    rec.evaluations = p.evaluations;
    rec.converged = p.converged;
    out.diagnostics.starts.push_back(rec);
    if (p.value < out.value) {
      out.value = p.value;
      bestX = p.x;
      out.diagnostics.bestStart = out.diagnostics.starts.size() - 1;
    }
    out.diagnostics.converged = out.diagnostics.converged || p.converged;
  }
  out.sigma = par.state(bestX);
  out.value = std::max(out.value, 0.0);
  return out;
}

CMatrix normalized(const CMatrix& m) { return m / m.trace().real(); }

void add_random_starts(std::vector<std::pair<std::string, CMatrix>>& starts, int total, unsigned seed, Index d,
                       const BlockParameterization& par) {
  Rng rng(seed);
  for (int i = 1; static_cast<int>(starts.size()) < total; ++i) {
    const CMatrix g = random_ginibre(d, d, rng);
    starts.emplace_back("random " + std::to_string(i), normalized(par.project(g * g.adjoint())));
  }
}

// Matrix elements in the generator's eigenbasis, ascending eigenvalue order; requires rank-one eigenspaces.
CMatrix in_basis(const CMatrix& rho, const Generator<>& basis) {
  const auto& sd = basis.decomposition();
  if (!sd.nondegenerate()) throw ValidationError("coherence requires a nondegenerate basis generator");
  require_same_dim<double>(rho.rows(), sd.dim());
  const Index d = rho.rows();
  CMatrix b(d, d);
  for (std::size_t k = 0; k < sd.size(); ++k) b.col(static_cast<Index>(k)) = sd.bases[k].col(0);
  return b.adjoint() * rho * b;
}

// Integer labels m for the phase kets: the eigenvalues when all are integers, otherwise positions.
std::vector<long> basis_integers(const Generator<>& basis) {
  const auto& ev = basis.decomposition().eigenvalues;
  std::vector<long> m(ev.size());
  bool integral = true;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    m[k] = std::lround(ev[k]);
    integral = integral && std::abs(ev[k] - static_cast<double>(m[k])) < 1e-9;
  }
  if (!integral)
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = static_cast<long>(k);
  return m;
}

}  // namespace

double sandwiched_relative_entropy(const CMatrix& rho, const CMatrix& sigma, const RenyiOrder& order) {
  require_hermitian(rho);
  require_hermitian(sigma);
  require_same_dim<double>(rho.rows(), sigma.rows());
  if (order.is_zero()) throw ValidationError("sandwiched divergence is undefined at order 0");
  const Eig se = eig(sigma);
  double outside = 0;
  VectorXd wSupport = se.w;
  for (Index i = 0; i < se.w.size(); ++i) {
    if (se.w(i) > kSupportTol) continue;
    outside += (se.v.col(i).adjoint() * rho * se.v.col(i))(0, 0).real();
    wSupport(i) = 0;
  }
  const bool contained = outside <= kContainTol;
  auto power = [&](double e) {
    VectorXd p(wSupport.size());
    for (Index i = 0; i < p.size(); ++i) p(i) = wSupport(i) > 0 ? std::pow(wSupport(i), e) : 0.0;
    return from_eig(se.v, p);
  };

  if (order.is_one()) {
    if (!contained) return kInf;
    VectorXd logs(wSupport.size());
    for (Index i = 0; i < logs.size(); ++i) logs(i) = wSupport(i) > 0 ? std::log(wSupport(i)) : 0.0;
    return std::max(0.0, -von_neumann_entropy(rho) - (rho * from_eig(se.v, logs)).trace().real());
  }
  if (order.is_infinite()) {
    if (!contained) return kInf;
    const CMatrix h = power(-0.5);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(CMatrix(h * rho * h)), Eigen::EigenvaluesOnly);
    return std::log(es.eigenvalues().maxCoeff());
  }
  const double a = order.value();
  if (a > 1 && !contained) return kInf;
  // rho^{1/2} sigma^g rho^{1/2} restricted to supp(rho) shares the nonzero spectrum without round-off zeros.
  const Eig re = eig(rho);
  std::vector<Index> keep;
  for (Index i = 0; i < re.w.size(); ++i)
    if (re.w(i) > kSupportTol) keep.push_back(i);
  CMatrix f(rho.rows(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) f.col(static_cast<Index>(c)) = re.v.col(keep[c]) * std::sqrt(re.w(keep[c]));
  const CMatrix z = f.adjoint() * power((1 - a) / a) * f;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(z), Eigen::EigenvaluesOnly);
  const double logq = log_power_sum(es.eigenvalues(), a);
  if (!std::isfinite(logq)) return kInf;
  return logq / (a - 1);
}

double sandwiched_relative_entropy(const DensityOperator<>& rho, const DensityOperator<>& sigma,
                                   const RenyiOrder& order) {
  return sandwiched_relative_entropy(rho.matrix(), sigma.matrix(), order);
}

CheckedDivergence sandwiched_relative_entropy_checked(const DensityOperator<>& rho, const DensityOperator<>& sigma,
                                                      const RenyiOrder& order) {
  return {sandwiched_relative_entropy(rho, sigma, order), !order.at_least_half()};
}

nlohmann::json to_json(const AsymmetryResult& r) {
  nlohmann::json starts = nlohmann::json::array();
  for (const auto& s : r.diagnostics.starts)
    starts.push_back({{"start", s.label},
                      {"value", s.value},
                      {"iterations", s.iterations},
                      {"evaluations", s.evaluations},
                      {"converged", s.converged}});
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  const CMatrix& m = r.minimizer.matrix();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  nlohmann::json order = r.order.is_infinite() ? nlohmann::json("inf") : nlohmann::json(r.order.value());
  return {{"value", r.value},
          {"order", order},
          {"method", r.method == AsymmetryMethod::PureDuality ? "pure-duality" : "numeric-infimum"},
          {"minimizer", {{"re", re}, {"im", im}}},
          {"converged", r.diagnostics.converged},
          {"bestStart", r.diagnostics.bestStart},
          {"starts", starts}};
}

DensityOperator<> pure_state_optimal_commuting_state(const DensityOperator<>& psi, const Generator<>& g,
                                                     const RenyiOrder& order) {
  require_order_at_least_half(order);
  if (!psi.is_pure()) throw ValidationError("state is not pure");
  const auto& sd = g.decomposition();
  const VectorXd p = eigenspace_weights(psi.matrix(), sd);
  const RenyiOrder beta = order.conjugate();
  VectorXd w = VectorXd::Zero(p.size());
  if (beta.is_infinite()) {
    Index k;
    p.maxCoeff(&k);
    w(k) = 1;
  } else {
    for (Index k = 0; k < p.size(); ++k)
      if (p(k) > kZeroProb) w(k) = std::pow(p(k), beta.value());
  }
  w /= w.sum();
  CMatrix sigma = CMatrix::Zero(psi.dim(), psi.dim());
  for (std::size_t k = 0; k < sd.size(); ++k) {
    const Index i = static_cast<Index>(k);
    if (w(i) > 0) sigma += (w(i) / p(i)) * sd.projectors[k] * psi.matrix() * sd.projectors[k];
  }
  return DensityOperator<>(CMatrix(normalized(hermitian_part(sigma))));
}

AsymmetryResult asymmetry_pure(const DensityOperator<>& psi, const Generator<>& g, const RenyiOrder& order) {
  require_order_at_least_half(order);
  require_same_dim<double>(psi.dim(), g.dim());
  if (!psi.is_pure()) throw ValidationError("asymmetry by duality requires a pure state");
  AsymmetryResult r;
  r.value = renyi_entropy(eigenspace_weights(psi.matrix(), g.decomposition()), order.conjugate());
  r.method = AsymmetryMethod::PureDuality;
  r.minimizer = pure_state_optimal_commuting_state(psi, g, order);
  r.order = order;
  r.diagnostics.starts.push_back({"closed form", r.value, 0, 0, true});
  r.diagnostics.converged = true;
  return r;
}

AsymmetryResult asymmetry_numeric(const DensityOperator<>& rho, const Generator<>& g, const RenyiOrder& order,
                                  const SigmaSearchOptions& options) {
  require_order_at_least_half(order);
  require_same_dim<double>(rho.dim(), g.dim());
  const auto& sd = g.decomposition();
  const Index d = rho.dim();
  const BlockParameterization par(sd.bases);

  std::vector<std::pair<std::string, CMatrix>> starts;
  starts.emplace_back("dephased", dephase_matrix(rho.matrix(), sd));
  starts.emplace_back("maximally mixed", CMatrix(CMatrix::Identity(d, d) / static_cast<double>(d)));
  if (order.is_infinite() && !rho.is_pure() && sd.nondegenerate()) {
    // diag(sum_m' |rho_mm'|) certifies the comparison bound on the robustness.
    CMatrix b(d, d);
    for (std::size_t k = 0; k < sd.size(); ++k) b.col(static_cast<Index>(k)) = sd.bases[k].col(0);
    const CMatrix r = b.adjoint() * rho.matrix() * b;
    const VectorXd rows = r.cwiseAbs().rowwise().sum();
    starts.emplace_back("row sums", normalized(b * rows.cast<std::complex<double>>().asDiagonal() * b.adjoint()));
  }
  for (const auto& [label, s] : options.extraStarts) {
    require_same_dim<double>(s.rows(), d);
    starts.emplace_back(label, normalized(par.project(s)));
  }
  add_random_starts(starts, std::max(options.starts, static_cast<int>(starts.size())), options.seed, d, par);

  const SearchOutcome s = search({1.0}, {rho.matrix()}, order, par, starts, options);
  AsymmetryResult r;
  r.value = s.value;
  r.method = AsymmetryMethod::NumericInfimum;
  r.minimizer = DensityOperator<>(s.sigma);
  r.order = order;
  r.diagnostics = s.diagnostics;
  return r;
}

double asymmetry_alpha1(const DensityOperator<>& rho, const Generator<>& g) {
  require_same_dim<double>(rho.dim(), g.dim());
  return std::max(0.0, von_neumann_entropy(dephase_matrix(rho.matrix(), g.decomposition())) - von_neumann_entropy(rho));
}

double asymmetry_upper_bound(const DensityOperator<>& rho, const Generator<>& g, const RenyiOrder& order) {
  require_order_at_least_half(order);
  return renyi_entropy(eigenspace_weights(rho.matrix(), g.decomposition()), order.conjugate());
}

SignalEnsemble SignalEnsemble::from_probe(const DensityOperator<>& probe, const Generator<>& g,
                                          const std::vector<double>& x, const VectorXd& priorWeights) {
  if (x.empty() || static_cast<Index>(x.size()) != priorWeights.size())
    throw ValidationError("displacements and prior weights differ in length");
  SignalEnsemble e;
  e.displacements = x;
  e.priors = DiscreteDistribution::from_weights(priorWeights);
  for (double xi : x) e.states.push_back(displace(probe, g, xi));
  e.generator = g;
  e.fromProbe = true;
  return e;
}

SignalEnsemble SignalEnsemble::uniform_partition(const DensityOperator<>& probe, const Generator<>& g, double a,
                                                 double b, int cells) {
  if (!(b > a) || cells < 1) throw ValidationError("partition needs b > a and at least one cell");
  require_same_dim<double>(probe.dim(), g.dim());
  const auto& sd = g.decomposition();
  const double w = (b - a) / cells;
  SignalEnsemble e;
  e.generator = g;
  e.priors = DiscreteDistribution::uniform(cells);
  for (int j = 0; j < cells; ++j) {
    const double c = a + (j + 0.5) * w;
    CMatrix m = CMatrix::Zero(probe.dim(), probe.dim());
    for (std::size_t k = 0; k < sd.size(); ++k)
      for (std::size_t l = 0; l < sd.size(); ++l) {
        const double gap = sd.eigenvalues[k] - sd.eigenvalues[l];
        const double y = 0.5 * gap * w;
        const double sinc = std::abs(y) < 1e-12 ? 1.0 : std::sin(y) / y;
        m += std::polar(sinc, -c * gap) * sd.projectors[k] * probe.matrix() * sd.projectors[l];
      }
    e.displacements.push_back(c);
    e.states.emplace_back(CMatrix(hermitian_part(m)));
  }
  return e;
}

CMatrix SignalEnsemble::average_state() const {
  CMatrix m = CMatrix::Zero(states.front().dim(), states.front().dim());
  for (std::size_t j = 0; j < states.size(); ++j) m += priors.probs(static_cast<Index>(j)) * states[j].matrix();
  return m;
}

namespace {

HolevoResult holevo_impl(const SignalEnsemble& ensemble, const RenyiOrder& order, const CMatrix* warm,
                         const SigmaSearchOptions& options) {
  require_order_at_least_half(order);
  if (ensemble.states.empty()) throw ValidationError("empty ensemble");
  const Index d = ensemble.states.front().dim();
  std::vector<double> weights;
  std::vector<CMatrix> states;
  for (std::size_t j = 0; j < ensemble.states.size(); ++j) {
    weights.push_back(ensemble.priors.probs(static_cast<Index>(j)));
    states.push_back(ensemble.states[j].matrix());
  }
  const CMatrix mean = ensemble.average_state();
  HolevoResult r;
  if (order.is_one()) {
    double h = von_neumann_entropy(mean);
    for (std::size_t j = 0; j < states.size(); ++j) h -= weights[j] * von_neumann_entropy(states[j]);
    r.value = std::max(0.0, h);
    r.minimizer = DensityOperator<>(CMatrix(hermitian_part(mean)));
    r.diagnostics.starts.push_back({"average state", r.value, 0, 0, true});
    r.diagnostics.converged = true;
    return r;
  }
  const BlockParameterization par({CMatrix(CMatrix::Identity(d, d))});
  std::vector<std::pair<std::string, CMatrix>> starts;
  if (warm) starts.emplace_back("warm start", normalized(*warm));
  starts.emplace_back("average state", mean);
  starts.emplace_back("maximally mixed", CMatrix(CMatrix::Identity(d, d) / static_cast<double>(d)));
  for (const auto& [label, s] : options.extraStarts) starts.emplace_back(label, normalized(s));
  add_random_starts(starts, std::max(options.starts, static_cast<int>(starts.size())), options.seed, d, par);
  const SearchOutcome s = search(weights, states, order, par, starts, options);
  r.value = s.value;
  r.minimizer = DensityOperator<>(s.sigma);
  r.diagnostics = s.diagnostics;
  return r;
}

}  // namespace

HolevoResult renyi_holevo(const SignalEnsemble& ensemble, const RenyiOrder& order, const SigmaSearchOptions& options) {
  return holevo_impl(ensemble, order, nullptr, options);
}

HolevoResult renyi_holevo(const SignalEnsemble& ensemble, const RenyiOrder& order, const CMatrix& warmStart,
                          const SigmaSearchOptions& options) {
  return holevo_impl(ensemble, order, &warmStart, options);
}

std::vector<UniformEnsemblePoint> uniform_ensemble_asymmetry_approximation(const DensityOperator<>& rho,
                                                                           const Generator<>& g,
                                                                           const RenyiOrder& order,
                                                                           const std::vector<double>& rValues,
                                                                           double cellWidth, int maxCells,
                                                                           const SigmaSearchOptions& options) {
  require_order_at_least_half(order);
  if (!(cellWidth > 0) || maxCells < 1) throw ValidationError("cell width and cell cap must be positive");
  const CMatrix warm = rho.is_pure() ? pure_state_optimal_commuting_state(rho, g, order).matrix()
                                     : asymmetry_numeric(rho, g, order, options).minimizer.matrix();
  std::vector<UniformEnsemblePoint> out;
  for (double r : rValues) {
    if (!(r > 0) || !std::isfinite(r)) throw ValidationError("r must be positive and finite");
    const int cells = std::clamp(static_cast<int>(std::ceil(2 * r / cellWidth)), 1, maxCells);
    const SignalEnsemble e = SignalEnsemble::uniform_partition(rho, g, -r, r, cells);
    out.push_back({r, cells, renyi_holevo(e, order, warm, options).value});
  }
  return out;
}

CoherenceMeasures coherence_measures(const DensityOperator<>& rho, const Generator<>& basis, const RenyiOrder& order,
                                     const SigmaSearchOptions& options) {
  require_order_at_least_half(order);
  if (!basis.decomposition().nondegenerate())
    throw ValidationError("coherence requires a nondegenerate basis generator");
  CoherenceMeasures c;
  c.pure = rho.is_pure();
  auto asym = [&](const RenyiOrder& a) {
    return c.pure ? asymmetry_pure(rho, basis, a).value : asymmetry_numeric(rho, basis, a, options).value;
  };
  const double half = asym(0.5);
  const double inf = asym(RenyiOrder::infinity());
  c.orderValue = order.is_half() ? half : order.is_infinite() ? inf : asym(order);
  c.geometric = 1 - std::exp(-half);
  c.robustness = std::expm1(inf);
  c.relativeEntropy = asymmetry_alpha1(rho, basis);
  return c;
}

CoherenceBounds coherence_bounds(const DensityOperator<>& rho, const Generator<>& basis, const std::vector<double>& zeta,
                                 const RenyiOrder& order, Index gridSize) {
  require_order_at_least_half(order);
  const CMatrix r = in_basis(rho.matrix(), basis);
  const std::vector<long> m = basis_integers(basis);
  const Index d = r.rows();
  if (!zeta.empty() && static_cast<Index>(zeta.size()) != d) throw ValidationError("one reference phase per level");
  // Fourier coefficients keyed by m - m'.
  std::vector<std::pair<long, std::complex<double>>> terms;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const double dz = zeta.empty() ? 0.0 : zeta[static_cast<std::size_t>(i)] - zeta[static_cast<std::size_t>(j)];
      terms.emplace_back(m[static_cast<std::size_t>(i)] - m[static_cast<std::size_t>(j)], std::polar(1.0, -dz) * r(i, j));
    }
  long span = 0;
  for (const auto& t : terms) span = std::max(span, std::abs(t.first));
  gridSize = std::max<Index>(gridSize, 8 * (span + 1));
  auto density = [&](double phi) {
    double s = 0;
    for (const auto& [k, c] : terms) s += (c * std::polar(1.0, static_cast<double>(k) * phi)).real();
    return std::max(0.0, s / (2 * std::numbers::pi));
  };
  const CircularDensity phase = CircularDensity::from_function(density, gridSize, 2 * std::numbers::pi);
  Index top;
  phase.values.maxCoeff(&top);
  const double h = phase.spacing();
  const double sup = std::max(phase.values(top), opt::golden_section_maximize(density, phase.point(top) - h,
                                                                              phase.point(top) + h, 1e-12)
                                                     .value);
  const VectorXd pops = r.diagonal().real().cwiseMax(0.0);
  const double log2pi = std::log(2 * std::numbers::pi);

  CoherenceBounds b;
  b.renyiLower = std::max(0.0, log2pi - renyi_entropy(phase, order));
  b.renyiUpper = renyi_entropy(pops, order.conjugate());
  b.geometricLower = std::max(0.0, 1 - renyi_length(phase, RenyiOrder(0.5)) / (2 * std::numbers::pi));
  b.geometricUpper = 1 - pops.maxCoeff();
  b.phaseDensitySup = sup;
  b.robustnessLower = std::max(0.0, 2 * std::numbers::pi * sup - 1);
  b.robustnessUpper = std::pow(pops.cwiseSqrt().sum(), 2) - 1;
  b.robustnessComparison = r.cwiseAbs().sum() - 1;
  return b;
}

DensityOperator<> coherent_phase_state(double v, double tailTol, Index minDim) {
  if (!(std::abs(v) < 1)) throw ValidationError("coherent phase state needs |v| < 1");
  Index n = std::max<Index>(minDim, 1);
  if (v != 0 && tailTol > 0)
    n = std::max(n, static_cast<Index>(std::ceil(std::log(tailTol) / (2 * std::log(std::abs(v))))));
  CVector psi(n);
  double amp = std::sqrt(1 - v * v);
  for (Index i = 0; i < n; ++i, amp *= v) psi(i) = amp;
  return DensityOperator<>::pure(psi);
}

ConvergedCoherence coherent_phase_state_robustness(double v, double tol) {
  const auto robustness = [](const DensityOperator<>& psi) {
    return std::expm1(asymmetry_pure(psi, Generator<>::number(psi.dim()), RenyiOrder::infinity()).value);
  };
  DensityOperator<> psi = coherent_phase_state(v);
  double value = robustness(psi);
  for (int i = 0; i < 12; ++i) {
    const Index next = 2 * psi.dim();
    const DensityOperator<> wider = coherent_phase_state(v, 0.0, next);
    const double nv = robustness(wider);
    const double change = std::abs(nv - value);
    psi = wider;
    value = nv;
    if (change < tol) return {value, psi.dim(), change};
  }
  return {value, psi.dim(), kInf};
}

}  // namespace renyi
