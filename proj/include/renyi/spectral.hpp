#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace renyi {

template <class S = double>
using HermitianMatrix = Eigen::Matrix<std::complex<S>, Eigen::Dynamic, Eigen::Dynamic>;
template <class S = double>
using ComplexVector = Eigen::Matrix<std::complex<S>, Eigen::Dynamic, 1>;
template <class S = double>
using RealVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using CMatrix = HermitianMatrix<double>;
using CVector = ComplexVector<double>;
using Eigen::Index;
using Eigen::VectorXd;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kSupportTol = 1e-12;

template <class S>
S hermiticity_defect(const HermitianMatrix<S>& m) {
  if (m.size() == 0) return S(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <class S>
void require_hermitian(const HermitianMatrix<S>& m, S tol = S(kHermitianTol)) {
  if (m.rows() != m.cols()) throw ValidationError("matrix is not square");
  if (m.size() == 0) throw ValidationError("matrix is empty");
  const S scale = std::max(S(1), m.cwiseAbs().maxCoeff());
  if (hermiticity_defect(m) > tol * scale)
    throw ValidationError("matrix is not Hermitian within tolerance");
}

template <class S>
HermitianMatrix<S> hermitian_part(const HermitianMatrix<S>& m) {
  return (m + m.adjoint()) / S(2);
}

// Eigenvalues grouped into eigenspaces; bases[k] is an isometry onto the k-th eigenspace.
template <class S = double>
struct SpectralDecomposition {
  std::vector<S> eigenvalues;
  std::vector<HermitianMatrix<S>> projectors;
  std::vector<HermitianMatrix<S>> bases;
  S degeneracyTol = S(0);

  std::size_t size() const { return eigenvalues.size(); }
  Index dim() const { return projectors.empty() ? 0 : projectors.front().rows(); }
  Index rank(std::size_t k) const { return bases[k].cols(); }
  bool nondegenerate() const {
    return std::all_of(bases.begin(), bases.end(), [](const auto& b) { return b.cols() == 1; });
  }

  HermitianMatrix<S> reconstruct() const {
    HermitianMatrix<S> m = HermitianMatrix<S>::Zero(dim(), dim());
    for (std::size_t k = 0; k < size(); ++k) m += eigenvalues[k] * projectors[k];
    return m;
  }
};

namespace detail {

// Groups ascending values; a new group starts when a value exceeds the group's first value by more than tol.
template <class S>
std::vector<std::pair<std::size_t, std::size_t>> group_sorted(const std::vector<S>& sorted, S tol) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted[i] - sorted[start] > tol) {
      groups.emplace_back(start, i);
      start = i;
    }
  }
  return groups;
}

template <class S>
S default_degeneracy_tol(S maxAbs) {
  return S(1e-9) * std::max(maxAbs, S(1e-300));
}

}  // namespace detail

template <class S>
SpectralDecomposition<S> eigendecompose(const HermitianMatrix<S>& m, S degeneracyTol = S(-1)) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<S>> es(hermitian_part(m));
  const RealVector<S>& w = es.eigenvalues();
  std::vector<S> vals(w.data(), w.data() + w.size());
  const S tol = degeneracyTol < S(0) ? detail::default_degeneracy_tol(w.cwiseAbs().maxCoeff()) : degeneracyTol;

  SpectralDecomposition<S> sd;
  sd.degeneracyTol = tol;
  for (auto [a, b] : detail::group_sorted(vals, tol)) {
    const Index r = static_cast<Index>(b - a);
    HermitianMatrix<S> basis = es.eigenvectors().middleCols(static_cast<Index>(a), r);
    S mean = S(0);
    for (std::size_t i = a; i < b; ++i) mean += vals[i];
    sd.eigenvalues.push_back(mean / S(r));
    sd.projectors.push_back(basis * basis.adjoint());
    sd.bases.push_back(std::move(basis));
  }
  return sd;
}

// Decomposition of diag(values) with exact computational-basis projectors.
template <class S>
SpectralDecomposition<S> diagonal_decomposition(const std::vector<S>& values, S degeneracyTol = S(-1)) {
  if (values.empty()) throw ValidationError("empty spectrum");
  const Index d = static_cast<Index>(values.size());
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<S> sorted(values.size());
  S maxAbs = S(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted[i] = values[order[i]];
    maxAbs = std::max(maxAbs, std::abs(sorted[i]));
  }
  const S tol = degeneracyTol < S(0) ? detail::default_degeneracy_tol(maxAbs) : degeneracyTol;

  SpectralDecomposition<S> sd;
  sd.degeneracyTol = tol;
  for (auto [a, b] : detail::group_sorted(sorted, tol)) {
    std::vector<std::size_t> idx(order.begin() + static_cast<long>(a), order.begin() + static_cast<long>(b));
    std::sort(idx.begin(), idx.end());
    HermitianMatrix<S> basis = HermitianMatrix<S>::Zero(d, static_cast<Index>(idx.size()));
    S mean = S(0);
    for (std::size_t c = 0; c < idx.size(); ++c) {
      basis(static_cast<Index>(idx[c]), static_cast<Index>(c)) = S(1);
      mean += values[idx[c]];
    }
    sd.eigenvalues.push_back(mean / S(idx.size()));
    sd.projectors.push_back(basis * basis.adjoint());
    sd.bases.push_back(std::move(basis));
  }
  return sd;
}

// Applies f to the eigenvalues above supportTol; the rest map to zero.
template <class S, class F>
HermitianMatrix<S> support_function(const HermitianMatrix<S>& m, F&& f, S supportTol = S(kSupportTol)) {
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<S>> es(hermitian_part(m));
  const auto& w = es.eigenvalues();
  const auto& v = es.eigenvectors();
  RealVector<S> fw(w.size());
  for (Index i = 0; i < w.size(); ++i) fw(i) = w(i) > supportTol ? f(w(i)) : S(0);
  return v * fw.asDiagonal() * v.adjoint();
}

template <class S>
HermitianMatrix<S> fractional_power(const HermitianMatrix<S>& m, S exponent, S supportTol = S(kSupportTol)) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<S>> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -S(kPsdTol))
    throw ValidationError("fractional power of a matrix with a negative eigenvalue");
  return support_function(m, [exponent](S x) { return std::pow(x, exponent); }, supportTol);
}

template <class S>
HermitianMatrix<S> support_log(const HermitianMatrix<S>& m, S supportTol = S(kSupportTol)) {
  return support_function(m, [](S x) { return std::log(x); }, supportTol);
}

template <class S>
S von_neumann_entropy(const HermitianMatrix<S>& m) {
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<S>> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  S h = S(0);
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const S x = es.eigenvalues()(i);
    if (x > S(0)) h -= x * std::log(x);
  }
  return h;
}

template <class S = double>
class DensityOperator {
 public:
  DensityOperator() = default;

  explicit DensityOperator(const HermitianMatrix<S>& m, std::vector<int> labels = {}) {
    require_hermitian(m);
    if (std::abs(m.trace().real() - S(1)) > S(kTraceTol) || std::abs(m.trace().imag()) > S(kTraceTol))
      throw ValidationError("density operator trace differs from 1");
    Eigen::SelfAdjointEigenSolver<HermitianMatrix<S>> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -S(kPsdTol))
      throw ValidationError("density operator has a negative eigenvalue");
    m_ = hermitian_part(m);
    set_labels(std::move(labels));
  }

  static DensityOperator pure(const ComplexVector<S>& psi, std::vector<int> labels = {}) {
    const S n = psi.norm();
    if (!(n > S(0))) throw ValidationError("zero state vector");
    const ComplexVector<S> u = psi / n;
    return DensityOperator(HermitianMatrix<S>(u * u.adjoint()), std::move(labels));
  }

  static DensityOperator maximally_mixed(Index d, std::vector<int> labels = {}) {
    return DensityOperator(HermitianMatrix<S>(HermitianMatrix<S>::Identity(d, d) / S(d)), std::move(labels));
  }

  static DensityOperator diagonal(const RealVector<S>& p, std::vector<int> labels = {}) {
    return DensityOperator(HermitianMatrix<S>(p.template cast<std::complex<S>>().asDiagonal()), std::move(labels));
  }

  const HermitianMatrix<S>& matrix() const { return m_; }
  const std::vector<int>& labels() const { return labels_; }
  Index dim() const { return m_.rows(); }

  RealVector<S> populations() const { return m_.diagonal().real(); }
  S purity() const { return (m_ * m_).trace().real(); }
  bool is_pure(S tol = S(1e-10)) const { return purity() >= S(1) - tol; }

  DensityOperator with_labels(std::vector<int> labels) const {
    DensityOperator r = *this;
    r.set_labels(std::move(labels));
    return r;
  }

 private:
  void set_labels(std::vector<int> labels) {
    if (labels.empty()) {
      labels.resize(static_cast<std::size_t>(m_.rows()));
      std::iota(labels.begin(), labels.end(), 0);
    }
    if (static_cast<Index>(labels.size()) != m_.rows()) throw ValidationError("label count differs from dimension");
    labels_ = std::move(labels);
  }

  HermitianMatrix<S> m_;
  std::vector<int> labels_;
};

enum class GeneratorKind { Number, AngularMomentumZ, Energy, Custom };

template <class S = double>
class Generator {
 public:
  Generator() = default;
  Generator(SpectralDecomposition<S> sd, GeneratorKind kind, std::vector<S> diag = {})
      : sd_(std::move(sd)), kind_(kind), diag_(std::move(diag)) {}

  static Generator number(Index dim) {
    std::vector<S> v(static_cast<std::size_t>(dim));
    for (Index i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = S(i);
    return diagonal(v, GeneratorKind::Number, S(0.5));
  }

  // Basis ordered m = -jmax, ..., jmax.
  static Generator angular_momentum_z(int jmax) {
    if (jmax < 0) throw ValidationError("negative jmax");
    std::vector<S> v;
    for (int m = -jmax; m <= jmax; ++m) v.push_back(S(m));
    return diagonal(v, GeneratorKind::AngularMomentumZ, S(0.5));
  }

  // Levels with uniform degeneracy; basis index = k * degeneracy + d.
  static Generator energy(const std::vector<S>& levels, Index degeneracy = 1) {
    if (degeneracy < 1) throw ValidationError("degeneracy must be positive");
    std::vector<S> v;
    for (S e : levels)
      for (Index d = 0; d < degeneracy; ++d) v.push_back(e);
    return diagonal(v, GeneratorKind::Energy);
  }

  static Generator diagonal(const std::vector<S>& values, GeneratorKind kind = GeneratorKind::Custom,
                            S degeneracyTol = S(-1)) {
    return Generator(diagonal_decomposition(values, degeneracyTol), kind, values);
  }

  static Generator from_matrix(const HermitianMatrix<S>& m, S degeneracyTol = S(-1)) {
    return Generator(eigendecompose(m, degeneracyTol), GeneratorKind::Custom);
  }

  const SpectralDecomposition<S>& decomposition() const { return sd_; }
  GeneratorKind kind() const { return kind_; }
  Index dim() const { return sd_.dim(); }
  bool is_diagonal() const { return !diag_.empty(); }
  const std::vector<S>& diagonal_values() const { return diag_; }
  HermitianMatrix<S> matrix() const { return sd_.reconstruct(); }

  // Generator h(G); eigenspaces whose images coincide are merged.
  Generator mapped(const std::function<S(S)>& h) const {
    if (is_diagonal()) {
      std::vector<S> v(diag_.size());
      std::transform(diag_.begin(), diag_.end(), v.begin(), h);
      return diagonal(v, GeneratorKind::Custom);
    }
    std::vector<std::size_t> order(sd_.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::vector<S> hv(sd_.size());
    S maxAbs = S(0);
    for (std::size_t k = 0; k < sd_.size(); ++k) {
      hv[k] = h(sd_.eigenvalues[k]);
      maxAbs = std::max(maxAbs, std::abs(hv[k]));
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hv[a] < hv[b]; });
    std::vector<S> sorted;
    for (auto k : order) sorted.push_back(hv[k]);
    SpectralDecomposition<S> out;
    out.degeneracyTol = detail::default_degeneracy_tol(maxAbs);
    for (auto [a, b] : detail::group_sorted(sorted, out.degeneracyTol)) {
      Index cols = 0;
      for (std::size_t i = a; i < b; ++i) cols += sd_.rank(order[i]);
      HermitianMatrix<S> basis(dim(), cols);
      Index c = 0;
      for (std::size_t i = a; i < b; ++i) {
        basis.middleCols(c, sd_.rank(order[i])) = sd_.bases[order[i]];
        c += sd_.rank(order[i]);
      }
      out.eigenvalues.push_back(sorted[a]);
      out.projectors.push_back(basis * basis.adjoint());
      out.bases.push_back(std::move(basis));
    }
    return Generator(std::move(out), GeneratorKind::Custom);
  }

 private:
  SpectralDecomposition<S> sd_;
  GeneratorKind kind_ = GeneratorKind::Custom;
  std::vector<S> diag_;
};

template <class S>
void require_same_dim(Index a, Index b) {
  if (a != b) throw ValidationError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

template <class S>
HermitianMatrix<S> dephase_matrix(const HermitianMatrix<S>& m, const SpectralDecomposition<S>& sd) {
  require_same_dim<S>(m.rows(), sd.dim());
  HermitianMatrix<S> out = HermitianMatrix<S>::Zero(m.rows(), m.cols());
  for (const auto& b : sd.bases) out += b * (b.adjoint() * m * b) * b.adjoint();
  return out;
}

template <class S>
DensityOperator<S> dephase(const DensityOperator<S>& rho, const Generator<S>& g) {
  return DensityOperator<S>(dephase_matrix(rho.matrix(), g.decomposition()), rho.labels());
}

// Populations tr[rho P_k], one per eigenspace in ascending eigenvalue order.
template <class S>
RealVector<S> eigenspace_weights(const HermitianMatrix<S>& m, const SpectralDecomposition<S>& sd) {
  require_same_dim<S>(m.rows(), sd.dim());
  RealVector<S> p(static_cast<Index>(sd.size()));
  for (std::size_t k = 0; k < sd.size(); ++k)
    p(static_cast<Index>(k)) = std::max(S(0), (sd.bases[k].adjoint() * m * sd.bases[k]).trace().real());
  return p;
}

template <class S>
HermitianMatrix<S> displacement_unitary(const SpectralDecomposition<S>& sd, S x) {
  HermitianMatrix<S> u = HermitianMatrix<S>::Zero(sd.dim(), sd.dim());
  for (std::size_t k = 0; k < sd.size(); ++k)
    u += std::polar(S(1), -x * sd.eigenvalues[k]) * sd.projectors[k];
  return u;
}

template <class S>
DensityOperator<S> displace(const DensityOperator<S>& rho, const Generator<S>& g, S x) {
  require_same_dim<S>(rho.dim(), g.dim());
  const HermitianMatrix<S> u = displacement_unitary(g.decomposition(), x);
  return DensityOperator<S>(HermitianMatrix<S>(u * rho.matrix() * u.adjoint()), rho.labels());
}

template <class S = double>
struct Purification {
  DensityOperator<S> state;
  ComplexVector<S> vector;
  Index ancillaDim = 0;
};

// System factor first: index = s * ancillaDim + a.
template <class S>
Purification<S> purify(const DensityOperator<S>& rho, S supportTol = S(kSupportTol)) {
  Eigen::SelfAdjointEigenSolver<HermitianMatrix<S>> es(rho.matrix());
  const Index d = rho.dim();
  std::vector<Index> keep;
  for (Index i = d - 1; i >= 0; --i)
    if (es.eigenvalues()(i) > supportTol) keep.push_back(i);
  const Index r = static_cast<Index>(keep.size());
  ComplexVector<S> psi = ComplexVector<S>::Zero(d * r);
  for (Index a = 0; a < r; ++a) {
    const S w = std::sqrt(es.eigenvalues()(keep[static_cast<std::size_t>(a)]));
    for (Index s = 0; s < d; ++s) psi(s * r + a) = w * es.eigenvectors()(s, keep[static_cast<std::size_t>(a)]);
  }
  psi.normalize();
  Purification<S> out;
  out.vector = psi;
  out.ancillaDim = r;
  out.state = DensityOperator<S>::pure(psi);
  return out;
}

// Partial trace keeping the listed factors (in increasing order) of a tensor product with the given dims.
template <class S>
HermitianMatrix<S> partial_trace_matrix(const HermitianMatrix<S>& m, const std::vector<int>& keep,
                                        const std::vector<Index>& dims) {
  Index total = 1;
  for (Index d : dims) {
    if (d < 1) throw ValidationError("factor dimension must be positive");
    total *= d;
  }
  if (total != m.rows()) throw ValidationError("factor dimensions do not multiply to the matrix dimension");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || static_cast<std::size_t>(k) >= dims.size()) throw ValidationError("subsystem index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }
  Index keptDim = 1;
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (kept[f]) keptDim *= dims[f];

  auto split = [&](Index i, Index& keptIdx, Index& tracedIdx) {
    keptIdx = 0;
    tracedIdx = 0;
    Index stride = total;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      stride /= dims[f];
      const Index digit = (i / stride) % dims[f];
      if (kept[f])
        keptIdx = keptIdx * dims[f] + digit;
      else
        tracedIdx = tracedIdx * dims[f] + digit;
    }
  };

  std::vector<Index> ki(static_cast<std::size_t>(total)), ti(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) split(i, ki[static_cast<std::size_t>(i)], ti[static_cast<std::size_t>(i)]);
  HermitianMatrix<S> out = HermitianMatrix<S>::Zero(keptDim, keptDim);
  for (Index i = 0; i < total; ++i)
    for (Index j = 0; j < total; ++j)
      if (ti[static_cast<std::size_t>(i)] == ti[static_cast<std::size_t>(j)])
        out(ki[static_cast<std::size_t>(i)], ki[static_cast<std::size_t>(j)]) += m(i, j);
  return out;
}

template <class S>
DensityOperator<S> partial_trace(const DensityOperator<S>& rho, const std::vector<int>& keep,
                                 const std::vector<Index>& dims) {
  return DensityOperator<S>(partial_trace_matrix(rho.matrix(), keep, dims));
}

template <class S>
HermitianMatrix<S> kron(const HermitianMatrix<S>& a, const HermitianMatrix<S>& b) {
  HermitianMatrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class S>
S von_neumann_entropy(const DensityOperator<S>& rho) {
  return von_neumann_entropy(rho.matrix());
}

}  // namespace renyi
