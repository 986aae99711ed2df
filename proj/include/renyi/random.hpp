#pragma once

#include <random>

#include "renyi/spectral.hpp"

namespace renyi {

using Rng = std::mt19937_64;

inline CMatrix random_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = {n(rng), n(rng)};
  return g;
}

// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
inline CMatrix random_unitary(Index d, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_ginibre(d, d, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

inline CMatrix random_hermitian(Index d, Rng& rng) {
  const CMatrix g = random_ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

inline CVector random_state_vector(Index d, Rng& rng) {
  CVector v = random_ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

inline DensityOperator<> random_pure(Index d, Rng& rng) {
  return DensityOperator<>::pure(random_state_vector(d, rng));
}

// Induced measure: rho = G G^dagger / tr with G of shape d x rank.
inline DensityOperator<> random_density(Index d, Rng& rng, Index rank = -1) {
  if (rank < 1) rank = d;
  const CMatrix g = random_ginibre(d, rank, rng);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator<>(m);
}

// Uniform on the simplex.
inline VectorXd random_probability(Index d, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  VectorXd p(d);
  for (Index i = 0; i < d; ++i) p(i) = e(rng);
  return p / p.sum();
}

inline double uniform(Rng& rng, double a = 0.0, double b = 1.0) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int uniform_int(Rng& rng, int a, int b) {
  return std::uniform_int_distribution<int>(a, b)(rng);
}

}  // namespace renyi
