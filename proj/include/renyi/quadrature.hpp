#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

namespace renyi {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Legendre rule on [-1, 1] by Golub-Welsch.
inline QuadratureRule gauss_legendre(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = b;
    j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  QuadratureRule r;
  r.nodes = es.eigenvalues();
  r.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  return r;
}

// Composite Gauss-Legendre over consecutive breakpoints.
inline QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int order) {
  const QuadratureRule base = gauss_legendre(order);
  const Eigen::Index panels = static_cast<Eigen::Index>(breaks.size()) - 1;
  QuadratureRule r;
  r.nodes.resize(panels > 0 ? panels * order : 0);
  r.weights.resize(r.nodes.size());
  for (Eigen::Index p = 0; p < panels; ++p) {
    const double a = breaks[static_cast<std::size_t>(p)], b = breaks[static_cast<std::size_t>(p + 1)];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    r.nodes.segment(p * order, order) = (mid + half * base.nodes.array()).matrix();
    r.weights.segment(p * order, order) = half * base.weights;
  }
  return r;
}

inline QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order) {
  std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) breaks[static_cast<std::size_t>(i)] = a + (b - a) * i / panels;
  return composite_gauss_legendre(breaks, order);
}

}  // namespace renyi
