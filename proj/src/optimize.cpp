#include "renyi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <vector>

namespace renyi::opt {

namespace {

double finite_or_inf(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

Result nelder_mead_once(const std::function<double(const VectorXd&)>& f, const VectorXd& x0,
                        const NelderMeadOptions& o, int evalBudget) {
  const Eigen::Index n = x0.size();
  Result res;
  if (n == 0) {
    res.x = x0;
    res.value = f(x0);
    res.evaluations = 1;
    res.converged = true;
    return res;
  }
  const double nd = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / nd, gamma = 0.75 - 0.5 / nd, delta = 1.0 - 1.0 / nd;

  std::vector<VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  int evals = 0;
  auto eval = [&](const VectorXd& x) {
    ++evals;
    return finite_or_inf(f(x));
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const double step = x0(i) != 0.0 ? o.initialStep * std::max(1.0, std::abs(x0(i))) : o.initialStep;
    pts[static_cast<std::size_t>(i + 1)](i) += step;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> idx(pts.size());
  std::deque<double> history;
  int it = 0;
  bool converged = false;
  while (evals < evalBudget) {
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[idx.size() - 2];

    history.push_back(vals[best]);
    if (static_cast<int>(history.size()) > o.stallIterations) {
      const double old = history.front();
      history.pop_front();
      const double improvement = old - vals[best];
      if (std::isfinite(old) && improvement <= o.tolerance * std::max(1.0, std::abs(vals[best]))) {
        converged = true;
        break;
      }
    }
    double spread = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) spread = std::max(spread, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    if (spread < 1e-15) {
      converged = true;
      break;
    }
    ++it;

    VectorXd centroid = VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= nd;

    const VectorXd xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const VectorXd xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    bool shrink = false;
    if (fr < vals[worst]) {
      const VectorXd xc = centroid + gamma * (xr - centroid);
      const double fc = eval(xc);
      if (fc <= fr) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        shrink = true;
      }
    } else {
      const VectorXd xc = centroid - gamma * (centroid - pts[worst]);
      const double fc = eval(xc);
      if (fc < vals[worst]) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == best) continue;
        pts[i] = pts[best] + delta * (pts[i] - pts[best]);
        vals[i] = eval(pts[i]);
      }
    }
  }
  const auto bestIt = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(bestIt - vals.begin())];
  res.value = *bestIt;
  res.iterations = it;
  res.evaluations = evals;
  res.converged = converged;
  return res;
}

}  // namespace

Result nelder_mead(const std::function<double(const VectorXd&)>& f, const VectorXd& x0,
                   const NelderMeadOptions& options) {
  Result best = nelder_mead_once(f, x0, options, options.maxEvaluations);
  for (int r = 0; r < options.restarts && best.evaluations < options.maxEvaluations; ++r) {
    NelderMeadOptions o = options;
    o.initialStep = options.initialStep * 0.1;
    Result next = nelder_mead_once(f, best.x, o, options.maxEvaluations - best.evaluations);
    const bool improved = next.value < best.value;
    next.evaluations += best.evaluations;
    next.iterations += best.iterations;
    if (!improved) {
      best.evaluations = next.evaluations;
      best.iterations = next.iterations;
      best.converged = best.converged && next.converged;
      break;
    }
    best = next;
  }
  return best;
}

Result lbfgs(const ValueAndGradient& fg, const VectorXd& x0, const LbfgsOptions& o) {
  const Eigen::Index n = x0.size();
  Result res;
  VectorXd x = x0, g(n), gNew(n);
  double fx = finite_or_inf(fg(x, g));
  int evals = 1;
  std::deque<VectorXd> sHist, yHist;
  std::deque<double> rhoHist;
  int stall = 0;
  int it = 0;
  bool converged = false;

  if (!std::isfinite(fx) || n == 0) {
    res.x = x;
    res.value = fx;
    res.evaluations = evals;
    res.converged = n == 0;
    return res;
  }

  for (; it < o.maxIterations; ++it) {
    if (g.cwiseAbs().maxCoeff() <= o.gradientTol) {
      converged = true;
      break;
    }
    VectorXd q = g;
    std::vector<double> a(sHist.size());
    for (int i = static_cast<int>(sHist.size()) - 1; i >= 0; --i) {
      const auto k = static_cast<std::size_t>(i);
      a[k] = rhoHist[k] * sHist[k].dot(q);
      q -= a[k] * yHist[k];
    }
    if (!sHist.empty()) q *= sHist.back().dot(yHist.back()) / yHist.back().squaredNorm();
    for (std::size_t k = 0; k < sHist.size(); ++k) {
      const double b = rhoHist[k] * yHist[k].dot(q);
      q += sHist[k] * (a[k] - b);
    }
    VectorXd dir = -q;
    double slope = g.dot(dir);
    if (!(slope < 0)) {
      dir = -g;
      slope = -g.squaredNorm();
      sHist.clear();
      yHist.clear();
      rhoHist.clear();
    }
    double step = sHist.empty() ? std::min(1.0, 1.0 / std::max(1e-300, g.norm())) : 1.0;

    bool accepted = false;
    double fNew = 0;
    VectorXd xNew;
    for (int ls = 0; ls < 60; ++ls) {
      xNew = x + step * dir;
      fNew = finite_or_inf(fg(xNew, gNew));
      ++evals;
      if (fNew <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!sHist.empty()) {
        sHist.clear();
        yHist.clear();
        rhoHist.clear();
        continue;
      }
      converged = g.cwiseAbs().maxCoeff() <= 1e-6;
      break;
    }
    const VectorXd s = xNew - x, y = gNew - g;
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      sHist.push_back(s);
      yHist.push_back(y);
      rhoHist.push_back(1.0 / sy);
      if (static_cast<int>(sHist.size()) > o.memory) {
        sHist.pop_front();
        yHist.pop_front();
        rhoHist.pop_front();
      }
    }
    const double decrease = fx - fNew;
    x = xNew;
    g = gNew;
    fx = fNew;
    if (decrease <= o.relativeTol * std::max(1.0, std::abs(fx))) {
      if (++stall >= o.stallIterations) {
        converged = true;
        break;
      }
    } else {
      stall = 0;
    }
  }
  res.x = x;
  res.value = fx;
  res.iterations = it;
  res.evaluations = evals;
  res.converged = converged;
  return res;
}

ScalarResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double xTol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  while (b - a > xTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  ScalarResult r;
  r.x = 0.5 * (a + b);
  r.value = f(r.x);
  r.evaluations = evals + 1;
  if (fc < r.value) {
    r.x = c;
    r.value = fc;
  }
  if (fd < r.value) {
    r.x = d;
    r.value = fd;
  }
  return r;
}

ScalarResult golden_section_maximize(const std::function<double(double)>& f, double a, double b, double xTol) {
  ScalarResult r = golden_section_minimize([&](double x) { return -f(x); }, a, b, xTol);
  r.value = -r.value;
  return r;
}

}  // namespace renyi::opt
