#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "renyi/quantum.hpp"
#include "renyi/random.hpp"

using namespace renyi;

namespace {

const std::vector<double> kOrders = {0.5, 0.75, 1.0, 2.0, kInf};

// Direct sandwiched formula through full-rank matrix powers.
double direct_divergence(const CMatrix& rho, const CMatrix& sigma, double a) {
  if (a == 1.0) return (rho * (support_log(rho) - support_log(sigma))).trace().real();
  const CMatrix h = fractional_power(sigma, (1 - a) / (2 * a));
  const CMatrix y = hermitian_part(CMatrix(h * rho * h));
  const CMatrix ya = fractional_power(y, a);
  return std::log(ya.trace().real()) / (a - 1);
}

// log min{lambda : rho <= lambda sigma} by bisection on the smallest eigenvalue of lambda sigma - rho.
double bisection_max_divergence(const CMatrix& rho, const CMatrix& sigma) {
  auto feasible = [&](double l) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(CMatrix(l * sigma - rho)), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-14;
  };
  double lo = 1e-3, hi = 1.0;
  while (!feasible(hi)) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return std::log(hi);
}

CMatrix plus_state() {
  CVector v(2);
  v << 1, 1;
  return DensityOperator<>::pure(v).matrix();
}

std::vector<double> random_levels(Index d, Rng& rng, bool degenerate) {
  std::vector<double> v;
  for (Index i = 0; i < d; ++i) v.push_back(degenerate ? uniform_int(rng, 0, 2) : static_cast<double>(i));
  return v;
}

}  // namespace

TEST_CASE("sandwiched divergence examples") {
  Rng rng(11);
  const auto rho = random_density(3, rng);
  for (double a : kOrders) CHECK(std::abs(sandwiched_relative_entropy(rho, rho, a)) < 1e-9);

  const auto psi = random_pure(4, rng);
  CHECK(sandwiched_relative_entropy(psi, DensityOperator<>::maximally_mixed(4), RenyiOrder::infinity()) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));

  for (int t = 0; t < 5; ++t) {
    const VectorXd p = random_probability(4, rng), q = random_probability(4, rng);
    for (double a : {0.5, 0.75, 1.0, 2.0, 5.0, kInf})
      CHECK(sandwiched_relative_entropy(DensityOperator<>::diagonal(p), DensityOperator<>::diagonal(q), a) ==
            doctest::Approx(oracle::divergence(p, q, a)).epsilon(1e-10));
  }
}

TEST_CASE("sandwiched divergence matches direct matrix formulas") {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_density(3, rng), sigma = random_density(3, rng);
    for (double a : {0.5, 0.7, 1.0, 1.5, 4.0})
      CHECK(sandwiched_relative_entropy(rho, sigma, a) ==
            doctest::Approx(direct_divergence(rho.matrix(), sigma.matrix(), a)).epsilon(1e-9));
    CHECK(sandwiched_relative_entropy(rho, sigma, RenyiOrder::infinity()) ==
          doctest::Approx(bisection_max_divergence(rho.matrix(), sigma.matrix())).epsilon(1e-9));
  }
}

TEST_CASE("support conventions") {
  const auto zero = DensityOperator<>::diagonal(VectorXd::Unit(2, 0));
  const auto one = DensityOperator<>::diagonal(VectorXd::Unit(2, 1));
  CHECK(std::isinf(sandwiched_relative_entropy(zero, one, 2.0)));
  CHECK(std::isinf(sandwiched_relative_entropy(zero, one, 1.0)));
  CHECK(std::isinf(sandwiched_relative_entropy(zero, one, RenyiOrder::infinity())));
  CHECK(std::isinf(sandwiched_relative_entropy(zero, one, 0.75)));
  const auto half = DensityOperator<>::maximally_mixed(2);
  // Below order one only the overlap counts: sigma^{1/6} rho sigma^{1/6} = diag(1/2, 0).
  CHECK(sandwiched_relative_entropy(half, zero, 0.75) == doctest::Approx(3 * std::log(2.0)).epsilon(1e-12));
  const auto checked = sandwiched_relative_entropy_checked(half, half, 0.3);
  CHECK(checked.belowHalf);
  CHECK(std::abs(checked.value) < 1e-12);
}

TEST_CASE("divergence properties on random pairs") {
  Rng rng(13);
  const auto g = Generator<>::diagonal({0, 1, 1, 3});
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density(4, rng), sigma = random_density(4, rng);
    const CMatrix u = random_unitary(4, rng);
    const DensityOperator<> ur(CMatrix(u * rho.matrix() * u.adjoint())), us(CMatrix(u * sigma.matrix() * u.adjoint()));
    for (double a : {0.5, 0.8, 1.0, 1.5, 3.0, kInf}) {
      const double d = sandwiched_relative_entropy(rho, sigma, a);
      CHECK(d >= 0);
      CHECK(sandwiched_relative_entropy(ur, us, a) == doctest::Approx(d).epsilon(1e-9));
      CHECK(sandwiched_relative_entropy(dephase(rho, g), dephase(sigma, g), a) <= d + 1e-8);
      CHECK(sandwiched_relative_entropy(partial_trace(rho, {0}, {2, 2}), partial_trace(sigma, {0}, {2, 2}), a) <=
            d + 1e-8);
    }
  }
}

TEST_CASE("pure-state asymmetry by duality") {
  const auto g = Generator<>::diagonal({0, 1});
  CHECK(asymmetry_pure(DensityOperator<>::diagonal(VectorXd::Unit(2, 1)), g, 2.0).value == 0.0);
  for (double a : kOrders) CHECK(asymmetry_pure(DensityOperator<>(plus_state()), g, a).value == doctest::Approx(std::log(2.0)));

  CVector v(2);
  v << std::sqrt(0.8), std::sqrt(0.2);
  const auto psi = DensityOperator<>::pure(v);
  const double expected = 3 * std::log(std::pow(0.8, 2.0 / 3) + std::pow(0.2, 2.0 / 3));
  const auto r = asymmetry_pure(psi, g, 2.0);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.method == AsymmetryMethod::PureDuality);
  CHECK(asymmetry_numeric(psi, g, 2.0).value == doctest::Approx(expected).epsilon(1e-7));
  CHECK_THROWS_AS(asymmetry_pure(DensityOperator<>::maximally_mixed(2), g, 2.0), ValidationError);
  CHECK_THROWS_AS(asymmetry_numeric(psi, g, 0.4), ValidationError);
}

TEST_CASE("closed-form commuting state attains the pure-state asymmetry") {
  Rng rng(14);
  const auto g = Generator<>::diagonal({0, 1, 1, 2, 5});
  for (int t = 0; t < 5; ++t) {
    const auto psi = random_pure(5, rng);
    for (double a : kOrders) {
      const auto sigma = pure_state_optimal_commuting_state(psi, g, a);
      CHECK((dephase(sigma, g).matrix() - sigma.matrix()).norm() < 1e-12);
      INFO("order " << a);
      CHECK(sandwiched_relative_entropy(psi, sigma, a) == doctest::Approx(asymmetry_pure(psi, g, a).value).epsilon(1e-9));
    }
  }
}

TEST_CASE("numeric asymmetry of invariant states is zero") {
  Rng rng(15);
  const auto g = Generator<>::diagonal({0, 1, 1});
  const auto rho = dephase(random_density(3, rng), g);
  for (double a : kOrders) {
    const auto r = asymmetry_numeric(rho, g, a);
    CHECK(std::abs(r.value) < 1e-9);
    CHECK((r.minimizer.matrix() - rho.matrix()).norm() < 1e-7);
  }
}

TEST_CASE("numeric asymmetry agrees with duality on random pure states") {
  Rng rng(16);
  for (int t = 0; t < 6; ++t) {
    const Index d = 2 + t;
    const auto g = Generator<>::diagonal(random_levels(d, rng, t % 2 == 1));
    const auto psi = random_pure(d, rng);
    for (double a : kOrders) {
      SigmaSearchOptions o;
      o.starts = 3;
      const auto r = asymmetry_numeric(psi, g, a, o);
      CHECK(r.value == doctest::Approx(asymmetry_pure(psi, g, a).value).epsilon(1e-6));
      CHECK((g.matrix() * r.minimizer.matrix() - r.minimizer.matrix() * g.matrix()).norm() < 1e-8);
    }
  }
}

TEST_CASE("qubit asymmetry against one-parameter grid scans") {
  const CMatrix rho = 0.9 * plus_state() + 0.05 * CMatrix::Identity(2, 2);
  const auto g = Generator<>::diagonal({0, 1});
  const double h = von_neumann_entropy(rho);
  double best1 = kInf, bestInf = kInf;
  for (int i = 1; i < 100000; ++i) {
    const double s = i * 1e-5;
    best1 = std::min(best1, -h - 0.5 * std::log(s) - 0.5 * std::log(1 - s));
    if (i % 10 == 0) {
      CMatrix sigma = CMatrix::Zero(2, 2);
      sigma(0, 0) = s;
      sigma(1, 1) = 1 - s;
      bestInf = std::min(bestInf, bisection_max_divergence(rho, sigma));
    }
  }
  const DensityOperator<> r(rho);
  CHECK(asymmetry_numeric(r, g, 1.0).value == doctest::Approx(best1).epsilon(1e-6));
  CHECK(asymmetry_alpha1(r, g) == doctest::Approx(best1).epsilon(1e-6));
  CHECK(asymmetry_numeric(r, g, RenyiOrder::infinity()).value == doctest::Approx(bestInf).epsilon(1e-6));
}

TEST_CASE("asymmetry at order one and the upper bound") {
  Rng rng(17);
  const auto g = Generator<>::diagonal({0, 1, 2});
  const auto psi = random_pure(3, rng);
  CHECK(asymmetry_alpha1(psi, g) ==
        doctest::Approx(oracle::entropy(eigenspace_weights(psi.matrix(), g.decomposition()), 1.0)).epsilon(1e-10));
  CHECK(asymmetry_upper_bound(psi, g, 2.0) == doctest::Approx(asymmetry_pure(psi, g, 2.0).value).epsilon(1e-12));
  CHECK(asymmetry_upper_bound(DensityOperator<>::diagonal(VectorXd::Unit(3, 2)), g, 2.0) == 0.0);
  for (int t = 0; t < 5; ++t) {
    const auto rho = random_density(3, rng);
    CHECK(asymmetry_numeric(rho, g, 1.0).value == doctest::Approx(asymmetry_alpha1(rho, g)).epsilon(1e-6));
    for (double a : kOrders) CHECK(asymmetry_numeric(rho, g, a).value <= asymmetry_upper_bound(rho, g, a) + 1e-6);
  }
}

TEST_CASE("asymmetry result serializes with provenance") {
  const auto g = Generator<>::diagonal({0, 1});
  const auto r = asymmetry_numeric(DensityOperator<>(CMatrix(0.7 * plus_state() + 0.15 * CMatrix::Identity(2, 2))), g, 2.0);
  const auto j = to_json(r);
  CHECK(j["method"] == "numeric-infimum");
  CHECK(j["order"] == 2.0);
  CHECK(j["starts"].size() >= 2);
  CHECK(j["starts"][0]["start"] == "dephased");
  CHECK(j["minimizer"]["re"].size() == 2);
}

TEST_CASE("Holevo quantity examples") {
  Rng rng(18);
  const auto g = Generator<>::diagonal({0, 1, 2});
  const auto rho = random_density(3, rng);
  SignalEnsemble same = SignalEnsemble::from_probe(rho, g, {0.0, 0.0, 0.0}, VectorXd::Ones(3));
  for (double a : kOrders) CHECK(std::abs(renyi_holevo(same, a).value) < 1e-9);

  SignalEnsemble orth;
  orth.generator = g;
  orth.priors = DiscreteDistribution::uniform(3);
  for (int j = 0; j < 3; ++j) orth.states.push_back(DensityOperator<>::diagonal(VectorXd::Unit(3, j)));
  for (double a : kOrders) CHECK(renyi_holevo(orth, a).value == doctest::Approx(std::log(3.0)).epsilon(1e-7));
}

TEST_CASE("Holevo quantity sits between Sibson information and asymmetry") {
  Rng rng(19);
  const auto g = Generator<>::diagonal({0, 1, 2});
  for (int t = 0; t < 3; ++t) {
    const auto probe = random_density(3, rng, 2);
    const SignalEnsemble e = SignalEnsemble::uniform_partition(probe, g, 0, 2 * std::numbers::pi, 6);
    const CMatrix u = random_unitary(3, rng);
    for (double a : {0.5, 2.0, kInf}) {
      const auto asym = asymmetry_numeric(probe, g, a);
      const auto chi = renyi_holevo(e, a, asym.minimizer.matrix());
      CHECK(chi.value <= asym.value + 1e-6);
      Eigen::MatrixXd channel(6, 3);
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 3; ++k)
          channel(j, k) = (u.col(k).adjoint() * e.states[static_cast<std::size_t>(j)].matrix() * u.col(k))(0, 0).real();
      CHECK(sibson_mutual_information(e.priors.probs, channel, a) <= chi.value + 1e-6);
    }
  }
}

TEST_CASE("cell-averaged partition states") {
  const auto g = Generator<>::diagonal({0, 1});
  const DensityOperator<> plus(plus_state());
  const SignalEnsemble e = SignalEnsemble::uniform_partition(plus, g, 0, 2 * std::numbers::pi, 4);
  CHECK_FALSE(e.fromProbe);
  CHECK((e.average_state() - dephase(plus, g).matrix()).norm() < 1e-12);
  // Off-diagonal of the first cell: (1/2) e^{i pi/4} sinc(pi/4).
  const std::complex<double> expected = 0.5 * std::polar(std::sin(std::numbers::pi / 4) / (std::numbers::pi / 4), std::numbers::pi / 4);
  CHECK(std::abs(e.states[0].matrix()(0, 1) - expected) < 1e-12);
}

TEST_CASE("uniform ensembles approach the asymmetry") {
  const auto g = Generator<>::diagonal({0, 1});
  const DensityOperator<> plus(plus_state());
  SigmaSearchOptions o;
  o.starts = 3;
  const auto pts = uniform_ensemble_asymmetry_approximation(plus, g, 2.0, {std::numbers::pi, 4 * std::numbers::pi}, 0.1,
                                                            256, o);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].chi == doctest::Approx(std::log(2.0)).epsilon(0.05 / std::log(2.0)));
  for (const auto& p : pts) CHECK(p.chi <= std::log(2.0) + 1e-6);
  const auto flat = uniform_ensemble_asymmetry_approximation(DensityOperator<>::maximally_mixed(2), g, 2.0, {1.0, 3.0});
  for (const auto& p : flat) CHECK(std::abs(p.chi) < 1e-9);
}

TEST_CASE("coherence measures") {
  const auto basis = Generator<>::number(2);
  const auto diag = coherence_measures(DensityOperator<>::diagonal(VectorXd::Constant(2, 0.5)), basis, 2.0);
  CHECK(std::abs(diag.geometric) < 1e-9);
  CHECK(std::abs(diag.robustness) < 1e-9);
  CHECK(std::abs(diag.relativeEntropy) < 1e-12);
  CHECK(std::abs(diag.orderValue) < 1e-9);

  const auto maxc = coherence_measures(DensityOperator<>(plus_state()), basis, 1.0);
  CHECK(maxc.geometric == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(maxc.robustness == doctest::Approx(1.0).epsilon(1e-12));

  for (double v : {0.3, 0.9}) {
    const auto c = coherent_phase_state_robustness(v);
    CHECK(c.robustness == doctest::Approx(2 * v / (1 - v)).epsilon(1e-6));
    CHECK(c.lastChange < 1e-6);
  }
  CHECK_THROWS_AS(coherence_measures(DensityOperator<>::maximally_mixed(2), Generator<>::diagonal({1, 1}), 1.0),
                  ValidationError);
}

TEST_CASE("coherence bounds") {
  const auto basis = Generator<>::number(2);
  const auto b = coherence_bounds(DensityOperator<>(plus_state()), basis, {}, 0.5);
  CHECK(b.geometricLower == doctest::Approx(1 - 8 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-6));
  CHECK(b.robustnessLower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.robustnessUpper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.geometricUpper == doctest::Approx(0.5).epsilon(1e-12));

  const auto flat = coherence_bounds(DensityOperator<>::diagonal(VectorXd::Constant(2, 0.5)), basis, {}, 2.0);
  CHECK(flat.renyiLower < 1e-12);
  CHECK(flat.geometricLower == 0.0);
  CHECK(flat.robustnessLower == 0.0);

  Rng rng(20);
  const auto b3 = Generator<>::number(3);
  for (int t = 0; t < 4; ++t) {
    const bool pure = t % 2 == 0;
    const auto rho = pure ? random_pure(3, rng) : random_density(3, rng);
    std::vector<double> zeta = {uniform(rng, 0, 6), uniform(rng, 0, 6), uniform(rng, 0, 6)};
    const auto c = coherence_measures(rho, b3, 2.0);
    const auto bb = coherence_bounds(rho, b3, zeta, 2.0);
    CHECK(bb.renyiLower <= c.orderValue + 1e-6);
    CHECK(c.orderValue <= bb.renyiUpper + 1e-6);
    CHECK(bb.geometricLower <= c.geometric + 1e-6);
    CHECK(c.geometric <= bb.geometricUpper + 1e-6);
    CHECK(bb.robustnessLower <= c.robustness + 1e-6);
    CHECK(c.robustness <= bb.robustnessUpper + 1e-6);
    CHECK(c.robustness <= bb.robustnessComparison + 1e-6);
    if (pure) {
      CHECK(c.orderValue == doctest::Approx(bb.renyiUpper).epsilon(1e-9));
      CHECK(c.geometric == doctest::Approx(bb.geometricUpper).epsilon(1e-9));
      CHECK(c.robustness == doctest::Approx(bb.robustnessUpper).epsilon(1e-9));
    }
  }
}

TEST_CASE("merging eigenvalues cannot increase asymmetry") {
  Rng rng(21);
  const auto g = Generator<>::diagonal({0, 1, 2, 3});
  const auto h = g.mapped([](double x) { return std::fmod(x, 2.0); });
  for (int t = 0; t < 3; ++t) {
    const auto rho = random_density(4, rng);
    for (double a : {0.5, 1.0, 3.0}) {
      const auto full = asymmetry_numeric(rho, g, a);
      SigmaSearchOptions o;
      o.extraStarts.emplace_back("coarser generator", full.minimizer.matrix());
      CHECK(asymmetry_numeric(rho, h, a, o).value <= full.value + 1e-6);
    }
  }
}

TEST_CASE("asymmetry of a reduced state is at most that of the joint state") {
  Rng rng(22);
  const auto g = Generator<>::diagonal({0, 1, 2});
  const auto gJoint = Generator<>::diagonal({0, 0, 1, 1, 2, 2});
  for (int t = 0; t < 3; ++t) {
    const auto joint = random_density(6, rng);
    const auto reduced = partial_trace(joint, {0}, {3, 2});
    for (double a : {0.5, 1.0, 2.0}) {
      const auto j = asymmetry_numeric(joint, gJoint, a);
      SigmaSearchOptions o;
      o.extraStarts.emplace_back("reduced joint minimizer", partial_trace_matrix(j.minimizer.matrix(), {0}, {3, 2}));
      CHECK(asymmetry_numeric(reduced, g, a, o).value <= j.value + 1e-6);
    }
  }
}

TEST_CASE("total uncertainty splits into quantum and classical parts") {
  Rng rng(23);
  const auto g = Generator<>::diagonal({0, 1, 1, 2});
  for (double a : {0.6, 1.0, 2.0}) {
    const RenyiOrder beta = RenyiOrder(a).conjugate();
    const auto rho = random_density(4, rng);
    const double hg = renyi_entropy(eigenspace_weights(rho.matrix(), g.decomposition()), a);
    CHECK(hg - asymmetry_numeric(rho, g, beta).value >= -1e-6);
    const auto psi = random_pure(4, rng);
    const double hp = renyi_entropy(eigenspace_weights(psi.matrix(), g.decomposition()), a);
    CHECK(std::abs(hp - asymmetry_numeric(psi, g, beta).value) < 1e-6);
    const auto inv = dephase(rho, g);
    CHECK(std::abs(asymmetry_numeric(inv, g, beta).value) < 1e-9);
    CHECK(asymmetry_numeric(rho, g, beta).value > 1e-4);
  }
}
