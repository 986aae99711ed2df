#include <doctest.h>

#include <cmath>

#include "renyi/metrology.hpp"
#include "renyi/random.hpp"
#include "renyi/time_energy.hpp"

using namespace renyi;

namespace {

const double kSqrt2 = std::sqrt(2.0);

CVector qubit_in(Index dim) {
  CVector v = CVector::Zero(dim);
  v(0) = v(1) = 1.0 / kSqrt2;
  return v;
}

// tr[rho M_t] with M_t assembled as a matrix.
double direct_time_density(const DensityOperator<>& rho, const std::vector<double>& e, Index deg, double t) {
  const Index L = static_cast<Index>(e.size());
  CMatrix m = CMatrix::Zero(L * deg, L * deg);
  for (Index a = 0; a < L; ++a)
    for (Index b = 0; b < L; ++b)
      for (Index d = 0; d < deg; ++d) m(a * deg + d, b * deg + d) = std::polar(1.0, -(e[a] - e[b]) * t);
  return (rho.matrix() * m).trace().real();
}

WindowSchedule short_schedule() {
  WindowSchedule s;
  s.windows = 11;
  return s;
}

}  // namespace

TEST_CASE("rationalize finds bounded-denominator convergents") {
  auto r = rationalize(kPi, 1e-6, 1000);
  REQUIRE(r);
  CHECK(r->first == 355);
  CHECK(r->second == 113);
  r = rationalize(7.0 / 3.0, 1e-12, 1000);
  REQUIRE(r);
  CHECK(r->first == 7);
  CHECK(r->second == 3);
  CHECK_FALSE(rationalize(kSqrt2, 1e-9, 1000));
  r = rationalize(-2.5, 1e-12, 10);
  REQUIRE(r);
  CHECK(r->first == -5);
  CHECK(r->second == 2);
}

TEST_CASE("spectrum classification") {
  EnergySpectrum a({0.0, 1.0, 2.0});
  CHECK(a.periodic());
  CHECK(a.omega() == doctest::Approx(1.0));
  CHECK(a.quanta() == std::vector<int>{0, 1, 2});

  EnergySpectrum b({1.0, 3.0, 7.0});
  CHECK(b.periodic());
  CHECK(b.omega() == doctest::Approx(2.0));
  CHECK(b.quanta() == std::vector<int>{0, 1, 3});
  CHECK(b.period() == doctest::Approx(kPi));

  EnergySpectrum c({0.0, 2.0 / 3.0, 1.0});
  CHECK(c.periodic());
  CHECK(c.omega() == doctest::Approx(1.0 / 3.0));
  CHECK(c.quanta() == std::vector<int>{0, 2, 3});

  CHECK_FALSE(EnergySpectrum({0.0, 1.0, kSqrt2}).periodic());
  CHECK(EnergySpectrum({0.3}).periodic());
  CHECK_THROWS_AS(EnergySpectrum({0.0, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(EnergySpectrum({0.0, 1.0}, 0), ValidationError);
}

TEST_CASE("time density matches the trace against the time-translated projector family") {
  Rng rng(3);
  for (Index deg : {1, 2}) {
    const std::vector<double> e{0.0, 1.0, kSqrt2};
    const EnergySpectrum s(e, deg);
    const auto rho = random_density(s.dim(), rng);
    const auto p = almost_periodic_density(rho, s);
    for (double t : {0.0, 0.37, 2.9, 41.2, -7.5}) CHECK(p(t) == doctest::Approx(direct_time_density(rho, e, deg, t)).epsilon(1e-12));
  }
  const EnergySpectrum q({0.0, 2.0});
  const auto p = almost_periodic_density(DensityOperator<>::pure(qubit_in(2)), q);
  for (double t : {0.0, 0.5, 1.3}) CHECK(p(t) == doctest::Approx(1.0 + std::cos(2.0 * t)));
}

TEST_CASE("long-time means: periodic and quasi-periodic paths") {
  const auto f = [](double t) { return std::pow(1.0 + std::cos(t), 2); };
  const auto per = besicovitch_mean(f, {-1.0, 0.0, 1.0}, 2.0 * kPi);
  CHECK(per.exactPeriod);
  CHECK(per.value == doctest::Approx(1.5).epsilon(1e-12));

  const auto win = besicovitch_mean(f, {-1.0, 0.0, 1.0}, std::nullopt);
  CHECK_FALSE(win.exactPeriod);
  CHECK(win.windowsUsed == 17);
  CHECK(win.value == doctest::Approx(1.5).epsilon(1e-7));
  CHECK(win.converged);

  const auto g = [](double t) { return std::pow(1.0 + std::cos(t) + std::cos(kSqrt2 * t), 2); };
  const auto qp = besicovitch_mean(g, {-kSqrt2, -1.0, 0.0, 1.0, kSqrt2}, std::nullopt, short_schedule());
  CHECK(qp.value == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(qp.spread < 1e-4);
}

TEST_CASE("qubit entropies in closed form on both paths") {
  const auto rho2 = DensityOperator<>::pure(qubit_in(2));
  const EnergySpectrum q({0.0, 1.0});
  CHECK(almost_periodic_renyi_entropy(rho2, q, 2.0).value == doctest::Approx(-std::log(1.5)).epsilon(1e-10));
  CHECK(almost_periodic_renyi_entropy(rho2, q, 1.0).value == doctest::Approx(std::log(2.0) - 1.0).epsilon(1e-8));
  CHECK(almost_periodic_renyi_entropy(rho2, q, RenyiOrder::infinity()).value ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(information_gain_lower_bound(rho2, q, 1.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-8));

  const EnergySpectrum ext({0.0, 1.0, kSqrt2});
  REQUIRE_FALSE(ext.periodic());
  const auto h = almost_periodic_renyi_entropy(DensityOperator<>::pure(qubit_in(3)), ext, 2.0);
  CHECK_FALSE(h.mean.exactPeriod);
  CHECK(std::abs(h.value + std::log(1.5)) < 1e-4);
}

TEST_CASE("order-2 mean equals the sum of squared coefficients") {
  Rng rng(8);
  const EnergySpectrum s({0.0, 1.0, kSqrt2});
  for (int trial = 0; trial < 3; ++trial) {
    const auto rho = random_density(3, rng);
    const auto p = almost_periodic_density(rho, s);
    double parseval = 0;
    for (const auto& c : p.coefficients) parseval += std::norm(c);
    const auto h = almost_periodic_renyi_entropy(rho, s, 2.0, short_schedule());
    CHECK(std::abs(h.value + std::log(parseval)) < 1e-4);
    if (trial == 0) {
      const auto full = almost_periodic_renyi_entropy(rho, s, 2.0);
      CHECK(full.mean.windowsUsed == 17);
      CHECK(std::abs(full.value + std::log(parseval)) < 1e-6);
    }
  }
}

TEST_CASE("periodic reduction: almost-periodic entropy equals period entropy minus log period") {
  Rng rng(12);
  const EnergySpectrum s({0.0, 0.7, 2.1}, 2);
  REQUIRE(s.periodic());
  const Index n = 8192;
  WindowSchedule sched;
  sched.periodPoints = static_cast<int>(n);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = random_density(s.dim(), rng);
    const auto pt = periodic_time_density(rho, s, n);
    CHECK(pt.normalization() == doctest::Approx(1.0).epsilon(1e-10));
    for (const RenyiOrder& a : {RenyiOrder(0.5), RenyiOrder(1.0), RenyiOrder(2.0), RenyiOrder::infinity()}) {
      const double lhs = almost_periodic_renyi_entropy(rho, s, a, sched).value;
      CHECK(lhs == doctest::Approx(renyi_entropy(pt, a) - std::log(s.period())).epsilon(1e-8));
    }
  }
}

TEST_CASE("asymmetry plus almost-periodic entropy is nonnegative") {
  Rng rng(21);
  SigmaSearchOptions opt;
  opt.starts = 3;
  const EnergySpectrum per({0.0, 1.0, 3.0});
  const EnergySpectrum ap({0.0, 1.0, kSqrt2});
  for (int trial = 0; trial < 4; ++trial) {
    const auto rho = trial % 2 ? random_density(3, rng) : random_pure(3, rng);
    for (const RenyiOrder& a : {RenyiOrder(0.75), RenyiOrder(1.0), RenyiOrder(2.0)}) {
      for (const auto* s : {&per, &ap}) {
        const auto rep = almost_periodic_tradeoff_check(rho, *s, a, short_schedule(), opt);
        REQUIRE(rep.checks.size() == 3);
        for (const auto& c : rep.checks) CHECK_MESSAGE(c.slack >= -1e-5, c.name << " alpha=" << a.str());
      }
    }
  }
}

TEST_CASE("information gain stays below log 2 without shared resonances") {
  Rng rng(5);
  const EnergySpectrum s({0.0, 1.0, 3.0});  // gaps 1, 2, 3 are distinct
  for (int trial = 0; trial < 20; ++trial) {
    const double gain = information_gain_lower_bound(random_pure(3, rng), s, 1.0);
    CHECK(gain <= std::log(2.0) + 1e-8);
    CHECK(gain >= 0.0);
  }
}

TEST_CASE("time estimation bounds on periodic spectra") {
  Rng rng(31);
  SigmaSearchOptions opt;
  opt.starts = 3;
  const EnergySpectrum s({0.5, 1.0, 2.0, 2.5});  // omega = 0.5, quanta 0,1,3,4
  REQUIRE(s.periodic());
  for (int trial = 0; trial < 6; ++trial) {
    const auto rho = trial % 2 ? random_density(4, rng) : random_pure(4, rng);
    for (double frac : {0.3, 1.0}) {
      const auto rep = time_estimation_bounds(rho, s, frac * s.period(), RenyiOrder(trial % 3 ? 1.0 : 2.0), 1024, opt);
      CHECK(rep.heisenbergAvailable);
      REQUIRE(rep.checks.size() == 4);
      for (const auto& c : rep.checks) CHECK_MESSAGE(c.holds(1e-6), c.name << " slack " << c.slack);
    }
  }
}

TEST_CASE("time estimation scales inversely with the energy scale") {
  Rng rng(40);
  const auto rho = random_pure(3, rng);
  const EnergySpectrum a({0.0, 1.0, 2.0}), b({0.0, 3.0, 6.0});
  const auto ra = time_estimation_bounds(rho, a, a.period(), 1.0, 512);
  const auto rb = time_estimation_bounds(rho, b, b.period(), 1.0, 512);
  CHECK(rb.rmse == doctest::Approx(ra.rmse / 3.0).epsilon(1e-10));
  CHECK(rb.errorEntropy == doctest::Approx(ra.errorEntropy - std::log(3.0)).epsilon(1e-10));
  CHECK(canonical_time_deviation(rho, b) == doctest::Approx(canonical_time_deviation(rho, a) / 3.0).epsilon(1e-8));
}

TEST_CASE("nonperiodic spectra: tradeoff only, deviation refused") {
  Rng rng(44);
  const EnergySpectrum s({0.0, 1.0, kSqrt2});
  for (int trial = 0; trial < 3; ++trial) {
    const auto rho = random_density(3, rng);
    const auto rep = time_estimation_bounds(rho, s, 2.0, 1.0, 512);
    CHECK_FALSE(rep.heisenbergAvailable);
    CHECK_FALSE(rep.refusal.empty());
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].name == "time_tradeoff");
    CHECK(rep.checks[0].holds(1e-6));
  }
  CHECK_THROWS_AS(canonical_time_deviation(random_pure(3, rng), s), ValidationError);
  CHECK_THROWS_AS(periodic_time_density(random_pure(3, rng), s), ValidationError);
}

TEST_CASE("periodic approximations leave the order-2 entropy unchanged without new resonances") {
  Rng rng(50);
  const EnergySpectrum s({0.0, 1.0, kSqrt2});
  const auto rho = random_density(3, rng);
  const auto trend = periodic_approximation_trend(rho, s, 2.0, {1, 2, 5, 29, 408}, short_schedule());
  REQUIRE(trend.size() == 4);  // denominator 1 merges two levels
  for (const auto& pt : trend) CHECK(pt.change < 1e-4);
  const auto t1 = periodic_approximation_trend(rho, s, 1.0, {29, 408}, short_schedule());
  REQUIRE(t1.size() == 2);
  CHECK(t1[1].change < 1e-3);
}

TEST_CASE("json summary of a long-time mean") {
  const auto m = besicovitch_mean([](double) { return 2.0; }, {0.0}, std::nullopt);
  const auto j = to_json(m);
  CHECK(j["value"].get<double>() == 2.0);
  CHECK(j["converged"].get<bool>());
}

TEST_CASE("eigenstates: flat time density, zero entropies, saturated tradeoff") {
  const EnergySpectrum s({0.0, 1.0, kSqrt2});
  CVector v = CVector::Zero(3);
  v(1) = 1.0;
  const auto rho = DensityOperator<>::pure(v);
  const auto p = almost_periodic_density(rho, s);
  for (double t : {0.0, 3.3, 100.0}) CHECK(p(t) == doctest::Approx(1.0));
  const auto rep = almost_periodic_tradeoff_check(rho, s, 2.0, short_schedule());
  CHECK(std::abs(rep.apEntropy) < 1e-12);
  CHECK(std::abs(rep.checks[0].slack) < 1e-9);
  CHECK(information_gain_lower_bound(rho, s, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("pure qubit tradeoff slack is log 4/3") {
  const auto rep = almost_periodic_tradeoff_check(DensityOperator<>::pure(qubit_in(2)), EnergySpectrum({0.0, 1.0}), 2.0);
  CHECK(rep.asymmetry == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(rep.checks[0].slack == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("random states on a four-level incommensurate spectrum") {
  Rng rng(61);
  SigmaSearchOptions opt;
  opt.starts = 3;
  const EnergySpectrum s({0.0, 1.0, kSqrt2, std::sqrt(5.0)});
  REQUIRE_FALSE(s.periodic());
  WindowSchedule sched;
  sched.windows = 9;
  for (int trial = 0; trial < 3; ++trial) {
    const auto rho = trial ? random_density(4, rng) : random_pure(4, rng);
    const auto p = almost_periodic_density(rho, s);
    const auto norm = besicovitch_mean([&p](double t) { return p(t); }, p.active_frequencies(), std::nullopt, sched);
    CHECK(besicovitch_mean(p, [](double x) { return x; }, sched).value == doctest::Approx(norm.value).epsilon(1e-9));
    CHECK(std::abs(norm.value - 1.0) < 1e-4);
    if (trial == 0) {
      const auto full = besicovitch_mean(p, [](double x) { return x; });
      CHECK(full.windowsUsed == 17);
      CHECK(std::abs(full.value - 1.0) < 1e-5);
    }
    for (const RenyiOrder& a : {RenyiOrder(0.5), RenyiOrder(1.0), RenyiOrder(2.0)}) {
      const auto rep = almost_periodic_tradeoff_check(rho, s, a, sched, opt);
      for (const auto& c : rep.checks) CHECK_MESSAGE(c.slack >= -1e-5, c.name);
    }
  }
}

TEST_CASE("harmonic time estimation reproduces number-phase estimation under phi = omega t") {
  Rng rng(70);
  const double w = 0.8;
  const EnergySpectrum s({0.2, 0.2 + w, 0.2 + 2 * w, 0.2 + 3 * w});
  const Index grid = 1024;
  for (int trial = 0; trial < 3; ++trial) {
    const auto rho = random_density(4, rng);
    const auto rep = time_estimation_bounds(rho, s, 0.6 * s.period(), 1.0, grid);
    const EstimationScenario phase{rho, Generator<>::number(4), Prior::interval(0.6 * 2.0 * kPi),
                                   PhasePovm::canonical(Generator<>::number(4), grid).estimator(), grid};
    const auto st = interval_error_distribution(phase, {1.0});
    CHECK(rep.rmse * w == doctest::Approx(st.rmse).epsilon(1e-10));
    CHECK(rep.errorEntropy + std::log(w) == doctest::Approx(st.entropy(1.0)).epsilon(1e-10));
  }
}

TEST_CASE("ground state of a harmonic spectrum: uniform time error over the period") {
  const EnergySpectrum s({0.0, 2.0, 4.0});
  CVector v = CVector::Zero(3);
  v(0) = 1.0;
  const auto rep = time_estimation_bounds(DensityOperator<>::pure(v), s, s.period(), 1.0, 2048);
  CHECK(rep.rmse == doctest::Approx(s.period() / (2.0 * std::sqrt(3.0))).epsilon(1e-6));
  CHECK(rep.errorEntropy == doctest::Approx(std::log(s.period())).epsilon(1e-9));
}

TEST_CASE("uniform superposition: asymmetry plus period entropy against log period") {
  const EnergySpectrum s({0.0, 1.0, 2.0, 3.0, 4.0});
  const auto rho = DensityOperator<>::pure(CVector::Constant(5, 1.0 / std::sqrt(5.0)));
  for (const RenyiOrder& a : {RenyiOrder(0.5), RenyiOrder(1.0), RenyiOrder(2.0), RenyiOrder::infinity()}) {
    const auto rep = time_estimation_bounds(rho, s, s.period(), a, 1024);
    for (const auto& c : rep.checks)
      if (c.name == "time_energy_tradeoff") CHECK(c.slack >= -1e-6);
  }
}

TEST_CASE("information gain on periodic spectra equals log period minus period entropy") {
  Rng rng(80);
  const EnergySpectrum s({0.0, 1.5, 3.0, 6.0});
  WindowSchedule sched;
  sched.periodPoints = 8192;
  for (int trial = 0; trial < 4; ++trial) {
    const auto rho = random_density(4, rng);
    const auto pt = periodic_time_density(rho, s, 8192);
    for (const RenyiOrder& a : {RenyiOrder(0.75), RenyiOrder(1.0), RenyiOrder(3.0)})
      CHECK(information_gain_lower_bound(rho, s, a, sched) ==
            doctest::Approx(std::log(s.period()) - renyi_entropy(pt, a)).epsilon(1e-6));
  }
}
