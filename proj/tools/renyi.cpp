#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "renyi/io.hpp"
#include "renyi/metrology.hpp"
#include "renyi/quantum.hpp"
#include "renyi/report.hpp"
#include "renyi/time_energy.hpp"

using namespace renyi;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr double kTruncationTol = 1e-8;
constexpr double kApSlackTol = 1e-5;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<RenyiOrder> parse_orders(const std::string& text, bool requireHalf = true) {
  std::vector<RenyiOrder> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    double v = 0;
    if (item == "inf" || item == "infinity") {
      v = kInf;
    } else {
      try {
        std::size_t used = 0;
        v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("not an order: " + item);
      }
    }
    if (std::isnan(v) || v < 0) throw UsageError("orders must lie in [0, inf]: " + item);
    if (requireHalf && v < 0.5 - RenyiOrder::kSnap) throw UsageError("orders below 1/2 are not allowed here: " + item);
    out.emplace_back(v);
  }
  if (out.empty()) throw UsageError("empty order grid");
  return out;
}

json order_json(const RenyiOrder& a) { return a.is_infinite() ? json("inf") : json(a.value()); }

Generator<> make_generator(const std::string& kind, const std::string& levels, Index dim) {
  if (kind == "number") return Generator<>::number(dim);
  if (kind == "jz") {
    if (dim % 2 == 0) throw UsageError("jz generator needs an odd dimension 2j+1");
    return Generator<>::angular_momentum_z(static_cast<int>((dim - 1) / 2));
  }
  if (kind == "levels") {
    std::vector<double> v;
    std::stringstream ss(levels);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (static_cast<Index>(v.size()) != dim) throw UsageError("generator level count differs from the state dimension");
    return Generator<>::diagonal(v);
  }
  throw UsageError("unknown generator: " + kind);
}

// Pads with zeros or truncates to cutoff + 1 levels; truncation refuses to drop more than kTruncationTol weight.
DensityOperator<> fit_cutoff(const DensityOperator<>& rho, Index cutoff) {
  const Index d = cutoff + 1;
  if (d == rho.dim()) return rho;
  CMatrix m = CMatrix::Zero(d, d);
  if (d > rho.dim()) {
    m.topLeftCorner(rho.dim(), rho.dim()) = rho.matrix();
    return DensityOperator<>(m);
  }
  const double tail = rho.populations().tail(rho.dim() - d).sum();
  if (tail > kTruncationTol) {
    std::ostringstream msg;
    msg << "truncation tail weight too large: " << tail << " beyond n_c = " << cutoff;
    throw ValidationError(msg.str());
  }
  m = rho.matrix().topLeftCorner(d, d);
  m /= m.trace().real();
  return DensityOperator<>(m);
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void emit_rows(const std::vector<report::Row>& rows, const std::string& format, report::LogBase base) {
  if (format == "json") {
    std::cout << json{{"unit", report::unit_name(base)}, {"rows", report::rows_to_json(rows, base)}}.dump(2) << "\n";
  } else {
    report::write_csv(std::cout, rows, base);
  }
}

SigmaSearchOptions search_options(int starts, unsigned seed) {
  SigmaSearchOptions o;
  o.starts = starts;
  o.seed = seed;
  return o;
}

// ---- f-curve

int cmd_f_curve(double lo, double hi, int points) {
  if (lo < 0.5 - RenyiOrder::kSnap) throw UsageError("alpha below 1/2 is outside the domain of f");
  if (points < 1) throw UsageError("points must be positive");
  if (hi < lo) throw UsageError("alpha-max below alpha-min");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
  const ScalingMaximum best = maximize_scaling_function();
  if (points > 1 && best.alphaStar >= lo && best.alphaStar <= hi) {
    grid.push_back(best.alphaStar);
    std::sort(grid.begin(), grid.end());
  }
  std::size_t argmax = 0;
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f[i] = scaling_function_f(grid[i]);
    if (f[i] > f[argmax]) argmax = i;
  }
  io::write_csv_row(std::cout, {"alpha", "f", "scaled_f", "is_max"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    io::write_csv_row(std::cout, {io::csv_number(grid[i]), io::csv_number(f[i]),
                                  io::csv_number(scaled_scaling_function(grid[i])), i == argmax ? "1" : "0"});
  return 0;
}

// ---- bounds-report

struct BoundsConfig {
  std::string state, generator = "number", levels, prior = "circle", estimator = "canonical", alphas = "0.5,0.75,1,2,inf";
  std::string format = "csv";
  double priorLength = 2.0 * kPi, priorCenter = 0.0;
  Index grid = 2048;
  long long cutoff = -1;
  int starts = 4;
  unsigned seed = 20240611;
  bool audit = false;
};

std::vector<report::Row> bounds_rows(const BoundsConfig& c, const DensityOperator<>& rho, Index grid,
                                     const std::string& scenario, const std::vector<RenyiOrder>& alphas) {
  const Index cutoff = rho.dim() - 1;
  const Generator<> g = make_generator(c.generator, c.levels, rho.dim());
  if (c.prior != "circle" && c.prior != "interval") throw UsageError("prior must be circle or interval");
  const Prior prior = c.prior == "circle" ? Prior::circle() : Prior::interval(c.priorLength, c.priorCenter);
  const SigmaSearchOptions opt = search_options(c.starts, c.seed);

  std::vector<report::Row> rows;
  auto add = [&](const BoundCheck& b, bool info = false) { rows.push_back({scenario, b, cutoff, grid, info}); };

  if (g.kind() == GeneratorKind::AngularMomentumZ) {
    std::optional<EstimatorPovm> est;
    if (c.estimator == "constant") est = EstimatorPovm::constant(rho.dim(), 0.0);
    const RotationReport r = rotation_bounds(rho, prior, alphas, est, grid);
    for (const auto& b : r.checks) add(b);
    return rows;
  }

  EstimatorPovm est;
  if (c.estimator == "canonical")
    est = PhasePovm::canonical(g, grid).estimator();
  else if (c.estimator == "constant")
    est = EstimatorPovm::constant(rho.dim(), 0.0);
  else
    throw UsageError("estimator must be canonical or constant");
  const EstimationScenario sc{rho, g, prior, est, grid};

  if (prior.kind == PriorKind::UniformCircle) {
    const ErrorStatistics st = error_distribution(sc, alphas);
    if (g.kind() == GeneratorKind::Number) {
      for (const auto& b : rmse_bound_checks(rho, st.rmse)) add(b);
      const FisherComparison fc = fisher_comparison(rho);
      add(make_check("fisher_reference", fc.fisherBound, st.rmse), true);
    }
    for (const auto& a : alphas) {
      add(error_tradeoff_check(sc, st, a));
      const double asym = checker_asymmetry(rho, g, a, opt);
      if (g.kind() == GeneratorKind::Number)
        for (const auto& b : length_deviation_checks(rho, std::numeric_limits<double>::quiet_NaN(), a))
          if (!std::isnan(b.alpha) || &a == &alphas.front()) add(b);
      for (const auto& b : phase_asymmetry_checks(rho, g, a, asym, grid)) add(b);
    }
  } else {
    const ErrorStatistics st = interval_error_distribution(sc, alphas);
    for (const auto& a : alphas) {
      const double asym = checker_asymmetry(rho, g, a, opt);
      for (const auto& b : interval_checks(sc, st, a, asym)) add(b);
    }
  }
  return rows;
}

int cmd_bounds_report(const BoundsConfig& c, report::LogBase base) {
  const auto alphas = parse_orders(c.alphas);
  DensityOperator<> rho = io::load_density(c.state);
  if (c.cutoff >= 0) rho = fit_cutoff(rho, static_cast<Index>(c.cutoff));
  std::vector<report::Row> rows = bounds_rows(c, rho, c.grid, stem(c.state), alphas);
  if (c.audit) {
    const Index auditCutoff = 2 * (rho.dim() - 1) + 1;
    const auto more = bounds_rows(c, fit_cutoff(rho, auditCutoff), 2 * c.grid, stem(c.state) + "/audit", alphas);
    double worst = 0;
    for (std::size_t i = 0; i < std::min(rows.size(), more.size()); ++i)
      if (std::isfinite(rows[i].check.measured) && std::isfinite(more[i].check.measured))
        worst = std::max(worst, std::abs(rows[i].check.measured - more[i].check.measured));
    std::cerr << "audit: n_c " << rho.dim() - 1 << " -> " << auditCutoff << ", grid " << c.grid << " -> "
              << 2 * c.grid << ", max |delta measured| = " << worst << "\n";
    rows.insert(rows.end(), more.begin(), more.end());
  }
  emit_rows(rows, c.format, base);
  return report::violation_count(rows) > 0 ? kExitViolation : 0;
}

// ---- asymmetry

json scale_asymmetry(json j, report::LogBase base) {
  j["value"] = report::in_units(j["value"].get<double>(), base);
  if (j.contains("starts"))
    for (auto& s : j["starts"]) s["value"] = report::in_units(s["value"].get<double>(), base);
  return j;
}

int cmd_asymmetry(const std::string& state, const std::string& gen, const std::string& levels, const std::string& alphaText,
                  int starts, unsigned seed, report::LogBase base) {
  const auto alphas = parse_orders(alphaText);
  const DensityOperator<> rho = io::load_density(state);
  const Generator<> g = make_generator(gen, levels, rho.dim());
  const SigmaSearchOptions opt = search_options(starts, seed);
  json results = json::array();
  for (const auto& a : alphas) {
    json r{{"alpha", order_json(a)},
           {"numeric", scale_asymmetry(to_json(asymmetry_numeric(rho, g, a, opt)), base)},
           {"upper_bound", report::in_units(asymmetry_upper_bound(rho, g, a), base)}};
    if (rho.is_pure(1e-12)) r["pure"] = scale_asymmetry(to_json(asymmetry_pure(rho, g, a)), base);
    results.push_back(r);
  }
  std::cout << json{{"state", stem(state)}, {"unit", report::unit_name(base)}, {"results", results}}.dump(2) << "\n";
  return 0;
}

// ---- coherence

int cmd_coherence(const std::string& state, const std::string& alphaText, Index grid, int starts, unsigned seed,
                  report::LogBase base) {
  const auto alphas = parse_orders(alphaText);
  const DensityOperator<> rho = io::load_density(state);
  const Generator<> basis = Generator<>::number(rho.dim());
  const SigmaSearchOptions opt = search_options(starts, seed);
  json results = json::array();
  int violations = 0;
  for (const auto& a : alphas) {
    const CoherenceMeasures m = coherence_measures(rho, basis, a, opt);
    const CoherenceBounds b = coherence_bounds(rho, basis, {}, a, grid);
    const double tol = kSlackTol;
    if (m.orderValue < b.renyiLower - tol || m.orderValue > b.renyiUpper + tol) ++violations;
    if (m.geometric < b.geometricLower - tol || m.geometric > b.geometricUpper + tol) ++violations;
    if (m.robustness < b.robustnessLower - tol || m.robustness > b.robustnessUpper + tol) ++violations;
    results.push_back({{"alpha", order_json(a)},
                       {"C_alpha", report::in_units(m.orderValue, base)},
                       {"C_alpha_lower", report::in_units(b.renyiLower, base)},
                       {"C_alpha_upper", report::in_units(b.renyiUpper, base)},
                       {"C_g", m.geometric},
                       {"C_g_lower", b.geometricLower},
                       {"C_g_upper", b.geometricUpper},
                       {"C_R", m.robustness},
                       {"C_R_lower", b.robustnessLower},
                       {"C_R_upper", b.robustnessUpper},
                       {"C_R_l1_comparison", b.robustnessComparison},
                       {"relative_entropy_coherence", report::in_units(m.relativeEntropy, base)},
                       {"pure", m.pure}});
  }
  std::cout << json{{"state", stem(state)}, {"unit", report::unit_name(base)}, {"results", results}}.dump(2) << "\n";
  return violations > 0 ? kExitViolation : 0;
}

// ---- holevo-chain

int cmd_holevo_chain(const std::string& state, const std::string& gen, const std::string& levels,
                     const std::string& alphaText, int atoms, double length, Index grid, int starts, unsigned seed,
                     const std::string& format, report::LogBase base) {
  const auto alphas = parse_orders(alphaText);
  if (atoms < 1) throw UsageError("atoms must be positive");
  const DensityOperator<> rho = io::load_density(state);
  const Generator<> g = make_generator(gen, levels, rho.dim());
  const SignalEnsemble e = SignalEnsemble::uniform_partition(rho, g, -0.5 * length, 0.5 * length, atoms);
  const EstimatorPovm meas = PhasePovm::canonical(g, grid).estimator();
  const SigmaSearchOptions opt = search_options(starts, seed);
  std::vector<report::Row> rows;
  for (const auto& a : alphas) {
    const InequalityChain ch = inequality_chain(e, rho, meas, a, opt);
    for (const auto& b : ch.checks) rows.push_back({stem(state), b, rho.dim() - 1, grid, false});
  }
  emit_rows(rows, format, base);
  return report::violation_count(rows) > 0 ? kExitViolation : 0;
}

// ---- time-energy

int cmd_time_energy(const std::string& state, const std::string& spectrumPath, const std::string& alphaText,
                    double priorLength, int windows, Index grid, int starts, unsigned seed, const std::string& format,
                    report::LogBase base) {
  const auto alphas = parse_orders(alphaText);
  const DensityOperator<> rho = io::load_density(state);
  const io::SpectrumSpec spec = io::load_spectrum(spectrumPath);
  const EnergySpectrum s(spec.levels, spec.degeneracy);
  if (rho.dim() != s.dim()) throw ValidationError("state dimension differs from levels x degeneracy");
  WindowSchedule sched;
  if (windows > 0) sched.windows = windows;
  const SigmaSearchOptions opt = search_options(starts, seed);
  const double tol = s.periodic() ? kSlackTol : kApSlackTol;

  int violations = 0;
  json results = json::array();
  std::vector<std::vector<std::string>> csvRows;
  for (const auto& a : alphas) {
    const ApTradeoffReport ap = almost_periodic_tradeoff_check(rho, s, a, sched, opt);
    json checks = json::array();
    for (const auto& c : ap.checks) {
      if (!c.holds(tol)) ++violations;
      checks.push_back(report::rows_to_json({{stem(state), c, rho.dim(), 0, false}}, base)[0]);
    }
    json entry{{"alpha", order_json(a)},
               {"H_ap", report::in_units(ap.apEntropy, base)},
               {"information_gain_lower_bound", report::in_units(-ap.apEntropy, base)},
               {"asymmetry", report::in_units(ap.asymmetry, base)},
               {"mean", to_json(ap.mean)},
               {"checks", checks}};
    const double length = priorLength > 0 ? priorLength : (s.periodic() ? s.period() : 2.0);
    const TimeEstimationReport te = time_estimation_bounds(rho, s, length, a, grid, opt);
    json est{{"rmse", te.rmse}, {"prior_length", te.intervalLength}, {"heisenberg_available", te.heisenbergAvailable}};
    if (!te.refusal.empty()) est["refusal"] = te.refusal;
    json estChecks = json::array();
    for (const auto& c : te.checks) {
      if (!c.holds(kSlackTol)) ++violations;
      estChecks.push_back(report::rows_to_json({{stem(state), c, rho.dim(), grid, false}}, base)[0]);
    }
    est["checks"] = estChecks;
    entry["estimation"] = est;
    results.push_back(entry);
    csvRows.push_back({a.str(), io::csv_number(report::in_units(ap.apEntropy, base)),
                       std::to_string(ap.mean.windowsUsed), io::csv_number(report::in_units(ap.mean.spread, base))});
  }
  if (format == "csv") {
    io::write_csv_row(std::cout, {"order", "H_ap", "windows_used", "spread"});
    for (const auto& r : csvRows) io::write_csv_row(std::cout, r);
  } else {
    std::cout << json{{"state", stem(state)},
                      {"unit", report::unit_name(base)},
                      {"periodic", s.periodic()},
                      {"period", s.periodic() ? json(s.period()) : json(nullptr)},
                      {"results", results}}
                     .dump(2)
              << "\n";
  }
  return violations > 0 ? kExitViolation : 0;
}

// ---- conjecture-search

int cmd_conjecture(const std::string& family, Index cutoff, int budget, unsigned seed) {
  ProbeFamily f;
  if (family == "two-term")
    f = ProbeFamily::TwoTerm;
  else if (family == "real")
    f = ProbeFamily::RealAmplitudes;
  else
    throw UsageError("family must be two-term or real");
  if (cutoff < 1 || budget < 1) throw UsageError("cutoff and budget must be positive");
  std::cout << to_json(conjecture_search(f, cutoff, budget, seed)).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi entropic uncertainty relations, asymmetry and Heisenberg limits on truncated systems"};
  app.require_subcommand(1);
  bool bits = false;
  app.add_flag("--bits", bits, "Report logarithmic quantities in bits (default nats; RENYI_LOG_BASE also applies)");

  double fLo = 0.5, fHi = 5.0;
  int fPoints = 91;
  auto* fc = app.add_subcommand("f-curve", "Scaling function f(alpha) and alpha^{alpha/(alpha-1)} f(alpha) as CSV");
  fc->add_option("--alpha-min", fLo, "Smallest order (>= 1/2)");
  fc->add_option("--alpha-max", fHi, "Largest order");
  fc->add_option("--points", fPoints, "Grid points");

  BoundsConfig bc;
  auto* br = app.add_subcommand("bounds-report", "Uncertainty relations and RMSE bounds for a probe state");
  br->add_option("--state", bc.state, "State JSON file")->required();
  br->add_option("--generator", bc.generator, "number, jz or levels");
  br->add_option("--levels", bc.levels, "Comma-separated generator eigenvalues for --generator levels");
  br->add_option("--prior", bc.prior, "circle or interval");
  br->add_option("--prior-length", bc.priorLength, "Interval prior length");
  br->add_option("--prior-center", bc.priorCenter, "Interval prior center");
  br->add_option("--estimator", bc.estimator, "canonical or constant");
  br->add_option("--alphas", bc.alphas, "Comma-separated orders, inf allowed");
  br->add_option("--grid", bc.grid, "Angular grid size");
  br->add_option("--cutoff", bc.cutoff, "Number cutoff n_c (pads or truncates the state)");
  br->add_option("--starts", bc.starts, "Optimizer starts for mixed-state asymmetry");
  br->add_option("--seed", bc.seed, "Optimizer seed");
  br->add_option("--format", bc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  br->add_flag("--audit", bc.audit, "Repeat with doubled n_c and grid and report deltas");

  std::string aState, aGen = "number", aLevels, aAlphas = "0.5,1,2,inf";
  int aStarts = 8;
  unsigned aSeed = 20240611;
  auto* as = app.add_subcommand("asymmetry", "Renyi asymmetry with optimizer diagnostics (JSON)");
  as->add_option("--state", aState, "State JSON file")->required();
  as->add_option("--generator", aGen, "number, jz or levels");
  as->add_option("--levels", aLevels, "Comma-separated generator eigenvalues");
  as->add_option("--alphas", aAlphas, "Comma-separated orders");
  as->add_option("--starts", aStarts, "Optimizer starts");
  as->add_option("--seed", aSeed, "Optimizer seed");

  std::string cState, cAlphas = "0.5,1,2,inf";
  Index cGrid = 4096;
  int cStarts = 8;
  unsigned cSeed = 20240611;
  auto* co = app.add_subcommand("coherence", "Coherence measures and their phase-density bounds (JSON)");
  co->add_option("--state", cState, "State JSON file")->required();
  co->add_option("--alphas", cAlphas, "Comma-separated orders");
  co->add_option("--grid", cGrid, "Phase grid size");
  co->add_option("--starts", cStarts, "Optimizer starts");
  co->add_option("--seed", cSeed, "Optimizer seed");

  std::string hState, hGen = "number", hLevels, hAlphas = "0.5,1,2", hFormat = "csv";
  int hAtoms = 6, hStarts = 4;
  double hLength = 2.0 * kPi;
  Index hGrid = 64;
  unsigned hSeed = 20240611;
  auto* hc = app.add_subcommand("holevo-chain", "Measurement information <= Holevo <= asymmetry <= conjugate entropy");
  hc->add_option("--state", hState, "State JSON file")->required();
  hc->add_option("--generator", hGen, "number, jz or levels");
  hc->add_option("--levels", hLevels, "Comma-separated integer generator eigenvalues");
  hc->add_option("--alphas", hAlphas, "Comma-separated orders");
  hc->add_option("--atoms", hAtoms, "Prior cells");
  hc->add_option("--prior-length", hLength, "Prior interval length");
  hc->add_option("--grid", hGrid, "Outcomes of the canonical measurement");
  hc->add_option("--starts", hStarts, "Optimizer starts");
  hc->add_option("--seed", hSeed, "Optimizer seed");
  hc->add_option("--format", hFormat, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string tState, tSpectrum, tAlphas = "0.5,1,2", tFormat = "json";
  double tLength = 0;
  int tWindows = 0, tStarts = 4;
  Index tGrid = 1024;
  unsigned tSeed = 20240611;
  auto* te = app.add_subcommand("time-energy", "Almost-periodic time entropies and time-energy relations");
  te->add_option("--state", tState, "State JSON file in the energy basis")->required();
  te->add_option("--spectrum", tSpectrum, "Spectrum JSON file {levels, degeneracy}")->required();
  te->add_option("--alphas", tAlphas, "Comma-separated orders");
  te->add_option("--prior-length", tLength, "Time prior length (default: period, or 2 when nonperiodic)");
  te->add_option("--windows", tWindows, "Window count for nonperiodic long-time means");
  te->add_option("--grid", tGrid, "Time grid size for estimation");
  te->add_option("--starts", tStarts, "Optimizer starts");
  te->add_option("--seed", tSeed, "Optimizer seed");
  te->add_option("--format", tFormat, "json, or csv for the entropy sweep")->check(CLI::IsMember({"csv", "json"}));

  std::string kFamily = "two-term";
  Index kCutoff = 12;
  int kBudget = 400;
  unsigned kSeed = 11;
  auto* cs = app.add_subcommand("conjecture-search", "Numerical search for the minimum number-phase product (JSON)");
  cs->add_option("--family", kFamily, "two-term or real");
  cs->add_option("--cutoff", kCutoff, "Number cutoff");
  cs->add_option("--budget", kBudget, "Evaluation budget");
  cs->add_option("--seed", kSeed, "Search seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  report::LogBase base = report::LogBase::E;
  try {
    base = report::resolve_log_base(bits);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    if (*fc) return cmd_f_curve(fLo, fHi, fPoints);
    if (*br) return cmd_bounds_report(bc, base);
    if (*as) return cmd_asymmetry(aState, aGen, aLevels, aAlphas, aStarts, aSeed, base);
    if (*co) return cmd_coherence(cState, cAlphas, cGrid, cStarts, cSeed, base);
    if (*hc)
      return cmd_holevo_chain(hState, hGen, hLevels, hAlphas, hAtoms, hLength, hGrid, hStarts, hSeed, hFormat, base);
    if (*te) return cmd_time_energy(tState, tSpectrum, tAlphas, tLength, tWindows, tGrid, tStarts, tSeed, tFormat, base);
    if (*cs) return cmd_conjecture(kFamily, kCutoff, kBudget, kSeed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
