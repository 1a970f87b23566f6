#include "decoq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "decoq/brownian.hpp"
#include "decoq/chaos.hpp"
#include "decoq/densmat.hpp"
#include "decoq/entropy.hpp"
#include "decoq/rng.hpp"
#include "decoq/verify.hpp"

namespace decoq {

namespace {

using nlohmann::json;

int logLevel() {
  static const int level = [] {
    const char* env = std::getenv("DECOQ_LOG");
    if (!env) return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

// Reject unknown keys so config typos fail loudly.
void checkKeys(const json& obj, const std::vector<std::string>& allowed,
               const std::string& where) {
  if (!obj.is_object()) {
    throw InvalidInput("config: " + where + " must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw InvalidInput("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

double numberOr(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw InvalidInput("config: '" + key + "' must be a number");
  return obj[key].get<double>();
}

int intOr(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw InvalidInput("config: '" + key + "' must be an integer");
  }
  return obj[key].get<int>();
}

bool boolOr(const json& obj, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) throw InvalidInput("config: '" + key + "' must be a bool");
  return obj[key].get<bool>();
}

std::string stringOr(const json& obj, const std::string& key, const std::string& fb) {
  if (!obj.contains(key)) return fb;
  if (!obj[key].is_string()) throw InvalidInput("config: '" + key + "' must be a string");
  return obj[key].get<std::string>();
}

// One CSV product, buffered until the run completes.
class CsvTable {
 public:
  CsvTable(std::string name, std::vector<std::string> columns)
      : name_(std::move(name)), columns_(std::move(columns)) {}

  void addRow(const std::vector<double>& values) {
    if (values.size() != columns_.size()) {
      throw InvalidInput("csv: row width mismatch in " + name_);
    }
    rows_.push_back(values);
  }

  const std::string& name() const { return name_; }

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out += columns_[i];
      out += (i + 1 < columns_.size()) ? ',' : '\n';
    }
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += formatDouble(row[i]);
        out += (i + 1 < row.size()) ? ',' : '\n';
      }
    }
    return out;
  }

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

struct Products {
  std::vector<CsvTable> tables;
  json summary = json::object();
  json diagnostics = json::object();
};

std::function<double(double)> parseShape(const json& params, json& resolved) {
  if (!params.contains("shape")) {
    resolved["shape"] = "flat";
    return shapeFlat();
  }
  const json& shape = params["shape"];
  if (shape.is_string()) {
    const std::string name = shape.get<std::string>();
    resolved["shape"] = name;
    if (name == "flat") return shapeFlat();
    if (name == "ohmic") return shapePower(1.0);
    throw InvalidInput("config: unknown shape '" + name + "'");
  }
  if (shape.is_object()) {
    checkKeys(shape, {"power", "table"}, "parameters.shape");
    if (shape.contains("power")) {
      resolved["shape"] = shape;
      return shapePower(shape["power"].get<double>());
    }
    if (shape.contains("table")) {
      const json& table = shape["table"];
      std::vector<double> xs, fs;
      for (const auto& pair : table) {
        xs.push_back(pair.at(0).get<double>());
        fs.push_back(pair.at(1).get<double>());
      }
      resolved["shape"] = shape;
      return shapeFromTable(std::move(xs), std::move(fs));
    }
  }
  throw InvalidInput("config: 'shape' must be a name or {power}|{table} object");
}

// ---------------------------------------------------------------------------
// entropy-lab

Products runEntropyLab(const ScenarioConfig& cfg, json& resolved) {
  const json& p = cfg.parameters;
  checkKeys(p, {"dim_a", "dim_b", "n_states", "n_unitary", "levels", "temperatures",
                "evolve_time"},
            "parameters");
  const int dimA = intOr(p, "dim_a", 4);
  const int dimB = intOr(p, "dim_b", 7);
  const int nStates = intOr(p, "n_states", 200);
  const int nUnitary = intOr(p, "n_unitary", 50);
  const int levels = intOr(p, "levels", 8);
  const double evolveTime = numberOr(p, "evolve_time", 1.7);
  std::vector<double> temps;
  if (p.contains("temperatures")) {
    for (const auto& t : p["temperatures"]) temps.push_back(t.get<double>());
  } else {
    for (int i = 0; i <= 12; ++i) temps.push_back(0.1 * std::pow(10.0, i / 6.0));
  }
  if (dimA < 2 || dimB < 2 || nStates < 1 || levels < 2) {
    throw InvalidInput("config: entropy-lab dimensions out of range");
  }
  resolved["dim_a"] = dimA;
  resolved["dim_b"] = dimB;
  resolved["n_states"] = nStates;
  resolved["n_unitary"] = nUnitary;
  resolved["levels"] = levels;
  resolved["temperatures"] = temps;
  resolved["evolve_time"] = evolveTime;

  SplitMix64 root(cfg.seed);
  Products out;

  // Thermal identity scan on a seed-derived spectrum.
  SplitMix64 specRng = root.split(1);
  std::vector<double> energies(levels);
  for (auto& e : energies) e = specRng.uniform(0.0, 3.0);
  std::sort(energies.begin(), energies.end());
  const Spectrum spectrum(energies);
  resolved["spectrum_energies"] = energies;

  CsvTable thermal("thermal.csv",
                   {"temperature", "entropy_state", "entropy_free_energy", "gap"});
  double thermalGap = 0.0;
  for (double T : temps) {
    const double sState = vonNeumannEntropy(thermalState(spectrum, T));
    const double sFree = thermalEntropyViaFreeEnergy(spectrum, T, 1e-4 * T);
    thermal.addRow({T, sState, sFree, std::abs(sState - sFree)});
    thermalGap = std::max(thermalGap, std::abs(sState - sFree));
  }
  out.tables.push_back(std::move(thermal));

  // Schmidt equality over random bipartite pure states.
  SplitMix64 schmidtRng = root.split(2);
  CsvTable schmidt("schmidt.csv", {"trial", "s_a", "s_b", "gap"});
  double schmidtGap = 0.0;
  for (int trial = 0; trial < nStates; ++trial) {
    ComplexMatrix c(dimA, dimB);
    for (int i = 0; i < dimA; ++i) {
      for (int j = 0; j < dimB; ++j) {
        c(i, j) = {schmidtRng.normal(), schmidtRng.normal()};
      }
    }
    c /= std::sqrt(c.squaredNorm());
    const EntropyEquality eq = entropyEqualityCheck(BipartiteState(c));
    schmidt.addRow({static_cast<double>(trial), eq.sA, eq.sB, eq.gap});
    schmidtGap = std::max(schmidtGap, eq.gap);
  }
  out.tables.push_back(std::move(schmidt));

  // Entropy constancy under unitary evolution.
  SplitMix64 uniRng = root.split(3);
  CsvTable unitary("unitary.csv",
                   {"trial", "t", "entropy_before", "entropy_after", "abs_delta"});
  double unitaryGap = 0.0;
  for (int trial = 0; trial < nUnitary; ++trial) {
    const int dim = 2 + static_cast<int>(uniRng.next() % 5);
    ComplexMatrix a(dim, dim), h(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        a(i, j) = {uniRng.normal(), uniRng.normal()};
        h(i, j) = {uniRng.normal(), uniRng.normal()};
      }
    }
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    const DensityMatrix rhoM(rho);
    const HamiltonianMatrix hM(0.5 * (h + h.adjoint().eval()));
    const double before = vonNeumannEntropy(rhoM);
    const double after = vonNeumannEntropy(unitaryEvolve(rhoM, hM, evolveTime));
    unitary.addRow({static_cast<double>(trial), evolveTime, before, after,
                    std::abs(after - before)});
    unitaryGap = std::max(unitaryGap, std::abs(after - before));
  }
  out.tables.push_back(std::move(unitary));

  out.summary["max_thermal_gap"] = thermalGap;
  out.summary["max_schmidt_gap"] = schmidtGap;
  out.summary["max_unitary_entropy_change"] = unitaryGap;
  return out;
}

// ---------------------------------------------------------------------------
// brownian

Products runBrownian(const ScenarioConfig& cfg, json& resolved) {
  const json& p = cfg.parameters;
  checkKeys(p, {"mass", "w0", "v0", "coupling_g", "omega_cutoff", "shape", "n_modes",
                "grid", "log_floor", "t_max", "n_out", "with_env_entropy",
                "free_baseline"},
            "parameters");

  BathSpec bath;
  bath.bigOmega = numberOr(p, "omega_cutoff", 1.0);
  bath.g = numberOr(p, "coupling_g", 0.6);
  bath.nModes = intOr(p, "n_modes", 256);
  bath.logFloor = numberOr(p, "log_floor", 1e-4);
  const std::string grid = stringOr(p, "grid", "uniform");
  if (grid == "uniform") {
    bath.discretization = BathSpec::Grid::Uniform;
  } else if (grid == "log") {
    bath.discretization = BathSpec::Grid::Log;
  } else {
    throw InvalidInput("config: 'grid' must be uniform or log");
  }
  bath.shapeF = parseShape(p, resolved);

  std::vector<double> widths;
  if (p.contains("w0") && p["w0"].is_array()) {
    for (const auto& w : p["w0"]) widths.push_back(w.get<double>());
  } else {
    widths.push_back(numberOr(p, "w0", 0.42));
  }
  const double mass = numberOr(p, "mass", 1.0);
  const double v0 = numberOr(p, "v0", 1.0);
  const double tMax = numberOr(p, "t_max", 0.5 / bath.bigOmega);
  const int nOut = intOr(p, "n_out", 51);
  const bool withEnv = boolOr(p, "with_env_entropy", false);
  const bool freeBaseline = boolOr(p, "free_baseline", true);
  if (widths.empty() || nOut < 2 || !(tMax > 0.0)) {
    throw InvalidInput("config: brownian needs widths, n_out >= 2 and t_max > 0");
  }
  for (double w : widths) {
    if (!(w > 0.0)) throw InvalidInput("config: packet widths must be positive");
  }

  resolved["mass"] = mass;
  resolved["w0"] = widths;
  resolved["v0"] = v0;
  resolved["coupling_g"] = bath.g;
  resolved["omega_cutoff"] = bath.bigOmega;
  resolved["n_modes"] = bath.nModes;
  resolved["grid"] = grid;
  resolved["log_floor"] = bath.logFloor;
  resolved["t_max"] = tMax;
  resolved["n_out"] = nOut;
  resolved["with_env_entropy"] = withEnv;
  resolved["free_baseline"] = freeBaseline;

  const auto modes = discretizeBath(bath);
  // t+ scaling: the continuum g0 when the shape integral converges, the
  // discrete-bath moment otherwise (the flat default diverges at x -> 0).
  double g0 = 0.0;
  std::string g0Source;
  try {
    g0 = g0Parameter(bath);
    g0Source = "continuum";
  } catch (const DomainError&) {
    g0 = g0FromModes(modes, bath.bigOmega);
    g0Source = "discrete-modes";
  }
  resolved["g0"] = g0;
  resolved["g0_source"] = g0Source;

  Products out;
  const BrownianSystem sys(mass, modes);
  const double tRec = sys.recurrenceTime();
  out.diagnostics["recurrence_time"] = tRec;
  if (tMax > 0.25 * tRec) {
    throw InvalidInput("config: t_max exceeds a quarter of the bath recurrence time");
  }

  json packetSummaries = json::array();
  for (std::size_t idx = 0; idx < widths.size(); ++idx) {
    const ParticleInit particle{mass, widths[idx], v0};
    const auto prep = sys.prepare(sys.groundInitialState(particle));

    CsvTable table("packet_" + std::to_string(idx) + ".csv",
                   {"t", "t_plus", "width_ratio", "velocity_ratio", "s_lin", "s_vn",
                    "s_env", "energy", "purity", "free_width_ratio"});
    double minRatio = 1e300, maxRatio = 0.0, endEntropy = 0.0;
    bool velocityMonotone = true;
    double prevVel = 1e300;
    for (int i = 0; i < nOut; ++i) {
      const double t = tMax * static_cast<double>(i) / (nOut - 1);
      const auto obs = sys.observablesAt(prep, t, withEnv);
      const double tPlus =
          g0 > 0.0 ? alphaAndTPlus(particle, bath.bigOmega, g0, t).tPlus : 0.0;
      const double ratio = obs.width / particle.w0;
      const double velRatio =
          v0 != 0.0 ? obs.velocity / v0 : std::numeric_limits<double>::quiet_NaN();
      const double freeRatio =
          freeBaseline
              ? std::sqrt(1.0 +
                          std::pow(t / (2.0 * mass * particle.w0 * particle.w0), 2.0))
              : std::numeric_limits<double>::quiet_NaN();
      table.addRow({t, tPlus, ratio, velRatio, obs.sLin, obs.sVN, obs.sEnv, obs.energy,
                    obs.purityGlobal, freeRatio});
      minRatio = std::min(minRatio, ratio);
      maxRatio = std::max(maxRatio, ratio);
      endEntropy = obs.sVN;
      if (i > 0 && !(velRatio < prevVel)) velocityMonotone = false;
      prevVel = velRatio;
    }
    out.tables.push_back(std::move(table));

    json ps;
    ps["w0"] = widths[idx];
    ps["alpha"] = g0 > 0.0 ? alphaAndTPlus(particle, bath.bigOmega, g0, 0.0).alpha
                           : std::numeric_limits<double>::quiet_NaN();
    ps["min_width_ratio"] = minRatio;
    ps["max_width_ratio"] = maxRatio;
    ps["final_s_vn"] = endEntropy;
    ps["velocity_ratio_strictly_decreasing"] = velocityMonotone && bath.g > 0.0;
    packetSummaries.push_back(ps);
  }
  out.summary["packets"] = packetSummaries;
  return out;
}

// ---------------------------------------------------------------------------
// tdhf

Products runTdhfScenario(const ScenarioConfig& cfg, json& resolved) {
  const json& p = cfg.parameters;
  checkKeys(p, {"potential1", "potential2", "coupling_mu12_sq", "hbar", "initial",
                "t_max", "n_out", "rtol", "atol", "sigma12_coupling", "tau_fit"},
            "parameters");

  const auto parsePotential = [&](const std::string& key, double muFallback) {
    PotentialSpec v{muFallback, 0.0};
    if (p.contains(key)) {
      checkKeys(p[key], {"mu_sq", "lambda"}, "parameters." + key);
      v.muSq = numberOr(p[key], "mu_sq", muFallback);
      v.lambda = numberOr(p[key], "lambda", 0.0);
    }
    if (v.lambda < 0.0) throw InvalidInput("config: lambda must be >= 0");
    if (v.lambda == 0.0 && v.muSq >= 0.0) {
      throw InvalidInput("config: " + key + " unbounded (lambda = 0 needs mu_sq < 0)");
    }
    return v;
  };

  TdhfParams params;
  params.v1 = parsePotential("potential1", -1.0);
  params.v2 = parsePotential("potential2", -1.0);
  params.coupling.mu12Sq = numberOr(p, "coupling_mu12_sq", 0.0);
  const std::string coupling = stringOr(p, "sigma12_coupling", "cross");
  if (coupling == "cross") {
    params.sigma12_coupling = Sigma12Coupling::Cross;
  } else if (coupling == "self") {
    params.sigma12_coupling = Sigma12Coupling::Self;
  } else {
    throw InvalidInput("config: 'sigma12_coupling' must be cross or self");
  }

  TdhfState s0;
  s0.hbar = numberOr(p, "hbar", 1.0);
  if (p.contains("initial")) {
    const json& init = p["initial"];
    checkKeys(init, {"phi1", "pi1", "g1", "s1", "g2", "s2", "g12", "s12"},
              "parameters.initial");
    s0.phi1 = numberOr(init, "phi1", 0.0);
    s0.pi1 = numberOr(init, "pi1", 0.0);
    s0.g1 = numberOr(init, "g1", 0.5);
    s0.s1 = numberOr(init, "s1", 0.0);
    s0.g2 = numberOr(init, "g2", 0.5);
    s0.s2 = numberOr(init, "s2", 0.0);
    s0.g12 = numberOr(init, "g12", 0.0);
    s0.s12 = numberOr(init, "s12", 0.0);
  }
  if (!(s0.g1 > 0.0) || !(s0.g2 > 0.0)) {
    throw InvalidInput("config: initial widths must be positive");
  }
  if (s0.hbar < 0.0) throw InvalidInput("config: hbar must be >= 0");

  const double tMax = numberOr(p, "t_max", 10.0);
  const int nOut = intOr(p, "n_out", 201);
  const double rtol = numberOr(p, "rtol", 1e-10);
  const double atol = numberOr(p, "atol", 1e-12);
  if (!(tMax > 0.0) || nOut < 2) {
    throw InvalidInput("config: tdhf needs t_max > 0 and n_out >= 2");
  }

  resolved["potential1"] = {{"mu_sq", params.v1.muSq}, {"lambda", params.v1.lambda}};
  resolved["potential2"] = {{"mu_sq", params.v2.muSq}, {"lambda", params.v2.lambda}};
  resolved["coupling_mu12_sq"] = params.coupling.mu12Sq;
  resolved["hbar"] = s0.hbar;
  resolved["sigma12_coupling"] = coupling;
  resolved["initial"] = {{"phi1", s0.phi1}, {"pi1", s0.pi1}, {"g1", s0.g1},
                         {"s1", s0.s1},     {"g2", s0.g2},   {"s2", s0.s2},
                         {"g12", s0.g12},   {"s12", s0.s12}};
  resolved["t_max"] = tMax;
  resolved["n_out"] = nOut;
  resolved["rtol"] = rtol;
  resolved["atol"] = atol;

  const TdhfTrajectory traj = evolveTdhf(s0, params, 0.0, tMax, rtol, atol, nOut);

  Products out;
  CsvTable table("series.csv", {"t", "phi1", "pi1", "g1", "s1", "g2", "s2", "g12",
                                "s12", "energy", "Y", "S_S", "G_eff"});
  for (const auto& sample : traj.samples()) {
    const TdhfState& s = sample.state;
    table.addRow({sample.t, s.phi1, s.pi1, s.g1, s.s1, s.g2, s.s2, s.g12, s.s12,
                  sample.energy, sample.y, sample.entropy, sample.gEff});
  }
  out.tables.push_back(std::move(table));

  out.diagnostics["energy_drift"] = traj.diagnostics().energyDrift;
  out.diagnostics["max_y"] = traj.diagnostics().maxY;
  out.diagnostics["small_correlation_advisory"] =
      traj.diagnostics().smallCorrelationAdvisory;

  json summary;
  try {
    summary["decoherence_time_analytic"] = decoherenceTimeAnalytic(s0, params.coupling);
  } catch (const DomainError&) {
    summary["decoherence_time_analytic"] = nullptr;
  }
  if (p.contains("tau_fit")) {
    checkKeys(p["tau_fit"], {"t_lo", "t_hi"}, "parameters.tau_fit");
    const double lo = p["tau_fit"].at("t_lo").get<double>();
    const double hi = p["tau_fit"].at("t_hi").get<double>();
    resolved["tau_fit"] = {{"t_lo", lo}, {"t_hi", hi}};
    summary["decoherence_time_numeric"] = decoherenceTimeNumeric(traj, lo, hi);
  }
  summary["final_entropy"] = traj.samples().back().entropy;
  out.summary = summary;
  return out;
}

// ---------------------------------------------------------------------------
// chaos-sweep

Products runChaosSweep(const ScenarioConfig& cfg, json& resolved) {
  const json& p = cfg.parameters;
  checkKeys(p, {"lambda", "hbar", "mu_sq", "target_e_min", "energies", "n_samples",
                "periods", "x_star", "diagnostics", "n_crossings", "thresholds",
                "rtol", "atol"},
            "parameters");

  const double lambda = numberOr(p, "lambda", 1.0);
  const double hbar = numberOr(p, "hbar", 1.0);
  PotentialSpec v;
  if (p.contains("mu_sq")) {
    v = PotentialSpec{p["mu_sq"].get<double>(), lambda};
    resolved["mu_sq"] = v.muSq;
  } else {
    const double target = numberOr(p, "target_e_min", -24.3);
    const DoubleWellCalibration cal =
        calibrateDoubleWell(lambda, hbar > 0.0 ? hbar : 1.0, target);
    v = PotentialSpec{cal.muSq, lambda};
    resolved["target_e_min"] = target;
    resolved["mu_sq"] = cal.muSq;
    resolved["calibration"] = {{"mu_sq", cal.muSq},
                               {"lambda", cal.lambda},
                               {"hbar", cal.hbar},
                               {"phi_min", cal.minimum.phi},
                               {"g_min", cal.minimum.g},
                               {"e_min", cal.minimum.energy}};
  }
  resolved["lambda"] = lambda;
  resolved["hbar"] = hbar;

  std::vector<double> energies;
  if (!p.contains("energies")) {
    throw InvalidInput("config: chaos-sweep requires 'energies'");
  }
  if (p["energies"].is_array()) {
    for (const auto& e : p["energies"]) energies.push_back(e.get<double>());
  } else {
    checkKeys(p["energies"], {"min", "max", "count"}, "parameters.energies");
    const double lo = p["energies"].at("min").get<double>();
    const double hi = p["energies"].at("max").get<double>();
    const int count = p["energies"].at("count").get<int>();
    if (count < 2 || !(hi > lo)) throw InvalidInput("config: bad energy grid");
    for (int i = 0; i < count; ++i) {
      energies.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    }
  }
  resolved["energies"] = energies;

  SweepOptions opt;
  opt.n_samples = intOr(p, "n_samples", 1024);
  opt.periods = numberOr(p, "periods", 128.0);
  opt.x_star = numberOr(p, "x_star", 0.0);
  opt.rtol = numberOr(p, "rtol", 1e-10);
  opt.atol = numberOr(p, "atol", 1e-12);
  opt.workers = cfg.workers > 0
                    ? cfg.workers
                    : std::max(1u, std::thread::hardware_concurrency());
  if (p.contains("thresholds")) {
    checkKeys(p["thresholds"], {"regular_below", "chaotic_above"},
              "parameters.thresholds");
    opt.thresholds.regular_below = p["thresholds"].at("regular_below").get<double>();
    opt.thresholds.chaotic_above = p["thresholds"].at("chaotic_above").get<double>();
  }
  resolved["n_samples"] = opt.n_samples;
  resolved["periods"] = opt.periods;
  resolved["x_star"] = opt.x_star;
  resolved["thresholds"] = {{"regular_below", opt.thresholds.regular_below},
                            {"chaotic_above", opt.thresholds.chaotic_above}};

  std::vector<std::string> diagnostics = {"spectrum", "lyapunov"};
  if (p.contains("diagnostics")) {
    diagnostics.clear();
    for (const auto& d : p["diagnostics"]) diagnostics.push_back(d.get<std::string>());
  }
  for (const auto& d : diagnostics) {
    if (d != "spectrum" && d != "lyapunov" && d != "section") {
      throw InvalidInput("config: unknown diagnostic '" + d + "'");
    }
  }
  const bool wantSections =
      std::find(diagnostics.begin(), diagnostics.end(), "section") != diagnostics.end();
  const bool wantSpectra =
      std::find(diagnostics.begin(), diagnostics.end(), "spectrum") != diagnostics.end();
  const int nCrossings = intOr(p, "n_crossings", 400);
  resolved["diagnostics"] = diagnostics;
  resolved["n_crossings"] = nCrossings;

  const auto rows = energySweep(v, hbar, energies, opt);

  Products out;
  CsvTable phase("phase_diagram.csv",
                 {"energy", "spectral_entropy", "lyapunov", "label"});
  // Label encoded numerically for the CSV: 0 regular, 1 indeterminate, 2 chaotic.
  json failures = json::array();
  for (const auto& row : rows) {
    const double label = row.label == MotionClass::Regular
                             ? 0.0
                             : (row.label == MotionClass::Chaotic ? 2.0 : 1.0);
    phase.addRow({row.energy, row.spectral_entropy, row.lyapunov, label});
    if (!row.error.empty()) {
      failures.push_back({{"energy", row.energy}, {"error", row.error}});
    }
  }
  out.tables.push_back(std::move(phase));
  out.diagnostics["row_failures"] = failures;

  const double period = 2.0 * M_PI /
                        std::sqrt(std::max(
                            v.d2(staticMinimum(v, hbar > 0 ? hbar : 1.0).phi), 1e-12));
  if (wantSpectra) {
    CsvTable spectra("spectra.csv", {"energy", "frequency", "power"});
    for (double e : energies) {
      try {
        const SystemState s0 = onShellState(v, hbar, e);
        const double horizon = opt.periods * period;
        const SystemTrajectory traj =
            runSystem(s0, {v, hbar, opt.rtol, opt.atol}, horizon);
        std::vector<double> series;
        if (hbar > 0.0) {
          series = densityDiagonalSeries(traj, opt.x_star, opt.n_samples);
        } else {
          series.resize(opt.n_samples);
          for (int i = 0; i < opt.n_samples; ++i) {
            series[i] = traj.stateAt(horizon * i / (opt.n_samples - 1.0)).phi;
          }
        }
        const PowerSpectrum ps = powerSpectrum(series, horizon / (opt.n_samples - 1));
        for (std::size_t k = 0; k < ps.frequencies.size(); ++k) {
          spectra.addRow({e, ps.frequencies[k], ps.powers[k]});
        }
      } catch (const std::exception&) {
        // row failure already recorded by the sweep
      }
    }
    out.tables.push_back(std::move(spectra));
  }

  if (wantSections) {
    CsvTable sections("sections.csv", {"energy", "crossing_index", "phi", "pi"});
    for (double e : energies) {
      try {
        const SystemState s0 = onShellState(v, hbar, e);
        const auto res = poincareSection(s0, {v, hbar, opt.rtol, opt.atol}, {},
                                         nCrossings, 40.0 * opt.periods * period);
        for (std::size_t i = 0; i < res.points.size(); ++i) {
          sections.addRow(
              {e, static_cast<double>(i), res.points[i].phi, res.points[i].pi});
        }
      } catch (const std::exception&) {
      }
    }
    out.tables.push_back(std::move(sections));
  }

  int chaotic = 0, regular = 0;
  for (const auto& row : rows) {
    chaotic += row.label == MotionClass::Chaotic;
    regular += row.label == MotionClass::Regular;
  }
  out.summary["chaotic_rows"] = chaotic;
  out.summary["regular_rows"] = regular;
  out.summary["rows"] = static_cast<int>(rows.size());
  return out;
}

}  // namespace

void logInfo(const std::string& message) {
  if (logLevel() >= 1) std::cerr << "[decoq] " << message << "\n";
}

void logDebug(const std::string& message) {
  if (logLevel() >= 2) std::cerr << "[decoq:debug] " << message << "\n";
}

std::string formatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

ScenarioConfig ScenarioConfig::fromJson(const json& doc) {
  checkKeys(doc, {"scenario", "seed", "output_dir", "workers", "parameters"}, "config");
  ScenarioConfig cfg;
  if (!doc.contains("scenario") || !doc["scenario"].is_string()) {
    throw InvalidInput("config: 'scenario' string is required");
  }
  cfg.scenario = doc["scenario"].get<std::string>();
  const std::vector<std::string> known = {"entropy-lab", "brownian", "tdhf",
                                          "chaos-sweep", "verify"};
  if (std::find(known.begin(), known.end(), cfg.scenario) == known.end()) {
    throw InvalidInput("config: unknown scenario '" + cfg.scenario + "'");
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      throw InvalidInput("config: 'seed' must be an unsigned integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("output_dir")) {
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  cfg.workers = intOr(doc, "workers", 0);
  cfg.parameters = doc.contains("parameters") ? doc["parameters"] : json::object();
  if (!cfg.parameters.is_object()) {
    throw InvalidInput("config: 'parameters' must be an object");
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::fromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& err) {
    throw InvalidInput(std::string("config: JSON parse error: ") + err.what());
  }
  return fromJson(doc);
}

nlohmann::json ScenarioConfig::resolved() const {
  json doc;
  doc["scenario"] = scenario;
  doc["seed"] = seed;
  doc["output_dir"] = output_dir.string();
  doc["workers"] = workers;
  doc["parameters"] = parameters;
  return doc;
}

RunRecord runScenario(const ScenarioConfig& cfg) {
  RunRecord record;
  json resolvedParams = json::object();
  Products products;

  try {
    if (cfg.scenario == "entropy-lab") {
      products = runEntropyLab(cfg, resolvedParams);
    } else if (cfg.scenario == "brownian") {
      products = runBrownian(cfg, resolvedParams);
    } else if (cfg.scenario == "tdhf") {
      products = runTdhfScenario(cfg, resolvedParams);
    } else if (cfg.scenario == "chaos-sweep") {
      products = runChaosSweep(cfg, resolvedParams);
    } else {
      checkKeys(cfg.parameters, {"suite"}, "parameters");
      const std::string suite = stringOr(cfg.parameters, "suite", "all");
      resolvedParams["suite"] = suite;
      const auto results = runAcceptance(suite, {});
      json report = json::array();
      int failures = 0;
      for (const auto& res : results) {
        json item;
        item["id"] = res.id;
        item["name"] = res.name;
        item["suite"] = res.suite;
        item["passed"] = res.passed;
        item["details"] = res.details;
        report.push_back(item);
        failures += res.passed ? 0 : 1;
      }
      products.summary["criteria"] = report;
      products.summary["failures"] = failures;
      if (failures > 0) record.exit_code = 1;
    }
  } catch (const InvalidInput& err) {
    logInfo(std::string("validation error: ") + err.what());
    record.exit_code = 2;
    record.summary["error"] = err.what();
    return record;  // schema violations never produce output files
  } catch (const std::exception& err) {
    logInfo(std::string("numerical failure: ") + err.what());
    record.exit_code = 3;
    record.summary["error"] = err.what();
    return record;
  }

  // All products computed; write files in one pass.
  json config = cfg.resolved();
  config["parameters"] = resolvedParams;
  record.config = config;
  record.summary.update(products.summary);
  record.diagnostics = products.diagnostics;

  std::filesystem::create_directories(cfg.output_dir);
  for (const auto& table : products.tables) {
    const auto path = cfg.output_dir / table.name();
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << table.render();
    record.output_files.push_back(table.name());
  }

  json runJson;
  runJson["schema_version"] = record.schema_version;
  runJson["config"] = record.config;
  runJson["outputs"] = record.output_files;
  runJson["summary"] = record.summary;
  runJson["diagnostics"] = record.diagnostics;
  std::ofstream file(cfg.output_dir / "run.json", std::ios::binary);
  file << runJson.dump(2) << "\n";

  logInfo("run complete: " + std::to_string(record.output_files.size()) +
          " data products in " + cfg.output_dir.string());
  return record;
}

}  // namespace decoq
