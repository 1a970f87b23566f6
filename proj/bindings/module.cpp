#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decoq/brownian.hpp"
#include "decoq/chaos.hpp"
#include "decoq/densmat.hpp"
#include "decoq/entropy.hpp"
#include "decoq/spectrum_analysis.hpp"
#include "decoq/tdhf.hpp"
#include "decoq/verify.hpp"

namespace py = pybind11;
using namespace decoq;

namespace {

std::function<double(double)> shapeByName(const std::string& name, double power) {
  if (name == "flat") return shapeFlat();
  if (name == "ohmic") return shapePower(1.0);
  if (name == "power") return shapePower(power);
  throw InvalidInput("shape must be flat, ohmic or power");
}

const char* labelName(MotionClass label) {
  switch (label) {
    case MotionClass::Regular:
      return "regular";
    case MotionClass::Chaotic:
      return "chaotic";
    default:
      return "indeterminate";
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "entropy, decoherence and semiquantum-chaos kernels";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<IntegrationFailure>(m, "IntegrationFailure",
                                             PyExc_RuntimeError);

  // --- entropy kernels -----------------------------------------------------
  m.def(
      "von_neumann_entropy",
      [](const ComplexMatrix& rho) { return vonNeumannEntropy(DensityMatrix(rho)); },
      py::arg("rho"), "S = -Tr rho ln rho in nats.");
  m.def(
      "linear_entropy",
      [](const ComplexMatrix& rho) { return linearEntropy(DensityMatrix(rho)); },
      py::arg("rho"), "1 - Tr rho^2.");
  m.def(
      "thermal_state",
      [](const std::vector<double>& energies, double temperature) {
        return thermalState(Spectrum(energies), temperature).elements();
      },
      py::arg("energies"), py::arg("temperature"));
  m.def(
      "thermal_entropy_via_free_energy",
      [](const std::vector<double>& energies, double temperature, double dT) {
        if (dT <= 0.0) dT = 1e-4 * temperature;
        return thermalEntropyViaFreeEnergy(Spectrum(energies), temperature, dT);
      },
      py::arg("energies"), py::arg("temperature"), py::arg("dT") = 0.0,
      "Central difference of T ln Z; dT defaults to 1e-4 T.");
  m.def(
      "compute_y",
      [](double g1, double g2, double g12, double s12) {
        return computeY({g1, g2, g12, s12});
      },
      py::arg("g1"), py::arg("g2"), py::arg("g12"), py::arg("s12"));
  m.def(
      "entropy_from_modes",
      [](const std::vector<double>& y, const std::vector<double>& w) {
        return entropyFromModes({y, w});
      },
      py::arg("y_values"), py::arg("weights"));
  m.def(
      "pointer_width",
      [](double g1, double g2, double g12, double s12) {
        return pointerWidth({g1, g2, g12, s12});
      },
      py::arg("g1"), py::arg("g2"), py::arg("g12"), py::arg("s12"));
  m.def("entropy_timescale", &entropyTimescale, py::arg("times"), py::arg("entropies"));
  m.def("dof_entropy_ratio", &dofEntropyRatio, py::arg("g_sys"), py::arg("g_env"));

  // --- density-matrix laboratory -------------------------------------------
  m.def(
      "unitary_evolve",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, double t) {
        return unitaryEvolve(DensityMatrix(rho), HamiltonianMatrix(h), t).elements();
      },
      py::arg("rho"), py::arg("hamiltonian"), py::arg("t"));
  m.def(
      "partial_trace",
      [](const ComplexMatrix& amplitudes, const std::string& keep) {
        const Subsystem sub = keep == "A" ? Subsystem::A : Subsystem::B;
        return partialTrace(BipartiteState(amplitudes), sub).elements();
      },
      py::arg("amplitudes"), py::arg("keep") = "A");
  m.def(
      "entropy_equality",
      [](const ComplexMatrix& amplitudes) {
        const EntropyEquality eq = entropyEqualityCheck(BipartiteState(amplitudes));
        return py::make_tuple(eq.sA, eq.sB, eq.gap);
      },
      py::arg("amplitudes"));

  // --- Gaussian states -------------------------------------------------------
  m.def(
      "symplectic_eigenvalues",
      [](const Matrix& v) { return symplecticEigenvalues(CovarianceMatrix(v)); },
      py::arg("covariance"));
  m.def(
      "gaussian_entropy",
      [](const Matrix& v) { return gaussianEntropy(CovarianceMatrix(v)); },
      py::arg("covariance"));
  m.def(
      "gaussian_purity",
      [](const Matrix& v) { return gaussianPurity(CovarianceMatrix(v)); },
      py::arg("covariance"));
  m.def("linear_flow", &linearFlow, py::arg("generator"), py::arg("t"));

  // --- spectra ----------------------------------------------------------------
  m.def(
      "power_spectrum",
      [](const std::vector<double>& series, double dt) {
        const PowerSpectrum ps = powerSpectrum(series, dt);
        return py::make_tuple(ps.frequencies, ps.powers);
      },
      py::arg("series"), py::arg("dt"));
  m.def(
      "classify_spectrum",
      [](const std::vector<double>& series, double dt) {
        const SpectrumReport report = classifySpectrum(series, dt);
        return py::make_tuple(report.relative_spectral_entropy,
                              std::string(labelName(report.classification)));
      },
      py::arg("series"), py::arg("dt"));

  // --- quantum Brownian motion -------------------------------------------------
  py::class_<BrownianSystem>(m, "BrownianSystem",
                             "Exact particle + oscillator-bath Gaussian dynamics.")
      .def(py::init([](double mass, double omega_cutoff, double g, int n_modes,
                       const std::string& shape, double power) {
             BathSpec spec;
             spec.bigOmega = omega_cutoff;
             spec.g = g;
             spec.nModes = n_modes;
             spec.shapeF = shapeByName(shape, power);
             return BrownianSystem(mass, discretizeBath(spec));
           }),
           py::arg("mass") = 1.0, py::arg("omega_cutoff") = 1.0, py::arg("g") = 0.6,
           py::arg("n_modes") = 256, py::arg("shape") = "flat", py::arg("power") = 1.0)
      .def_property_readonly("bath_modes", &BrownianSystem::bathModes)
      .def_property_readonly("recurrence_time", &BrownianSystem::recurrenceTime)
      .def(
          "observables",
          [](const BrownianSystem& sys, double w0, double v0,
             const std::vector<double>& times, bool with_env) {
            const ParticleInit p{sys.particleMass(), w0, v0};
            const auto prep = sys.prepare(sys.groundInitialState(p));
            py::dict out;
            std::vector<double> width, velocity, sLin, sVN, sEnv, purity, energy;
            for (double t : times) {
              const auto obs = sys.observablesAt(prep, t, with_env);
              width.push_back(obs.width);
              velocity.push_back(obs.velocity);
              sLin.push_back(obs.sLin);
              sVN.push_back(obs.sVN);
              sEnv.push_back(obs.sEnv);
              purity.push_back(obs.purityGlobal);
              energy.push_back(obs.energy);
            }
            out["width"] = width;
            out["velocity"] = velocity;
            out["s_lin"] = sLin;
            out["s_vn"] = sVN;
            out["s_env"] = sEnv;
            out["purity"] = purity;
            out["energy"] = energy;
            return out;
          },
          py::arg("w0"), py::arg("v0"), py::arg("times"), py::arg("with_env") = false,
          "Particle observables of the ground-prepared packet at the given times.");

  // --- TDHF ---------------------------------------------------------------------
  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init<double, double>(), py::arg("mu_sq"), py::arg("lambda_") = 0.0)
      .def_readwrite("mu_sq", &PotentialSpec::muSq)
      .def_readwrite("lambda_", &PotentialSpec::lambda);

  py::class_<TdhfState>(m, "TdhfState")
      .def(py::init<>())
      .def_readwrite("phi1", &TdhfState::phi1)
      .def_readwrite("pi1", &TdhfState::pi1)
      .def_readwrite("g1", &TdhfState::g1)
      .def_readwrite("s1", &TdhfState::s1)
      .def_readwrite("g2", &TdhfState::g2)
      .def_readwrite("s2", &TdhfState::s2)
      .def_readwrite("g12", &TdhfState::g12)
      .def_readwrite("s12", &TdhfState::s12)
      .def_readwrite("hbar", &TdhfState::hbar);

  m.def(
      "evolve_tdhf",
      [](const TdhfState& s0, const PotentialSpec& v1, const PotentialSpec& v2,
         double mu12_sq, double t_max, int n_out, double rtol, double atol,
         const std::string& sigma12_coupling) {
        TdhfParams params;
        params.v1 = v1;
        params.v2 = v2;
        params.coupling.mu12Sq = mu12_sq;
        params.sigma12_coupling = sigma12_coupling == "self"
                                      ? Sigma12Coupling::Self
                                      : Sigma12Coupling::Cross;
        const TdhfTrajectory traj =
            evolveTdhf(s0, params, 0.0, t_max, rtol, atol, n_out);
        py::dict out;
        std::vector<double> ts, phi, g1, g12, s12, energy, entropy, gEff;
        for (const auto& sample : traj.samples()) {
          ts.push_back(sample.t);
          phi.push_back(sample.state.phi1);
          g1.push_back(sample.state.g1);
          g12.push_back(sample.state.g12);
          s12.push_back(sample.state.s12);
          energy.push_back(sample.energy);
          entropy.push_back(sample.entropy);
          gEff.push_back(sample.gEff);
        }
        out["t"] = ts;
        out["phi1"] = phi;
        out["g1"] = g1;
        out["g12"] = g12;
        out["s12"] = s12;
        out["energy"] = energy;
        out["entropy"] = entropy;
        out["g_eff"] = gEff;
        out["energy_drift"] = traj.diagnostics().energyDrift;
        out["max_y"] = traj.diagnostics().maxY;
        return out;
      },
      py::arg("initial"), py::arg("potential1"), py::arg("potential2"),
      py::arg("mu12_sq") = 0.0, py::arg("t_max") = 10.0, py::arg("n_out") = 201,
      py::arg("rtol") = 1e-10, py::arg("atol") = 1e-12,
      py::arg("sigma12_coupling") = "cross");

  m.def(
      "short_time_correlations",
      [](const TdhfState& s0, double mu12_sq, double t) {
        return shortTimeCorrelations(s0, {mu12_sq}, t);
      },
      py::arg("initial"), py::arg("mu12_sq"), py::arg("t"));
  m.def(
      "decoherence_time_analytic",
      [](const TdhfState& s0, double mu12_sq) {
        return decoherenceTimeAnalytic(s0, {mu12_sq});
      },
      py::arg("initial"), py::arg("mu12_sq"));
  m.def(
      "calibrate_double_well",
      [](double lambda, double hbar, double target) {
        const DoubleWellCalibration cal = calibrateDoubleWell(lambda, hbar, target);
        py::dict out;
        out["mu_sq"] = cal.muSq;
        out["lambda"] = cal.lambda;
        out["hbar"] = cal.hbar;
        out["phi_min"] = cal.minimum.phi;
        out["g_min"] = cal.minimum.g;
        out["e_min"] = cal.minimum.energy;
        return out;
      },
      py::arg("lambda_") = 1.0, py::arg("hbar") = 1.0, py::arg("target_e_min") = -24.3);

  // --- chaos diagnostics ----------------------------------------------------------
  m.def(
      "energy_sweep",
      [](double mu_sq, double lambda, double hbar, const std::vector<double>& energies,
         int n_samples, double periods) {
        SweepOptions opt;
        opt.n_samples = n_samples;
        opt.periods = periods;
        const auto rows = energySweep({mu_sq, lambda}, hbar, energies, opt);
        py::list out;
        for (const auto& row : rows) {
          py::dict item;
          item["energy"] = row.energy;
          item["spectral_entropy"] = row.spectral_entropy;
          item["lyapunov"] = row.lyapunov;
          item["label"] = labelName(row.label);
          item["error"] = row.error;
          out.append(item);
        }
        return out;
      },
      py::arg("mu_sq"), py::arg("lambda_"), py::arg("hbar"), py::arg("energies"),
      py::arg("n_samples") = 1024, py::arg("periods") = 128.0);

  m.def(
      "verify",
      [](const std::string& suite) {
        const auto results = runAcceptance(suite, {});
        py::list out;
        for (const auto& res : results) {
          py::dict item;
          item["id"] = res.id;
          item["name"] = res.name;
          item["suite"] = res.suite;
          item["passed"] = res.passed;
          item["details"] = res.details;
          out.append(item);
        }
        return out;
      },
      py::arg("suite") = "all", "Run the built-in verification suites.");
}
