#pragma once

// Acceptance-fixture oracle: a parameterization of the synthetic oracle
// whose port-2 branch resonates inside the varactor tuning range for every
// geometry in the design box at the fixture design frequency, so all 2^N
// uniformly spaced relative phases are attainable above the amplitude
// floor.  The brute-force certificate below proves that claim per geometry
// without involving any optimizer.

#include <algorithm>
#include <cmath>
#include <vector>

#include "risopt/designer.hpp"
#include "risopt/network.hpp"
#include "risopt/oracle.hpp"

namespace risopt::testfixture {

inline constexpr double kDesignFreqGhz = 2.5;
inline constexpr int kDatasetGeometries = 600;
inline constexpr std::uint64_t kDatasetSeed = 2024;
inline constexpr std::uint64_t kTrainSeed = 5;
inline constexpr std::uint64_t kDesignSeed = 11;

inline OracleConfig oracle_config() {
  OracleConfig cfg;
  cfg.lb0 = 4.0;
  cfg.lb1 = 0.03;
  cfg.cb0 = 4.0;
  cfg.cb1 = 0.5;
  cfg.m0 = 2.0;
  cfg.m1 = 0.03;
  cfg.r22 = 0.05;
  return cfg;
}

// Documented fixed geometry for the brute-force certificate.
inline GeometryParams geometry() { return {15.0, 15.0, 14.0, 2.0, 0.5, 7.0}; }

// Training band for the fixture surrogate, centred on the design frequency.
inline FrequencyGrid frequency_grid() { return {2.3, 2.7, 41}; }

inline DesignSpec design_spec() {
  DesignSpec spec;
  spec.bits = 3;
  spec.freq_ghz = kDesignFreqGhz;
  spec.optimizer.seed = kDesignSeed;
  return spec;
}

struct AttainabilityCertificate {
  double worst_phase_error_deg = 0.0;  // max over targets of the best error
  double worst_amplitude_db = 0.0;     // lowest amplitude among chosen states
  bool attainable = false;
};

// Sweeps an n_grid-point capacitance grid at fixed geometry, takes the
// amplitude-maximizing state as the phase reference, and checks that every
// uniform 2^bits target has a grid state within tol_deg whose amplitude
// stays above floor_db.
inline AttainabilityCertificate certify_attainability(
    const OracleConfig& cfg, const GeometryParams& g, double freq_ghz,
    int bits, int n_grid = 1024, double floor_db = -3.0,
    double tol_deg = 5.0) {
  const ImpedanceMatrix z = synth_impedance(cfg, g, freq_ghz);
  const DiodeModel diode;
  std::vector<double> amps(n_grid), phases(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    const double c = diode.c_min_pf + (diode.c_max_pf - diode.c_min_pf) *
                                          static_cast<double>(i) /
                                          (n_grid - 1);
    const Complex s11 = s11_from_network(z, diode_impedance(diode, c, freq_ghz));
    const DbPhase dp = s11_to_db_phase(s11);
    amps[i] = dp.amplitude_db;
    phases[i] = dp.phase_deg;
  }
  const int ref = static_cast<int>(
      std::max_element(amps.begin(), amps.end()) - amps.begin());

  AttainabilityCertificate cert;
  cert.attainable = true;
  cert.worst_amplitude_db = 0.0;
  const int n_states = 1 << bits;
  for (int k = 0; k < n_states; ++k) {
    const double target = k * 360.0 / n_states;
    double best_err = 1e300;
    double best_amp = 0.0;
    for (int i = 0; i < n_grid; ++i) {
      if (amps[i] <= floor_db) continue;
      const double rel = wrap_phase_deg(phases[i] - phases[ref]);
      const double err = std::abs(wrap_phase_deg(rel - target));
      if (err < best_err) {
        best_err = err;
        best_amp = amps[i];
      }
    }
    if (best_err > tol_deg) cert.attainable = false;
    cert.worst_phase_error_deg = std::max(cert.worst_phase_error_deg, best_err);
    cert.worst_amplitude_db = std::min(cert.worst_amplitude_db, best_amp);
  }
  return cert;
}

}  // namespace risopt::testfixture
