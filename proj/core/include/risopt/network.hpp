#pragma once

// Dual-port reflection model of a varactor-loaded unit cell.
//
// Unit conventions used across the library: frequency in GHz, impedance in
// ohm, inductance in nH, capacitance in pF, length in mm, phase in degrees on
// the principal branch (-180, 180].

#include <array>
#include <complex>

#include "risopt/errors.hpp"

namespace risopt {

using Complex = std::complex<double>;

// Free-space wave impedance, ohm.  The unit cell radiates into free space,
// so the reflection reference is eta_0 rather than a transmission-line Z0.
inline constexpr double kFreeSpaceImpedanceOhm = 376.73;

// Speed of light expressed in mm * GHz, so wavelength_mm = c / freq_ghz.
inline constexpr double kSpeedOfLightMmGhz = 299.792458;

// Denominators with magnitude below this guard raise singularity_error.
inline constexpr double kSingularityGuardOhm = 1e-12;

inline double angular_frequency_rad_s(double freq_ghz) {
  return 2.0 * 3.141592653589793238462643383279502884 * freq_ghz * 1e9;
}

// Reflection reference seen by port 1.
struct Environment {
  double z0_ohm = kFreeSpaceImpedanceOhm;
};

// Two-port impedance matrix of the passive structure at a single frequency.
// Port 1 faces the incident wave, port 2 is the varactor terminal.  The raw
// aggregate deliberately allows z12 != z21 because the surrogate predicts all
// eight real components independently; use reciprocal() when the source of
// the matrix is physically symmetric.
struct ImpedanceMatrix {
  Complex z11;
  Complex z12;
  Complex z21;
  Complex z22;
  double freq_ghz = 0.0;

  static ImpedanceMatrix reciprocal(Complex z11, Complex z12, Complex z22,
                                    double freq_ghz);

  // Component order used by datasets and the surrogate:
  // Re z11, Im z11, Re z12, Im z12, Re z21, Im z21, Re z22, Im z22.
  std::array<double, 8> to_components() const;
  static ImpedanceMatrix from_components(const std::array<double, 8>& c,
                                         double freq_ghz);

  bool is_reciprocal(double tol_ohm = 0.0) const;
};

// Series RLC model of the biased varactor.
struct DiodeModel {
  double r_series_ohm = 0.3;
  double l_series_nh = 0.7;
  double c_min_pf = 0.6;
  double c_max_pf = 2.6;

  // domain_error unless r >= 0, l >= 0 and 0 < c_min < c_max.
  void validate() const;
};

// Za = R + j(w L - 1/(w C)).  domain_error if c_pf is outside the diode's
// tuning range or freq_ghz <= 0; messages name the violated bound.
Complex diode_impedance(const DiodeModel& diode, double c_pf, double freq_ghz);

// Reflection coefficient of the varactor-terminated two-port:
//   Zin = z11 - z12 z21 / (za + z22),  S11 = (Zin - z0) / (Zin + z0).
// singularity_error if |za + z22| or |Zin + z0| falls below the guard.
Complex s11_from_network(const ImpedanceMatrix& z, Complex za,
                         const Environment& env = {});

struct DbPhase {
  double amplitude_db = 0.0;
  double phase_deg = 0.0;
};

// Magnitude in dB (20 log10) and phase in degrees on (-180, 180].  A zero
// input maps to {-inf, 0} as the documented sentinel.
DbPhase s11_to_db_phase(Complex s11);

// Principal-branch wrap to (-180, 180]; the tie at half a turn maps to +180.
double wrap_phase_deg(double angle_deg);

}  // namespace risopt
