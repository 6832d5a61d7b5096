#include "risopt/network.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace risopt {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegPerRad = 180.0 / kPi;
}  // namespace

ImpedanceMatrix ImpedanceMatrix::reciprocal(Complex z11, Complex z12,
                                            Complex z22, double freq_ghz) {
  if (!(freq_ghz > 0.0)) {
    std::ostringstream msg;
    msg << "impedance matrix frequency must be positive, got " << freq_ghz
        << " GHz";
    throw domain_error(msg.str());
  }
  return ImpedanceMatrix{z11, z12, z12, z22, freq_ghz};
}

std::array<double, 8> ImpedanceMatrix::to_components() const {
  return {z11.real(), z11.imag(), z12.real(), z12.imag(),
          z21.real(), z21.imag(), z22.real(), z22.imag()};
}

ImpedanceMatrix ImpedanceMatrix::from_components(const std::array<double, 8>& c,
                                                 double freq_ghz) {
  return ImpedanceMatrix{{c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]}, {c[6], c[7]},
                         freq_ghz};
}

bool ImpedanceMatrix::is_reciprocal(double tol_ohm) const {
  return std::abs(z12 - z21) <= tol_ohm;
}

void DiodeModel::validate() const {
  if (!(r_series_ohm >= 0.0))
    throw domain_error("diode series resistance must be >= 0 ohm");
  if (!(l_series_nh >= 0.0))
    throw domain_error("diode series inductance must be >= 0 nH");
  if (!(c_min_pf > 0.0))
    throw domain_error("diode c_min must be > 0 pF");
  if (!(c_max_pf > c_min_pf))
    throw domain_error("diode c_max must exceed c_min");
}

Complex diode_impedance(const DiodeModel& diode, double c_pf, double freq_ghz) {
  diode.validate();
  if (!(freq_ghz > 0.0)) {
    std::ostringstream msg;
    msg << "diode impedance needs a positive frequency, got " << freq_ghz
        << " GHz";
    throw domain_error(msg.str());
  }
  if (c_pf < diode.c_min_pf) {
    std::ostringstream msg;
    msg << "capacitance " << c_pf << " pF below tuning range minimum "
        << diode.c_min_pf << " pF";
    throw domain_error(msg.str());
  }
  if (c_pf > diode.c_max_pf) {
    std::ostringstream msg;
    msg << "capacitance " << c_pf << " pF above tuning range maximum "
        << diode.c_max_pf << " pF";
    throw domain_error(msg.str());
  }
  const double w = angular_frequency_rad_s(freq_ghz);
  const double reactance = w * diode.l_series_nh * 1e-9 - 1.0 / (w * c_pf * 1e-12);
  return {diode.r_series_ohm, reactance};
}

Complex s11_from_network(const ImpedanceMatrix& z, Complex za,
                         const Environment& env) {
  if (!(env.z0_ohm > 0.0))
    throw domain_error("reference impedance z0 must be positive");
  const Complex loop = za + z.z22;
  if (std::abs(loop) < kSingularityGuardOhm)
    throw singularity_error("za + z22 is singular: diode loop resonates with zero loss");
  const Complex zin = z.z11 - z.z12 * z.z21 / loop;
  const Complex denom = zin + env.z0_ohm;
  if (std::abs(denom) < kSingularityGuardOhm)
    throw singularity_error("zin + z0 is singular: reflection undefined");
  return (zin - env.z0_ohm) / denom;
}

DbPhase s11_to_db_phase(Complex s11) {
  const double mag = std::abs(s11);
  if (mag == 0.0)
    return {-std::numeric_limits<double>::infinity(), 0.0};
  const double phase = wrap_phase_deg(std::atan2(s11.imag(), s11.real()) * kDegPerRad);
  return {20.0 * std::log10(mag), phase};
}

double wrap_phase_deg(double angle_deg) {
  // ceil(x/360 - 1/2) sends the tie at odd half-turns upward, so the result
  // lands in (-180, 180] with wrap(180) == 180 and wrap(-180) == 180.
  const double turns = std::ceil(angle_deg / 360.0 - 0.5);
  return angle_deg - 360.0 * turns;
}

}  // namespace risopt
