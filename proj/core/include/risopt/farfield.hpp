#pragma once

#include <span>
#include <string>
#include <vector>

#include "risopt/errors.hpp"
#include "risopt/network.hpp"

namespace risopt {

// Per-column phase states as digits 0-7; digit d maps to phase d * 45 deg.
struct CodingSequence {
  std::vector<int> digits;

  static CodingSequence parse(const std::string& text);
  std::size_t size() const { return digits.size(); }
  void validate() const;
};

struct ArrayGeometry {
  int n_columns = 16;
  double pitch_mm = 27.25;
  double freq_ghz = 3.5;

  double wavelength_mm() const { return kSpeedOfLightMmGhz / freq_ghz; }
  void validate() const;
};

std::vector<double> code_to_phases(const CodingSequence& code);

// AF(theta) = sum_n exp(j(k0 * n * d * sin(theta) + phi_n)), k0 = 2*pi/lambda.
Complex array_factor(const ArrayGeometry& geom,
                     std::span<const double> phases_deg, double theta_deg);

// Anomalous-reflection angle from the code's mean cyclic phase gradient.
double beam_angle_snell(const ArrayGeometry& geom, const CodingSequence& code);

struct PatternPoint {
  double theta_deg = 0.0;
  double af_db = 0.0;  // normalized so the grid peak sits at exactly 0 dB
};

std::vector<PatternPoint> pattern_sweep(const ArrayGeometry& geom,
                                        const CodingSequence& code,
                                        std::span<const double> theta_grid_deg);

std::vector<double> uniform_theta_grid(double lo_deg, double hi_deg,
                                       double step_deg);

std::string pattern_to_csv(const std::vector<PatternPoint>& points);

}  // namespace risopt
