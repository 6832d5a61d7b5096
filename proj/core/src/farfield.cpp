#include "risopt/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "risopt/io_util.hpp"

namespace risopt {

CodingSequence CodingSequence::parse(const std::string& text) {
  if (text.empty()) throw parse_error("coding sequence is empty", 0);
  CodingSequence code;
  code.digits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '7') {
      std::ostringstream msg;
      msg << "invalid coding digit '" << c << "' (digits must be 0-7)";
      throw parse_error(msg.str(), i);
    }
    code.digits.push_back(c - '0');
  }
  return code;
}

void CodingSequence::validate() const {
  if (digits.empty()) throw domain_error("coding sequence must be non-empty");
  for (int d : digits)
    if (d < 0 || d > 7)
      throw domain_error("coding digits must lie in [0, 7]");
}

void ArrayGeometry::validate() const {
  if (n_columns < 2) throw domain_error("array needs at least 2 columns");
  if (!(pitch_mm > 0.0)) throw domain_error("column pitch must be > 0 mm");
  if (!(freq_ghz > 0.0)) throw domain_error("frequency must be > 0 GHz");
}

std::vector<double> code_to_phases(const CodingSequence& code) {
  code.validate();
  std::vector<double> phases(code.size());
  for (std::size_t i = 0; i < code.size(); ++i)
    phases[i] = 45.0 * static_cast<double>(code.digits[i]);
  return phases;
}

Complex array_factor(const ArrayGeometry& geom,
                     std::span<const double> phases_deg, double theta_deg) {
  geom.validate();
  if (phases_deg.size() != static_cast<std::size_t>(geom.n_columns))
    throw contract_error("phase list length must equal n_columns");
  if (!(theta_deg >= -90.0 && theta_deg <= 90.0))
    throw domain_error("theta must lie in [-90, 90] degrees");

  const double deg = std::numbers::pi / 180.0;
  const double k0 = 2.0 * std::numbers::pi / geom.wavelength_mm();
  const double path = k0 * geom.pitch_mm * std::sin(theta_deg * deg);
  Complex af = 0.0;
  for (std::size_t n = 0; n < phases_deg.size(); ++n) {
    const double arg = path * static_cast<double>(n) + phases_deg[n] * deg;
    af += Complex(std::cos(arg), std::sin(arg));
  }
  return af;
}

double beam_angle_snell(const ArrayGeometry& geom, const CodingSequence& code) {
  geom.validate();
  code.validate();
  if (code.size() != static_cast<std::size_t>(geom.n_columns))
    throw contract_error("coding sequence length must equal n_columns");

  // Mean cyclic gradient: wrapped column-to-column steps plus the wrap-around
  // step, averaged over all columns. Exact for constant-gradient codes and
  // insensitive to the 360-degree ambiguity of the raw digit phases.
  const std::vector<double> phases = code_to_phases(code);
  const std::size_t n = phases.size();
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    sum += wrap_phase_deg(phases[i] - phases[i - 1]);
  sum += wrap_phase_deg(phases.front() - phases.back());
  const double gradient_deg_per_col = sum / static_cast<double>(n);

  if (std::abs(gradient_deg_per_col) < 1e-12)
    throw domain_error("broadside or non-gradient code");
  // Sign follows the array-factor convention above: a phase that grows along
  // +x steers the aligned-phase condition k0*d*sin(theta) = -gradient, so an
  // increasing code deflects toward negative theta.
  const double sin_theta =
      -(gradient_deg_per_col / 360.0) * geom.wavelength_mm() / geom.pitch_mm;
  if (std::abs(sin_theta) > 1.0)
    throw domain_error("phase gradient is evanescent (|sin theta| > 1)");
  return std::asin(sin_theta) * 180.0 / std::numbers::pi;
}

std::vector<PatternPoint> pattern_sweep(const ArrayGeometry& geom,
                                        const CodingSequence& code,
                                        std::span<const double> theta_grid_deg) {
  if (theta_grid_deg.empty())
    throw domain_error("theta grid must be non-empty");
  const std::vector<double> phases = code_to_phases(code);

  std::vector<PatternPoint> points(theta_grid_deg.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < theta_grid_deg.size(); ++i) {
    points[i].theta_deg = theta_grid_deg[i];
    points[i].af_db = std::abs(array_factor(geom, phases, theta_grid_deg[i]));
    peak = std::max(peak, points[i].af_db);
  }
  if (!(peak > 0.0))
    throw domain_error("pattern is identically zero on the grid");
  for (auto& p : points) p.af_db = 20.0 * std::log10(p.af_db / peak);
  return points;
}

std::vector<double> uniform_theta_grid(double lo_deg, double hi_deg,
                                       double step_deg) {
  if (!(step_deg > 0.0)) throw domain_error("grid step must be > 0 degrees");
  if (hi_deg < lo_deg) throw domain_error("grid needs lo <= hi");
  std::vector<double> grid;
  // The 1e-6 slack absorbs float rounding in (hi - lo) / step without letting
  // a genuinely fractional last step extend the grid past hi.
  const auto count = static_cast<std::size_t>(
      std::floor((hi_deg - lo_deg) / step_deg + 1e-6));
  grid.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    const double theta = lo_deg + static_cast<double>(i) * step_deg;
    grid.push_back(std::min(theta, hi_deg));
  }
  return grid;
}

std::string pattern_to_csv(const std::vector<PatternPoint>& points) {
  std::string out = "theta_deg,af_db\n";
  for (const PatternPoint& p : points) {
    out += format_csv_double(p.theta_deg);
    out += ',';
    out += format_csv_double(p.af_db);
    out += '\n';
  }
  return out;
}

}  // namespace risopt
