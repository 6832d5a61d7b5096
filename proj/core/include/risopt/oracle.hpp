#pragma once

// Analytic stand-in for the full-wave solver.  Maps unit-cell geometry and
// frequency to a reciprocal two-port impedance matrix through two coupled
// resonator branches, and generates seeded training datasets from it.
//
// Branch a (port 1, driven patch):  z11 = r11 + j(w La - 1/(w Ca))
//   La [nH] = la0 + la1 * (w1 + l3)      Ca [pF] = ca0 + ca1 * (w2 * l1)
//   r11 [ohm] = r11_scale * (1 + w1 / 24)
// Branch b (port 2, varactor slot):  z22 = r22 + j(w Lb - 1/(w Cb))
//   Lb [nH] = lb0 + lb1 * w3             Cb [pF] = cb0 + cb1 * l2
// Mutual coupling: z12 = z21 = j w M,  M [nH] = m0 + m1 * sqrt(w1 * w3).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "risopt/geometry.hpp"
#include "risopt/network.hpp"

namespace risopt {

struct OracleConfig {
  // Branch a
  double la0 = 2.0;
  double la1 = 0.08;
  double ca0 = 0.5;
  double ca1 = 0.004;
  double r11_scale = 0.5;
  // Branch b
  double lb0 = 0.5;
  double lb1 = 0.05;
  double cb0 = 0.3;
  double cb1 = 0.3;
  double r22 = 0.3;
  // Coupling
  double m0 = 5.0;
  double m1 = 0.5;
  // Frequency band the oracle is calibrated for, GHz.
  double f_lo_ghz = 2.0;
  double f_hi_ghz = 4.0;
  // Substrate constants, recorded for documentation only; the closed forms
  // above already absorb their effect.
  double er = 2.65;
  double tan_delta = 0.001;
  double thickness_mm = 3.3;

  // domain_error if any effective L or C can reach <= 0 inside the design
  // box, any loss resistance is negative, or the band is empty.
  void validate(const GeometryBounds& bounds = {}) const;
};

// Flat key/value JSON: {"la0": 2.0, ...}.  Missing keys keep their default;
// unknown keys raise parse_error so typos cannot silently change a run.
OracleConfig oracle_config_from_json(const std::string& json_text);
OracleConfig load_oracle_config(const std::string& path);
std::string oracle_config_to_json(const OracleConfig& cfg);

// Reciprocal impedance matrix at (g, freq).  domain_error if g leaves the
// design box or freq leaves the configured band.
ImpedanceMatrix synth_impedance(const OracleConfig& cfg, const GeometryParams& g,
                                double freq_ghz, const GeometryBounds& bounds = {});

// One training sample.  z holds the component order documented in
// ImpedanceMatrix::to_components().
struct DatasetRecord {
  GeometryParams geom;
  double freq_ghz = 0.0;
  std::array<double, 8> z{};
};

struct FrequencyGrid {
  double f_lo_ghz = 2.0;
  double f_hi_ghz = 4.0;
  int n_freq = 201;

  // domain_error unless f_lo <= f_hi and n_freq >= 1 (n_freq == 1 needs
  // f_lo == f_hi to be meaningful; the single point sits at f_lo).
  void validate() const;
  double point(int i) const;
};

// n_geometries draws uniform in the design box from a seeded generator, each
// paired with every grid frequency, in (geometry, frequency) nested order.
// The sampler uses a fixed 53-bit mantissa construction so identical seeds
// reproduce identical records on any platform.
std::vector<DatasetRecord> generate_dataset(const OracleConfig& cfg,
                                            int n_geometries,
                                            const FrequencyGrid& grid,
                                            std::uint64_t seed,
                                            const GeometryBounds& bounds = {});

// Streaming variant for large runs; records arrive in the same order.
void generate_dataset(const OracleConfig& cfg, int n_geometries,
                      const FrequencyGrid& grid, std::uint64_t seed,
                      const std::function<void(const DatasetRecord&)>& sink,
                      const GeometryBounds& bounds = {});

// JSON-lines dataset IO.  One object per line with keys "geom" (6 floats),
// "freq_ghz" and "z" (8 floats).  Readers raise parse_error carrying the
// 1-based line number of the first malformed line.
void write_dataset_line(std::ostream& out, const DatasetRecord& rec);
std::vector<DatasetRecord> read_dataset_jsonl(const std::string& path);
std::vector<DatasetRecord> parse_dataset_jsonl(std::istream& in);

}  // namespace risopt
