#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "risopt/errors.hpp"
#include "risopt/geometry.hpp"
#include "risopt/network.hpp"
#include "risopt/oracle.hpp"
#include "risopt/surrogate.hpp"

namespace risopt {

// Impedance source used by the design loop: either the trained surrogate or
// the synthetic oracle (the latter mainly for tests and fixtures).
using ImpedanceFn =
    std::function<ImpedanceMatrix(const GeometryParams&, double)>;

ImpedanceFn make_surrogate_predictor(SurrogateModel model);
ImpedanceFn make_oracle_predictor(OracleConfig config,
                                  GeometryBounds bounds = {});

// Amplitude penalty inside the loss: `saturating` applies max(amp, floor) as
// written in the matching loss; `linear` keeps pushing amplitude up even
// below the floor.
enum class AmplitudePenalty { saturating, linear };

struct OptimizerSettings {
  int population = 32;
  int generations = 200;
  std::uint64_t seed = 1;
  double de_weight = 0.7;
  double de_crossover = 0.9;
  int refine_rounds = 2;
  int refine_scan_points = 33;
  int refine_golden_iterations = 60;
  int capacitance_grid = 1024;
  int capacitance_golden_iterations = 80;

  void validate() const;
};

struct DesignSpec {
  int bits = 3;
  double freq_ghz = 3.0;
  double amplitude_floor_db = -3.0;
  double phase_weight = 0.5;
  double amplitude_weight = 0.5;
  AmplitudePenalty penalty = AmplitudePenalty::saturating;
  double initial_capacitance_pf = 2.6;
  DiodeModel diode{};
  Environment env{};
  GeometryBounds bounds{};
  OptimizerSettings optimizer{};

  int state_count() const { return 1 << bits; }
  void validate() const;
};

// Uniform target schedule: delta = 360/2^N, targets (k-1)*delta for
// k = 1..2^N. `realized_deg` collects the relative phases achieved so far.
struct PhaseSchedule {
  double delta_theta_deg = 0.0;
  std::vector<double> targets_deg;
  std::vector<double> realized_deg;

  static PhaseSchedule full(int bits);
  PhaseSchedule prefix(std::size_t k) const;
  std::size_t size() const { return targets_deg.size(); }
  void validate() const;
};

struct StateResponse {
  double capacitance_pf = 0.0;
  double amplitude_db = 0.0;
  double phase_deg = 0.0;      // absolute reflection phase
  double rel_phase_deg = 0.0;  // wrapped phase relative to state 1
};

struct DesignResult {
  int bits = 0;
  double freq_ghz = 0.0;
  GeometryParams geom{};
  std::vector<double> capacitances_pf;
  std::vector<StateResponse> states;
  PhaseSchedule schedule;
  double final_loss = 0.0;
  std::vector<double> loss_trace;      // best-so-far loss after each iteration
  std::vector<double> iteration_loss;  // raw loss of each iteration's design
  bool feasible = true;
  int worst_state = 0;  // 1-based index of the lowest-amplitude state
  double worst_amplitude_db = 0.0;
};

// Full composition: surrogate (or oracle) impedance -> diode load -> S11.
Complex predict_s11(const ImpedanceFn& fn, const GeometryParams& g,
                    double capacitance_pf, double freq_ghz,
                    const DiodeModel& diode = {}, const Environment& env = {});
Complex predict_s11(const SurrogateModel& model, const GeometryParams& g,
                    double capacitance_pf, double freq_ghz,
                    const DiodeModel& diode = {}, const Environment& env = {});

// Per-state responses at one frequency; the impedance matrix is evaluated
// once and shared across states.
std::vector<StateResponse> state_responses(const ImpedanceFn& fn,
                                           const GeometryParams& g,
                                           std::span<const double> caps_pf,
                                           const DesignSpec& spec);

// Matching loss on precomputed per-state relative phases and amplitudes.
double evaluate_loss(std::span<const double> rel_phases_deg,
                     std::span<const double> targets_deg,
                     std::span<const double> amplitudes_db,
                     const DesignSpec& spec);

// Matching loss through the predictor; caps length must equal the schedule
// length.
double evaluate_loss(const ImpedanceFn& fn, const GeometryParams& g,
                     std::span<const double> caps_pf,
                     const PhaseSchedule& schedule, const DesignSpec& spec);

// Geometry step: seeded differential evolution over the design box followed
// by coordinate-wise refinement; never worse than the incumbent.
GeometryParams optimize_passive(const ImpedanceFn& fn,
                                std::span<const double> caps_pf,
                                const PhaseSchedule& schedule,
                                const DesignSpec& spec,
                                const GeometryParams* incumbent = nullptr,
                                std::optional<std::uint64_t> seed = {});

// Capacitance step: state 1 maximizes amplitude (defining the phase
// reference), the remaining states run independent 1-D searches.
std::vector<double> optimize_diode_states(const ImpedanceFn& fn,
                                          const GeometryParams& g,
                                          const PhaseSchedule& schedule,
                                          const DesignSpec& spec);

// Alternating design loop over 2^N iterations with a growing schedule.
DesignResult design_nbit(const ImpedanceFn& fn, const DesignSpec& spec);

struct SpectrumPoint {
  int state = 0;  // 1-based
  double freq_ghz = 0.0;
  double amplitude_db = 0.0;
  double rel_phase_deg = 0.0;  // relative to state 1 at the same frequency
};

std::vector<SpectrumPoint> sweep_spectrum(const ImpedanceFn& fn,
                                          const DesignResult& result,
                                          const DesignSpec& spec,
                                          double f_lo_ghz, double f_hi_ghz,
                                          int n_freq);

struct VerificationRow {
  int state = 0;  // 1-based
  double design_amplitude_db = 0.0;
  double oracle_amplitude_db = 0.0;
  double amplitude_delta_db = 0.0;
  double design_rel_phase_deg = 0.0;
  double oracle_rel_phase_deg = 0.0;
  double phase_delta_deg = 0.0;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  double max_phase_delta_deg = 0.0;
  double max_amplitude_delta_db = 0.0;
};

// Re-evaluates every state through the synthetic oracle and compares with
// the responses recorded in the design.
VerificationReport verify_against_oracle(const DesignResult& result,
                                         const OracleConfig& oracle_config,
                                         const DesignSpec& spec);

struct DesignDocument {
  DesignSpec spec;
  DesignResult result;
};

std::string design_to_json(const DesignDocument& doc);
DesignDocument design_from_json(const std::string& json_text);
void save_design(const DesignDocument& doc, const std::string& path);
DesignDocument load_design(const std::string& path);

// CSV serialization used by the command-line tools.
std::string spectrum_to_csv(const std::vector<SpectrumPoint>& points);
std::string verification_to_csv(const VerificationReport& report);

}  // namespace risopt
