#include "risopt/designer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "risopt/io_util.hpp"
#include "risopt/search.hpp"

namespace risopt {

namespace {

// splitmix64 step; gives every outer iteration its own well-separated RNG
// stream from the one user-facing seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double amplitude_penalty_term(double amplitude_db, const DesignSpec& spec) {
  return spec.penalty == AmplitudePenalty::saturating
             ? std::max(amplitude_db, spec.amplitude_floor_db)
             : amplitude_db;
}

}  // namespace

void OptimizerSettings::validate() const {
  if (population < 4) throw domain_error("optimizer population must be >= 4");
  if (generations < 1) throw domain_error("optimizer generations must be >= 1");
  if (!(de_weight > 0.0 && de_weight <= 2.0))
    throw domain_error("de_weight must lie in (0, 2]");
  if (!(de_crossover >= 0.0 && de_crossover <= 1.0))
    throw domain_error("de_crossover must lie in [0, 1]");
  if (refine_rounds < 0) throw domain_error("refine_rounds must be >= 0");
  if (refine_scan_points < 2)
    throw domain_error("refine_scan_points must be >= 2");
  if (refine_golden_iterations < 0)
    throw domain_error("refine_golden_iterations must be >= 0");
  if (capacitance_grid < 2) throw domain_error("capacitance_grid must be >= 2");
  if (capacitance_golden_iterations < 0)
    throw domain_error("capacitance_golden_iterations must be >= 0");
}

void DesignSpec::validate() const {
  if (bits < 1 || bits > 4)
    throw domain_error("bits must lie in [1, 4]");
  if (!(freq_ghz > 0.0)) throw domain_error("design frequency must be > 0 GHz");
  if (!(phase_weight >= 0.0) || !(amplitude_weight >= 0.0))
    throw domain_error("loss weights must be >= 0");
  if (!(amplitude_floor_db < 0.0))
    throw domain_error("amplitude floor must be < 0 dB");
  diode.validate();
  if (!(env.z0_ohm > 0.0)) throw domain_error("port impedance must be > 0 ohm");
  bounds.validate();
  optimizer.validate();
  if (initial_capacitance_pf < diode.c_min_pf ||
      initial_capacitance_pf > diode.c_max_pf)
    throw domain_error("initial capacitance must lie within the diode range");
}

PhaseSchedule PhaseSchedule::full(int bits) {
  if (bits < 1 || bits > 4) throw domain_error("bits must lie in [1, 4]");
  PhaseSchedule s;
  const int n = 1 << bits;
  s.delta_theta_deg = 360.0 / static_cast<double>(n);
  s.targets_deg.resize(n);
  for (int k = 0; k < n; ++k)
    s.targets_deg[k] = static_cast<double>(k) * s.delta_theta_deg;
  return s;
}

PhaseSchedule PhaseSchedule::prefix(std::size_t k) const {
  if (k < 1 || k > targets_deg.size())
    throw contract_error("schedule prefix length out of range");
  PhaseSchedule s;
  s.delta_theta_deg = delta_theta_deg;
  s.targets_deg.assign(targets_deg.begin(),
                       targets_deg.begin() + static_cast<std::ptrdiff_t>(k));
  const std::size_t m = std::min(k, realized_deg.size());
  s.realized_deg.assign(realized_deg.begin(),
                        realized_deg.begin() + static_cast<std::ptrdiff_t>(m));
  return s;
}

void PhaseSchedule::validate() const {
  if (targets_deg.empty()) throw domain_error("phase schedule must be non-empty");
  if (!(delta_theta_deg > 0.0))
    throw domain_error("delta_theta must be > 0 degrees");
  if (targets_deg.front() != 0.0)
    throw domain_error("phase schedule must start at 0 degrees");
  for (std::size_t i = 0; i + 1 < targets_deg.size(); ++i)
    if (!(targets_deg[i] < targets_deg[i + 1]))
      throw domain_error("phase targets must be strictly increasing");
  if (!(targets_deg.back() < 360.0))
    throw domain_error("phase targets must stay below 360 degrees");
}

ImpedanceFn make_surrogate_predictor(SurrogateModel model) {
  auto shared = std::make_shared<SurrogateModel>(std::move(model));
  return [shared](const GeometryParams& g, double freq_ghz) {
    return predict_impedance(*shared, g, freq_ghz);
  };
}

ImpedanceFn make_oracle_predictor(OracleConfig config, GeometryBounds bounds) {
  config.validate(bounds);
  auto cfg = std::make_shared<OracleConfig>(std::move(config));
  auto box = std::make_shared<GeometryBounds>(std::move(bounds));
  return [cfg, box](const GeometryParams& g, double freq_ghz) {
    return synth_impedance(*cfg, g, freq_ghz, *box);
  };
}

Complex predict_s11(const ImpedanceFn& fn, const GeometryParams& g,
                    double capacitance_pf, double freq_ghz,
                    const DiodeModel& diode, const Environment& env) {
  const ImpedanceMatrix z = fn(g, freq_ghz);
  const Complex za = diode_impedance(diode, capacitance_pf, freq_ghz);
  return s11_from_network(z, za, env);
}

Complex predict_s11(const SurrogateModel& model, const GeometryParams& g,
                    double capacitance_pf, double freq_ghz,
                    const DiodeModel& diode, const Environment& env) {
  const ImpedanceMatrix z = predict_impedance(model, g, freq_ghz);
  const Complex za = diode_impedance(diode, capacitance_pf, freq_ghz);
  return s11_from_network(z, za, env);
}

std::vector<StateResponse> state_responses(const ImpedanceFn& fn,
                                           const GeometryParams& g,
                                           std::span<const double> caps_pf,
                                           const DesignSpec& spec) {
  if (caps_pf.empty())
    throw contract_error("state_responses needs at least one capacitance");
  const ImpedanceMatrix z = fn(g, spec.freq_ghz);
  std::vector<StateResponse> out(caps_pf.size());
  for (std::size_t i = 0; i < caps_pf.size(); ++i) {
    const Complex za = diode_impedance(spec.diode, caps_pf[i], spec.freq_ghz);
    const DbPhase r = s11_to_db_phase(s11_from_network(z, za, spec.env));
    out[i].capacitance_pf = caps_pf[i];
    out[i].amplitude_db = r.amplitude_db;
    out[i].phase_deg = r.phase_deg;
  }
  for (auto& s : out)
    s.rel_phase_deg = wrap_phase_deg(s.phase_deg - out.front().phase_deg);
  return out;
}

double evaluate_loss(std::span<const double> rel_phases_deg,
                     std::span<const double> targets_deg,
                     std::span<const double> amplitudes_db,
                     const DesignSpec& spec) {
  if (rel_phases_deg.empty() || rel_phases_deg.size() != targets_deg.size() ||
      rel_phases_deg.size() != amplitudes_db.size())
    throw contract_error("loss inputs must be equal-length and non-empty");
  double loss = 0.0;
  for (std::size_t i = 0; i < rel_phases_deg.size(); ++i) {
    const double err = wrap_phase_deg(rel_phases_deg[i] - targets_deg[i]);
    loss += spec.phase_weight * err * err -
            spec.amplitude_weight * amplitude_penalty_term(amplitudes_db[i], spec);
  }
  return loss;
}

double evaluate_loss(const ImpedanceFn& fn, const GeometryParams& g,
                     std::span<const double> caps_pf,
                     const PhaseSchedule& schedule, const DesignSpec& spec) {
  schedule.validate();
  if (caps_pf.size() != schedule.size())
    throw contract_error("capacitance list must match the schedule length");
  const std::vector<StateResponse> states =
      state_responses(fn, g, caps_pf, spec);
  std::vector<double> rel(states.size()), amp(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    rel[i] = states[i].rel_phase_deg;
    amp[i] = states[i].amplitude_db;
  }
  return evaluate_loss(rel, schedule.targets_deg, amp, spec);
}

GeometryParams optimize_passive(const ImpedanceFn& fn,
                                std::span<const double> caps_pf,
                                const PhaseSchedule& schedule,
                                const DesignSpec& spec,
                                const GeometryParams* incumbent,
                                std::optional<std::uint64_t> seed) {
  spec.validate();
  schedule.validate();
  if (caps_pf.size() != schedule.size())
    throw contract_error("capacitance list must match the schedule length");

  const VectorFn objective = [&](std::span<const double> x) {
    return evaluate_loss(fn, GeometryParams::from_array(x), caps_pf, schedule,
                         spec);
  };

  DeConfig de;
  de.population = spec.optimizer.population;
  de.generations = spec.optimizer.generations;
  de.weight = spec.optimizer.de_weight;
  de.crossover = spec.optimizer.de_crossover;
  de.seed = seed.value_or(spec.optimizer.seed);

  std::optional<std::vector<double>> start;
  if (incumbent != nullptr) {
    const auto a = incumbent->to_array();
    start.emplace(a.begin(), a.end());
  }

  const std::vector<double> lo(spec.bounds.lo.begin(), spec.bounds.lo.end());
  const std::vector<double> hi(spec.bounds.hi.begin(), spec.bounds.hi.end());
  const DeResult coarse = differential_evolution(objective, lo, hi, de, start);

  CoordinateRefineConfig refine;
  refine.rounds = spec.optimizer.refine_rounds;
  refine.scan_points = spec.optimizer.refine_scan_points;
  refine.golden_iterations = spec.optimizer.refine_golden_iterations;
  const std::vector<double> refined =
      coordinate_refine(objective, lo, hi, coarse.best, refine);

  return GeometryParams::from_array(refined);
}

std::vector<double> optimize_diode_states(const ImpedanceFn& fn,
                                          const GeometryParams& g,
                                          const PhaseSchedule& schedule,
                                          const DesignSpec& spec) {
  spec.validate();
  schedule.validate();
  const ImpedanceMatrix z = fn(g, spec.freq_ghz);

  const auto response = [&](double c_pf) {
    const Complex za = diode_impedance(spec.diode, c_pf, spec.freq_ghz);
    return s11_to_db_phase(s11_from_network(z, za, spec.env));
  };

  std::vector<double> caps(schedule.size());

  // State 1 maximizes amplitude; its phase becomes the reference.
  const ScalarFn neg_amplitude = [&](double c) {
    return -response(c).amplitude_db;
  };
  caps[0] = grid_then_golden(neg_amplitude, spec.diode.c_min_pf,
                             spec.diode.c_max_pf, spec.optimizer.capacitance_grid,
                             spec.optimizer.capacitance_golden_iterations)
                .x;
  const double reference_phase = response(caps[0]).phase_deg;

  // The loss is separable in the remaining capacitances.
  for (std::size_t i = 1; i < caps.size(); ++i) {
    const double target = schedule.targets_deg[i];
    const ScalarFn term = [&](double c) {
      const DbPhase r = response(c);
      const double err =
          wrap_phase_deg(r.phase_deg - reference_phase - target);
      return spec.phase_weight * err * err -
             spec.amplitude_weight * amplitude_penalty_term(r.amplitude_db, spec);
    };
    caps[i] = grid_then_golden(term, spec.diode.c_min_pf, spec.diode.c_max_pf,
                               spec.optimizer.capacitance_grid,
                               spec.optimizer.capacitance_golden_iterations)
                  .x;
  }
  return caps;
}

DesignResult design_nbit(const ImpedanceFn& fn, const DesignSpec& spec) {
  spec.validate();
  const PhaseSchedule full = PhaseSchedule::full(spec.bits);
  const int n_states = spec.state_count();

  DesignResult result;
  result.bits = spec.bits;
  result.freq_ghz = spec.freq_ghz;

  std::vector<double> caps{spec.initial_capacitance_pf};
  GeometryParams geom{};
  bool have_geom = false;
  double best_loss = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= n_states; ++k) {
    const PhaseSchedule sub = full.prefix(static_cast<std::size_t>(k));
    const std::uint64_t iteration_seed =
        derive_seed(spec.optimizer.seed, static_cast<std::uint64_t>(k));
    geom = optimize_passive(fn, caps, sub, spec,
                            have_geom ? &geom : nullptr, iteration_seed);
    have_geom = true;
    caps = optimize_diode_states(fn, geom, sub, spec);

    const double loss = evaluate_loss(fn, geom, caps, sub, spec);
    result.iteration_loss.push_back(loss);
    best_loss = std::min(best_loss, loss);
    result.loss_trace.push_back(best_loss);

    // Schedule extension: the next state starts from the last state's value.
    if (k < n_states) caps.push_back(caps.back());
  }

  result.geom = geom;
  result.capacitances_pf = caps;
  result.states = state_responses(fn, geom, caps, spec);
  result.schedule = full;
  result.schedule.realized_deg.resize(result.states.size());
  for (std::size_t i = 0; i < result.states.size(); ++i)
    result.schedule.realized_deg[i] = result.states[i].rel_phase_deg;
  result.final_loss = result.iteration_loss.back();

  result.worst_state = 1;
  result.worst_amplitude_db = result.states.front().amplitude_db;
  for (std::size_t i = 1; i < result.states.size(); ++i)
    if (result.states[i].amplitude_db < result.worst_amplitude_db) {
      result.worst_amplitude_db = result.states[i].amplitude_db;
      result.worst_state = static_cast<int>(i) + 1;
    }
  result.feasible = result.worst_amplitude_db > spec.amplitude_floor_db;
  return result;
}

std::vector<SpectrumPoint> sweep_spectrum(const ImpedanceFn& fn,
                                          const DesignResult& result,
                                          const DesignSpec& spec,
                                          double f_lo_ghz, double f_hi_ghz,
                                          int n_freq) {
  if (n_freq < 1) throw domain_error("spectrum needs at least one frequency");
  if (!(f_lo_ghz > 0.0) || f_hi_ghz < f_lo_ghz)
    throw domain_error("spectrum band must satisfy 0 < f_lo <= f_hi");
  if (n_freq == 1 && f_hi_ghz != f_lo_ghz)
    throw domain_error("a single-point spectrum needs f_lo == f_hi");
  if (result.capacitances_pf.empty())
    throw contract_error("design carries no capacitances");

  const std::size_t n_states = result.capacitances_pf.size();
  std::vector<SpectrumPoint> points(n_states * static_cast<std::size_t>(n_freq));

  DesignSpec at_freq = spec;
  for (int fi = 0; fi < n_freq; ++fi) {
    const double f =
        n_freq == 1 ? f_lo_ghz
                    : f_lo_ghz + (f_hi_ghz - f_lo_ghz) * static_cast<double>(fi) /
                          static_cast<double>(n_freq - 1);
    at_freq.freq_ghz = f;
    const std::vector<StateResponse> states =
        state_responses(fn, result.geom, result.capacitances_pf, at_freq);
    for (std::size_t s = 0; s < n_states; ++s) {
      SpectrumPoint& p = points[s * static_cast<std::size_t>(n_freq) +
                                static_cast<std::size_t>(fi)];
      p.state = static_cast<int>(s) + 1;
      p.freq_ghz = f;
      p.amplitude_db = states[s].amplitude_db;
      p.rel_phase_deg = states[s].rel_phase_deg;
    }
  }
  return points;
}

VerificationReport verify_against_oracle(const DesignResult& result,
                                         const OracleConfig& oracle_config,
                                         const DesignSpec& spec) {
  if (result.states.size() != result.capacitances_pf.size() ||
      result.states.empty())
    throw contract_error("design must carry per-state responses");
  const ImpedanceFn oracle_fn =
      make_oracle_predictor(oracle_config, spec.bounds);
  const std::vector<StateResponse> oracle_states =
      state_responses(oracle_fn, result.geom, result.capacitances_pf, spec);

  VerificationReport report;
  report.rows.resize(result.states.size());
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    VerificationRow& row = report.rows[i];
    row.state = static_cast<int>(i) + 1;
    row.design_amplitude_db = result.states[i].amplitude_db;
    row.oracle_amplitude_db = oracle_states[i].amplitude_db;
    row.amplitude_delta_db = row.design_amplitude_db - row.oracle_amplitude_db;
    row.design_rel_phase_deg = result.states[i].rel_phase_deg;
    row.oracle_rel_phase_deg = oracle_states[i].rel_phase_deg;
    row.phase_delta_deg =
        wrap_phase_deg(row.design_rel_phase_deg - row.oracle_rel_phase_deg);
    report.max_amplitude_delta_db = std::max(report.max_amplitude_delta_db,
                                             std::abs(row.amplitude_delta_db));
    report.max_phase_delta_deg =
        std::max(report.max_phase_delta_deg, std::abs(row.phase_delta_deg));
  }
  return report;
}

namespace {

constexpr const char* kDesignFormat = "risopt-design-v1";

nlohmann::json geometry_to_json(const GeometryParams& g) {
  nlohmann::json j;
  const auto a = g.to_array();
  for (int i = 0; i < kGeometryDim; ++i) j[kGeometryFieldNames[i]] = a[i];
  return j;
}

GeometryParams geometry_from_json(const nlohmann::json& j) {
  std::array<double, kGeometryDim> a{};
  for (int i = 0; i < kGeometryDim; ++i) {
    if (!j.contains(kGeometryFieldNames[i]) ||
        !j[kGeometryFieldNames[i]].is_number())
      throw parse_error(std::string("geometry field '") +
                            kGeometryFieldNames[i] + "' missing or non-numeric",
                        0);
    a[i] = j[kGeometryFieldNames[i]].get<double>();
  }
  return GeometryParams::from_array(a);
}

std::vector<double> doubles_from_json(const nlohmann::json& j,
                                      const char* name) {
  if (!j.is_array())
    throw parse_error(std::string("field '") + name + "' must be an array", 0);
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number())
      throw parse_error(std::string("field '") + name +
                            "' holds a non-numeric entry",
                        0);
    v.push_back(e.get<double>());
  }
  return v;
}

const nlohmann::json& require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name))
    throw parse_error(std::string("design file is missing field '") + name + "'",
                      0);
  return j.at(name);
}

double number_field(const nlohmann::json& j, const char* name) {
  const nlohmann::json& f = require_field(j, name);
  if (!f.is_number())
    throw parse_error(std::string("field '") + name + "' must be a number", 0);
  return f.get<double>();
}

}  // namespace

std::string design_to_json(const DesignDocument& doc) {
  nlohmann::json j;
  j["format"] = kDesignFormat;

  nlohmann::json spec;
  spec["bits"] = doc.spec.bits;
  spec["freq_ghz"] = doc.spec.freq_ghz;
  spec["amplitude_floor_db"] = doc.spec.amplitude_floor_db;
  spec["phase_weight"] = doc.spec.phase_weight;
  spec["amplitude_weight"] = doc.spec.amplitude_weight;
  spec["penalty"] = doc.spec.penalty == AmplitudePenalty::saturating
                        ? "saturating"
                        : "linear";
  spec["initial_capacitance_pf"] = doc.spec.initial_capacitance_pf;
  spec["diode"] = {{"r_series_ohm", doc.spec.diode.r_series_ohm},
                   {"l_series_nh", doc.spec.diode.l_series_nh},
                   {"c_min_pf", doc.spec.diode.c_min_pf},
                   {"c_max_pf", doc.spec.diode.c_max_pf}};
  spec["env"] = {{"z0_ohm", doc.spec.env.z0_ohm}};
  spec["bounds"] = {
      {"lo", std::vector<double>(doc.spec.bounds.lo.begin(),
                                 doc.spec.bounds.lo.end())},
      {"hi", std::vector<double>(doc.spec.bounds.hi.begin(),
                                 doc.spec.bounds.hi.end())}};
  spec["optimizer"] = {
      {"population", doc.spec.optimizer.population},
      {"generations", doc.spec.optimizer.generations},
      {"seed", doc.spec.optimizer.seed},
      {"de_weight", doc.spec.optimizer.de_weight},
      {"de_crossover", doc.spec.optimizer.de_crossover},
      {"refine_rounds", doc.spec.optimizer.refine_rounds},
      {"refine_scan_points", doc.spec.optimizer.refine_scan_points},
      {"refine_golden_iterations", doc.spec.optimizer.refine_golden_iterations},
      {"capacitance_grid", doc.spec.optimizer.capacitance_grid},
      {"capacitance_golden_iterations",
       doc.spec.optimizer.capacitance_golden_iterations}};
  j["spec"] = spec;

  nlohmann::json res;
  res["bits"] = doc.result.bits;
  res["freq_ghz"] = doc.result.freq_ghz;
  res["geometry"] = geometry_to_json(doc.result.geom);
  res["capacitances_pf"] = doc.result.capacitances_pf;
  nlohmann::json states = nlohmann::json::array();
  for (std::size_t i = 0; i < doc.result.states.size(); ++i) {
    const StateResponse& s = doc.result.states[i];
    states.push_back({{"state", static_cast<int>(i) + 1},
                      {"capacitance_pf", s.capacitance_pf},
                      {"amplitude_db", s.amplitude_db},
                      {"phase_deg", s.phase_deg},
                      {"rel_phase_deg", s.rel_phase_deg}});
  }
  res["states"] = states;
  res["delta_theta_deg"] = doc.result.schedule.delta_theta_deg;
  res["targets_deg"] = doc.result.schedule.targets_deg;
  res["realized_deg"] = doc.result.schedule.realized_deg;
  res["final_loss"] = doc.result.final_loss;
  res["loss_trace"] = doc.result.loss_trace;
  res["iteration_loss"] = doc.result.iteration_loss;
  res["feasible"] = doc.result.feasible;
  res["worst_state"] = doc.result.worst_state;
  res["worst_amplitude_db"] = doc.result.worst_amplitude_db;
  j["result"] = res;

  return j.dump(2) + "\n";
}

DesignDocument design_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("design file is not valid JSON: ") + e.what(),
                      0);
  }
  if (!j.is_object() || j.value("format", "") != kDesignFormat)
    throw parse_error(std::string("design file must declare format '") +
                          kDesignFormat + "'",
                      0);

  DesignDocument doc;
  const nlohmann::json& spec = require_field(j, "spec");
  doc.spec.bits = static_cast<int>(number_field(spec, "bits"));
  doc.spec.freq_ghz = number_field(spec, "freq_ghz");
  doc.spec.amplitude_floor_db = number_field(spec, "amplitude_floor_db");
  doc.spec.phase_weight = number_field(spec, "phase_weight");
  doc.spec.amplitude_weight = number_field(spec, "amplitude_weight");
  const std::string penalty = require_field(spec, "penalty").get<std::string>();
  if (penalty == "saturating")
    doc.spec.penalty = AmplitudePenalty::saturating;
  else if (penalty == "linear")
    doc.spec.penalty = AmplitudePenalty::linear;
  else
    throw parse_error("penalty must be 'saturating' or 'linear'", 0);
  doc.spec.initial_capacitance_pf = number_field(spec, "initial_capacitance_pf");
  const nlohmann::json& diode = require_field(spec, "diode");
  doc.spec.diode.r_series_ohm = number_field(diode, "r_series_ohm");
  doc.spec.diode.l_series_nh = number_field(diode, "l_series_nh");
  doc.spec.diode.c_min_pf = number_field(diode, "c_min_pf");
  doc.spec.diode.c_max_pf = number_field(diode, "c_max_pf");
  doc.spec.env.z0_ohm = number_field(require_field(spec, "env"), "z0_ohm");
  const nlohmann::json& bounds = require_field(spec, "bounds");
  const auto lo = doubles_from_json(require_field(bounds, "lo"), "bounds.lo");
  const auto hi = doubles_from_json(require_field(bounds, "hi"), "bounds.hi");
  if (lo.size() != kGeometryDim || hi.size() != kGeometryDim)
    throw parse_error("bounds must hold 6 entries per side", 0);
  std::copy(lo.begin(), lo.end(), doc.spec.bounds.lo.begin());
  std::copy(hi.begin(), hi.end(), doc.spec.bounds.hi.begin());
  const nlohmann::json& opt = require_field(spec, "optimizer");
  doc.spec.optimizer.population = static_cast<int>(number_field(opt, "population"));
  doc.spec.optimizer.generations =
      static_cast<int>(number_field(opt, "generations"));
  const nlohmann::json& seed = require_field(opt, "seed");
  if (!seed.is_number_integer() && !seed.is_number_unsigned())
    throw parse_error("optimizer seed must be an integer", 0);
  doc.spec.optimizer.seed = seed.get<std::uint64_t>();
  doc.spec.optimizer.de_weight = number_field(opt, "de_weight");
  doc.spec.optimizer.de_crossover = number_field(opt, "de_crossover");
  doc.spec.optimizer.refine_rounds =
      static_cast<int>(number_field(opt, "refine_rounds"));
  doc.spec.optimizer.refine_scan_points =
      static_cast<int>(number_field(opt, "refine_scan_points"));
  doc.spec.optimizer.refine_golden_iterations =
      static_cast<int>(number_field(opt, "refine_golden_iterations"));
  doc.spec.optimizer.capacitance_grid =
      static_cast<int>(number_field(opt, "capacitance_grid"));
  doc.spec.optimizer.capacitance_golden_iterations =
      static_cast<int>(number_field(opt, "capacitance_golden_iterations"));
  doc.spec.validate();

  const nlohmann::json& res = require_field(j, "result");
  doc.result.bits = static_cast<int>(number_field(res, "bits"));
  doc.result.freq_ghz = number_field(res, "freq_ghz");
  doc.result.geom = geometry_from_json(require_field(res, "geometry"));
  doc.result.capacitances_pf =
      doubles_from_json(require_field(res, "capacitances_pf"), "capacitances_pf");
  const nlohmann::json& states = require_field(res, "states");
  if (!states.is_array() || states.size() != doc.result.capacitances_pf.size())
    throw parse_error("states must match capacitances in length", 0);
  doc.result.states.resize(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const nlohmann::json& s = states[i];
    doc.result.states[i].capacitance_pf = number_field(s, "capacitance_pf");
    doc.result.states[i].amplitude_db = number_field(s, "amplitude_db");
    doc.result.states[i].phase_deg = number_field(s, "phase_deg");
    doc.result.states[i].rel_phase_deg = number_field(s, "rel_phase_deg");
  }
  doc.result.schedule.delta_theta_deg = number_field(res, "delta_theta_deg");
  doc.result.schedule.targets_deg =
      doubles_from_json(require_field(res, "targets_deg"), "targets_deg");
  doc.result.schedule.realized_deg =
      doubles_from_json(require_field(res, "realized_deg"), "realized_deg");
  doc.result.final_loss = number_field(res, "final_loss");
  doc.result.loss_trace =
      doubles_from_json(require_field(res, "loss_trace"), "loss_trace");
  doc.result.iteration_loss =
      doubles_from_json(require_field(res, "iteration_loss"), "iteration_loss");
  const nlohmann::json& feasible = require_field(res, "feasible");
  if (!feasible.is_boolean())
    throw parse_error("feasible must be a boolean", 0);
  doc.result.feasible = feasible.get<bool>();
  doc.result.worst_state = static_cast<int>(number_field(res, "worst_state"));
  doc.result.worst_amplitude_db = number_field(res, "worst_amplitude_db");
  return doc;
}

void save_design(const DesignDocument& doc, const std::string& path) {
  write_text_file(path, design_to_json(doc));
}

DesignDocument load_design(const std::string& path) {
  return design_from_json(read_text_file(path));
}

std::string spectrum_to_csv(const std::vector<SpectrumPoint>& points) {
  std::string out = "state,freq_ghz,amplitude_db,rel_phase_deg\n";
  for (const SpectrumPoint& p : points) {
    out += std::to_string(p.state);
    out += ',';
    out += format_csv_double(p.freq_ghz);
    out += ',';
    out += format_csv_double(p.amplitude_db);
    out += ',';
    out += format_csv_double(p.rel_phase_deg);
    out += '\n';
  }
  return out;
}

std::string verification_to_csv(const VerificationReport& report) {
  std::string out =
      "state,design_amplitude_db,oracle_amplitude_db,amplitude_delta_db,"
      "design_rel_phase_deg,oracle_rel_phase_deg,phase_delta_deg\n";
  for (const VerificationRow& r : report.rows) {
    out += std::to_string(r.state);
    out += ',';
    out += format_csv_double(r.design_amplitude_db);
    out += ',';
    out += format_csv_double(r.oracle_amplitude_db);
    out += ',';
    out += format_csv_double(r.amplitude_delta_db);
    out += ',';
    out += format_csv_double(r.design_rel_phase_deg);
    out += ',';
    out += format_csv_double(r.oracle_rel_phase_deg);
    out += ',';
    out += format_csv_double(r.phase_delta_deg);
    out += '\n';
  }
  return out;
}

}  // namespace risopt
