#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "risopt/designer.hpp"
#include "risopt/errors.hpp"
#include "risopt/farfield.hpp"
#include "risopt/geometry.hpp"
#include "risopt/io_util.hpp"
#include "risopt/network.hpp"
#include "risopt/oracle.hpp"
#include "risopt/surrogate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Applies --config file values to options the user did not pass on the
// command line. Only tuning knobs are configurable; paths stay on the CLI.
class ConfigBinder {
 public:
  void bind(CLI::Option* option, std::string key,
            std::function<void(const nlohmann::json&)> apply) {
    entries_.push_back({option, std::move(key), std::move(apply)});
  }

  void apply(const nlohmann::json& config) const {
    for (const auto& [key, value] : config.items()) {
      const Entry* hit = nullptr;
      for (const Entry& e : entries_)
        if (e.key == key) {
          hit = &e;
          break;
        }
      if (hit == nullptr)
        throw risopt::parse_error("unknown config key '" + key + "'", 0);
      if (hit->option->count() == 0) hit->apply(value);
    }
  }

 private:
  struct Entry {
    CLI::Option* option;
    std::string key;
    std::function<void(const nlohmann::json&)> apply;
  };
  std::vector<Entry> entries_;
};

template <typename T>
std::function<void(const nlohmann::json&)> number_from_config(T& target,
                                                              std::string key) {
  return [&target, key = std::move(key)](const nlohmann::json& v) {
    if (!v.is_number())
      throw risopt::parse_error("config key '" + key + "' must be a number", 0);
    target = v.get<T>();
  };
}

std::function<void(const nlohmann::json&)> string_from_config(
    std::string& target, std::string key) {
  return [&target, key = std::move(key)](const nlohmann::json& v) {
    if (!v.is_string())
      throw risopt::parse_error("config key '" + key + "' must be a string", 0);
    target = v.get<std::string>();
  };
}

struct Manifest {
  std::string command;
  nlohmann::json options = nlohmann::json::object();
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();

  void add_input(const std::string& path) {
    inputs[path] = risopt::hash_file(path);
  }
  void add_output(const std::string& path) {
    outputs[path] = risopt::hash_file(path);
  }
  void write(const std::string& primary_output) const {
    nlohmann::json j;
    j["command"] = command;
    j["options"] = options;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    risopt::write_text_file(primary_output + ".manifest.json", j.dump(2) + "\n");
  }
};

struct GenDataArgs {
  std::string oracle_path;
  std::string out;
  int n_geometries = 2000;
  double band_lo_ghz = 2.0;
  double band_hi_ghz = 4.0;
  int n_freq = 201;
};

struct TrainArgs {
  std::string data_path;
  std::string model_out;
  std::string metrics_out;
  int epochs = 2000;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double train_fraction = 0.8;
};

struct DesignArgs {
  std::string model_path;
  std::string out;
  int bits = 3;
  double freq_ghz = 3.5;
  double floor_db = -3.0;
  double phase_weight = 0.5;
  double amplitude_weight = 0.5;
  double initial_capacitance_pf = 2.6;
  std::string penalty = "saturating";
  int population = 32;
  int generations = 200;
};

struct SpectrumArgs {
  std::string model_path;
  std::string design_path;
  std::string out;
  double band_lo_ghz = 0.0;  // 0 means "use the model band"
  double band_hi_ghz = 0.0;
  int n_freq = 201;
};

struct VerifyArgs {
  std::string design_path;
  std::string oracle_path;
  std::string out;
  std::string csv_out;
};

struct PatternArgs {
  std::string code;
  std::string out;
  double pitch_mm = 27.25;
  double freq_ghz = 3.5;
  double theta_lo_deg = -90.0;
  double theta_hi_deg = 90.0;
  double theta_step_deg = 0.01;
};

int run_gen_data(const GenDataArgs& args, std::uint64_t seed) {
  risopt::OracleConfig config;
  Manifest manifest;
  manifest.command = "gen-data";
  if (!args.oracle_path.empty()) {
    config = risopt::load_oracle_config(args.oracle_path);
    manifest.add_input(args.oracle_path);
  }
  const risopt::GeometryBounds bounds;
  config.validate(bounds);
  const risopt::FrequencyGrid grid{args.band_lo_ghz, args.band_hi_ghz,
                                   args.n_freq};

  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + args.out + "' for writing");
  std::size_t n_records = 0;
  risopt::generate_dataset(config, args.n_geometries, grid, seed,
                           [&](const risopt::DatasetRecord& rec) {
                             risopt::write_dataset_line(out, rec);
                             ++n_records;
                           },
                           bounds);
  out.flush();
  if (!out) throw std::runtime_error("failed while writing '" + args.out + "'");
  out.close();

  manifest.options = {{"seed", seed},
                      {"n_geometries", args.n_geometries},
                      {"band_lo_ghz", args.band_lo_ghz},
                      {"band_hi_ghz", args.band_hi_ghz},
                      {"n_freq", args.n_freq},
                      {"out", args.out},
                      {"oracle", nlohmann::json::parse(
                                     risopt::oracle_config_to_json(config))}};
  manifest.add_output(args.out);
  manifest.write(args.out);

  std::cout << "wrote " << n_records << " records ("
            << args.n_geometries << " geometries x " << args.n_freq
            << " frequencies) to " << args.out << "\n";
  return kExitOk;
}

int run_train(const TrainArgs& args, std::uint64_t seed) {
  const std::vector<risopt::DatasetRecord> records =
      risopt::read_dataset_jsonl(args.data_path);

  risopt::TrainConfig config;
  config.train_fraction = args.train_fraction;
  config.epochs = args.epochs;
  config.batch_size = args.batch_size;
  config.learning_rate = args.learning_rate;
  config.seed = seed;

  const risopt::TrainResult result = risopt::train(records, config);

  const std::string metrics_out = args.metrics_out.empty()
                                      ? args.model_out + ".metrics.json"
                                      : args.metrics_out;
  risopt::save_model(result.model, args.model_out);
  risopt::write_text_file(metrics_out, risopt::metrics_to_json(result.metrics));

  std::printf("%-8s %12s %12s %12s %12s   (normalized)\n", "output",
              "train_mse", "train_mae", "test_mse", "test_mae");
  for (int c = 0; c < risopt::kSurrogateOutputDim; ++c)
    std::printf("%-8s %12.6f %12.6f %12.6f %12.6f\n",
                risopt::kOutputComponentNames[c],
                result.metrics.train_normalized[c].mse,
                result.metrics.train_normalized[c].mae,
                result.metrics.test_normalized[c].mse,
                result.metrics.test_normalized[c].mae);
  std::printf("final epoch loss: train %.6g, test %.6g\n",
              result.metrics.epoch_train_loss.back(),
              result.metrics.epoch_test_loss.back());

  Manifest manifest;
  manifest.command = "train";
  manifest.options = {{"seed", seed},
                      {"data", args.data_path},
                      {"model_out", args.model_out},
                      {"metrics_out", metrics_out},
                      {"epochs", args.epochs},
                      {"batch_size", args.batch_size},
                      {"learning_rate", args.learning_rate},
                      {"train_fraction", args.train_fraction}};
  manifest.add_input(args.data_path);
  manifest.add_output(args.model_out);
  manifest.add_output(metrics_out);
  manifest.write(args.model_out);
  return kExitOk;
}

int run_design(const DesignArgs& args, std::uint64_t seed) {
  risopt::SurrogateModel model = risopt::load_model(args.model_path);

  risopt::DesignSpec spec;
  spec.bits = args.bits;
  spec.freq_ghz = args.freq_ghz;
  spec.amplitude_floor_db = args.floor_db;
  spec.phase_weight = args.phase_weight;
  spec.amplitude_weight = args.amplitude_weight;
  spec.initial_capacitance_pf = args.initial_capacitance_pf;
  if (args.penalty == "saturating")
    spec.penalty = risopt::AmplitudePenalty::saturating;
  else if (args.penalty == "linear")
    spec.penalty = risopt::AmplitudePenalty::linear;
  else
    throw risopt::domain_error("penalty must be 'saturating' or 'linear'");
  spec.optimizer.population = args.population;
  spec.optimizer.generations = args.generations;
  spec.optimizer.seed = seed;

  const risopt::ImpedanceFn fn =
      risopt::make_surrogate_predictor(std::move(model));
  const risopt::DesignResult result = risopt::design_nbit(fn, spec);
  risopt::save_design({spec, result}, args.out);

  const auto g = result.geom.to_array();
  std::printf("geometry (mm):");
  for (int i = 0; i < risopt::kGeometryDim; ++i)
    std::printf(" %s=%.4f", risopt::kGeometryFieldNames[i], g[i]);
  std::printf("\n%-6s %12s %15s %14s %13s\n", "state", "cap_pf", "rel_phase_deg",
              "target_deg", "amplitude_db");
  for (std::size_t i = 0; i < result.states.size(); ++i)
    std::printf("%-6zu %12.4f %15.3f %14.1f %13.3f\n", i + 1,
                result.states[i].capacitance_pf,
                result.states[i].rel_phase_deg,
                result.schedule.targets_deg[i],
                result.states[i].amplitude_db);
  std::printf("final loss: %.6g, feasible: %s\n", result.final_loss,
              result.feasible ? "yes" : "no");
  if (!result.feasible)
    std::cerr << "warning: design is infeasible; state " << result.worst_state
              << " reaches only " << result.worst_amplitude_db
              << " dB against a floor of " << spec.amplitude_floor_db
              << " dB\n";

  Manifest manifest;
  manifest.command = "design";
  manifest.options = {{"seed", seed},
                      {"model", args.model_path},
                      {"out", args.out},
                      {"bits", args.bits},
                      {"freq_ghz", args.freq_ghz},
                      {"floor_db", args.floor_db},
                      {"phase_weight", args.phase_weight},
                      {"amplitude_weight", args.amplitude_weight},
                      {"initial_capacitance_pf", args.initial_capacitance_pf},
                      {"penalty", args.penalty},
                      {"population", args.population},
                      {"generations", args.generations}};
  manifest.add_input(args.model_path);
  manifest.add_output(args.out);
  manifest.write(args.out);
  return kExitOk;
}

int run_spectrum(const SpectrumArgs& args) {
  risopt::SurrogateModel model = risopt::load_model(args.model_path);
  const risopt::DesignDocument doc = risopt::load_design(args.design_path);

  const double lo =
      args.band_lo_ghz > 0.0 ? args.band_lo_ghz : model.band_lo_ghz();
  const double hi =
      args.band_hi_ghz > 0.0 ? args.band_hi_ghz : model.band_hi_ghz();

  const risopt::ImpedanceFn fn =
      risopt::make_surrogate_predictor(std::move(model));
  const std::vector<risopt::SpectrumPoint> points =
      risopt::sweep_spectrum(fn, doc.result, doc.spec, lo, hi, args.n_freq);
  risopt::write_text_file(args.out, risopt::spectrum_to_csv(points));

  std::cout << "wrote " << points.size() << " spectrum rows ("
            << doc.result.capacitances_pf.size() << " states x " << args.n_freq
            << " frequencies) to " << args.out << "\n";

  Manifest manifest;
  manifest.command = "spectrum";
  manifest.options = {{"model", args.model_path},
                      {"design", args.design_path},
                      {"out", args.out},
                      {"band_lo_ghz", lo},
                      {"band_hi_ghz", hi},
                      {"n_freq", args.n_freq}};
  manifest.add_input(args.model_path);
  manifest.add_input(args.design_path);
  manifest.add_output(args.out);
  manifest.write(args.out);
  return kExitOk;
}

int run_verify(const VerifyArgs& args) {
  const risopt::DesignDocument doc = risopt::load_design(args.design_path);
  risopt::OracleConfig config;
  Manifest manifest;
  manifest.command = "verify";
  if (!args.oracle_path.empty()) {
    config = risopt::load_oracle_config(args.oracle_path);
    manifest.add_input(args.oracle_path);
  }

  const risopt::VerificationReport report =
      risopt::verify_against_oracle(doc.result, config, doc.spec);

  nlohmann::json j;
  j["max_phase_delta_deg"] = report.max_phase_delta_deg;
  j["max_amplitude_delta_db"] = report.max_amplitude_delta_db;
  nlohmann::json rows = nlohmann::json::array();
  for (const risopt::VerificationRow& r : report.rows)
    rows.push_back({{"state", r.state},
                    {"design_amplitude_db", r.design_amplitude_db},
                    {"oracle_amplitude_db", r.oracle_amplitude_db},
                    {"amplitude_delta_db", r.amplitude_delta_db},
                    {"design_rel_phase_deg", r.design_rel_phase_deg},
                    {"oracle_rel_phase_deg", r.oracle_rel_phase_deg},
                    {"phase_delta_deg", r.phase_delta_deg}});
  j["rows"] = rows;
  risopt::write_text_file(args.out, j.dump(2) + "\n");
  if (!args.csv_out.empty())
    risopt::write_text_file(args.csv_out, risopt::verification_to_csv(report));

  std::printf("verification: max |phase delta| %.4f deg, max |amplitude delta| %.4f dB over %zu states\n",
              report.max_phase_delta_deg, report.max_amplitude_delta_db,
              report.rows.size());

  manifest.options = {{"design", args.design_path},
                      {"oracle_config", args.oracle_path},
                      {"out", args.out},
                      {"csv_out", args.csv_out}};
  manifest.add_input(args.design_path);
  manifest.add_output(args.out);
  if (!args.csv_out.empty()) manifest.add_output(args.csv_out);
  manifest.write(args.out);
  return kExitOk;
}

int run_pattern(const PatternArgs& args) {
  const risopt::CodingSequence code = risopt::CodingSequence::parse(args.code);
  risopt::ArrayGeometry geom;
  geom.n_columns = static_cast<int>(code.size());
  geom.pitch_mm = args.pitch_mm;
  geom.freq_ghz = args.freq_ghz;

  const std::vector<double> grid = risopt::uniform_theta_grid(
      args.theta_lo_deg, args.theta_hi_deg, args.theta_step_deg);
  const std::vector<risopt::PatternPoint> points =
      risopt::pattern_sweep(geom, code, grid);
  risopt::write_text_file(args.out, risopt::pattern_to_csv(points));

  const risopt::PatternPoint* peak = &points.front();
  for (const risopt::PatternPoint& p : points)
    if (p.af_db > peak->af_db) peak = &p;
  std::printf("pattern peak at %.2f deg", peak->theta_deg);
  try {
    std::printf("; generalized Snell's law predicts %.2f deg",
                risopt::beam_angle_snell(geom, code));
  } catch (const risopt::domain_error&) {
    std::printf("; no net phase gradient (broadside code)");
  }
  std::printf("; %zu rows written to %s\n", points.size(), args.out.c_str());

  Manifest manifest;
  manifest.command = "pattern";
  manifest.options = {{"code", args.code},
                      {"out", args.out},
                      {"pitch_mm", args.pitch_mm},
                      {"freq_ghz", args.freq_ghz},
                      {"n_columns", geom.n_columns},
                      {"theta_lo_deg", args.theta_lo_deg},
                      {"theta_hi_deg", args.theta_hi_deg},
                      {"theta_step_deg", args.theta_step_deg}};
  manifest.add_output(args.out);
  manifest.write(args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS unit-cell surrogate, designer, and far-field toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string config_path;
  CLI::Option* seed_option =
      app.add_option("--seed", seed, "RNG seed shared by all subcommands");
  app.add_option("--config", config_path,
                 "JSON file supplying tuning options not given on the CLI");

  std::map<const CLI::App*, ConfigBinder> binders;

  GenDataArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen-data", "Sample the synthetic oracle into a JSON Lines dataset");
  gen->fallthrough();
  gen->add_option("--oracle", gen_args.oracle_path,
                  "oracle config JSON (defaults used when omitted)");
  gen->add_option("-o,--out", gen_args.out, "output dataset path")->required();
  {
    ConfigBinder& b = binders[gen];
    b.bind(seed_option, "seed", number_from_config(seed, "seed"));
    b.bind(gen->add_option("-n,--n-geometries", gen_args.n_geometries,
                           "number of random geometries"),
           "n_geometries",
           number_from_config(gen_args.n_geometries, "n_geometries"));
    b.bind(gen->add_option("--band-lo", gen_args.band_lo_ghz,
                           "grid start frequency (GHz)"),
           "band_lo_ghz", number_from_config(gen_args.band_lo_ghz, "band_lo_ghz"));
    b.bind(gen->add_option("--band-hi", gen_args.band_hi_ghz,
                           "grid stop frequency (GHz)"),
           "band_hi_ghz", number_from_config(gen_args.band_hi_ghz, "band_hi_ghz"));
    b.bind(gen->add_option("--n-freq", gen_args.n_freq,
                           "frequency points per geometry"),
           "n_freq", number_from_config(gen_args.n_freq, "n_freq"));
  }

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand(
      "train", "Fit the impedance surrogate on a dataset");
  train->fallthrough();
  train->add_option("--data", train_args.data_path, "dataset JSON Lines path")
      ->required();
  train->add_option("-o,--out", train_args.model_out, "model JSON output path")
      ->required();
  train->add_option("--metrics", train_args.metrics_out,
                    "metrics JSON output path (default <model>.metrics.json)");
  {
    ConfigBinder& b = binders[train];
    b.bind(seed_option, "seed", number_from_config(seed, "seed"));
    b.bind(train->add_option("--epochs", train_args.epochs, "training epochs"),
           "epochs", number_from_config(train_args.epochs, "epochs"));
    b.bind(train->add_option("--batch", train_args.batch_size,
                             "minibatch size"),
           "batch_size", number_from_config(train_args.batch_size, "batch_size"));
    b.bind(train->add_option("--lr", train_args.learning_rate,
                             "Adam learning rate"),
           "learning_rate",
           number_from_config(train_args.learning_rate, "learning_rate"));
    b.bind(train->add_option("--train-frac", train_args.train_fraction,
                             "train split fraction (by geometry)"),
           "train_fraction",
           number_from_config(train_args.train_fraction, "train_fraction"));
  }

  DesignArgs design_args;
  CLI::App* design = app.add_subcommand(
      "design", "Run the alternating N-bit element design loop");
  design->fallthrough();
  design->add_option("--model", design_args.model_path, "trained model JSON")
      ->required();
  design->add_option("-o,--out", design_args.out, "design JSON output path")
      ->required();
  {
    ConfigBinder& b = binders[design];
    b.bind(seed_option, "seed", number_from_config(seed, "seed"));
    b.bind(design->add_option("--bits", design_args.bits, "bits N (1-4)"),
           "bits", number_from_config(design_args.bits, "bits"));
    b.bind(design->add_option("--freq", design_args.freq_ghz,
                              "design frequency (GHz)"),
           "freq_ghz", number_from_config(design_args.freq_ghz, "freq_ghz"));
    b.bind(design->add_option("--floor", design_args.floor_db,
                              "amplitude floor (dB)"),
           "floor_db", number_from_config(design_args.floor_db, "floor_db"));
    b.bind(design->add_option("--phase-weight", design_args.phase_weight,
                              "loss weight on squared phase error"),
           "phase_weight",
           number_from_config(design_args.phase_weight, "phase_weight"));
    b.bind(design->add_option("--amplitude-weight",
                              design_args.amplitude_weight,
                              "loss weight on the amplitude term"),
           "amplitude_weight",
           number_from_config(design_args.amplitude_weight, "amplitude_weight"));
    b.bind(design->add_option("--initial-cap",
                              design_args.initial_capacitance_pf,
                              "state-1 starting capacitance (pF)"),
           "initial_capacitance_pf",
           number_from_config(design_args.initial_capacitance_pf,
                              "initial_capacitance_pf"));
    b.bind(design->add_option("--penalty", design_args.penalty,
                              "amplitude penalty: saturating|linear"),
           "penalty", string_from_config(design_args.penalty, "penalty"));
    b.bind(design->add_option("--population", design_args.population,
                              "differential-evolution population"),
           "population", number_from_config(design_args.population, "population"));
    b.bind(design->add_option("--generations", design_args.generations,
                              "differential-evolution generations"),
           "generations",
           number_from_config(design_args.generations, "generations"));
  }

  SpectrumArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Sweep a design's per-state reflection spectra to CSV");
  spectrum->fallthrough();
  spectrum->add_option("--model", spectrum_args.model_path, "trained model JSON")
      ->required();
  spectrum->add_option("--design", spectrum_args.design_path, "design JSON")
      ->required();
  spectrum->add_option("-o,--out", spectrum_args.out, "CSV output path")
      ->required();
  {
    ConfigBinder& b = binders[spectrum];
    b.bind(spectrum->add_option("--band-lo", spectrum_args.band_lo_ghz,
                                "sweep start (GHz, default: model band)"),
           "band_lo_ghz",
           number_from_config(spectrum_args.band_lo_ghz, "band_lo_ghz"));
    b.bind(spectrum->add_option("--band-hi", spectrum_args.band_hi_ghz,
                                "sweep stop (GHz, default: model band)"),
           "band_hi_ghz",
           number_from_config(spectrum_args.band_hi_ghz, "band_hi_ghz"));
    b.bind(spectrum->add_option("--n-freq", spectrum_args.n_freq,
                                "frequency points"),
           "n_freq", number_from_config(spectrum_args.n_freq, "n_freq"));
  }

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Re-evaluate a design through the synthetic oracle");
  verify->fallthrough();
  verify->add_option("--design", verify_args.design_path, "design JSON")
      ->required();
  verify->add_option("--oracle", verify_args.oracle_path,
                     "oracle config JSON (defaults used when omitted)");
  verify->add_option("-o,--out", verify_args.out, "report JSON output path")
      ->required();
  verify->add_option("--csv", verify_args.csv_out,
                     "optional per-state CSV output path");
  binders[verify];

  PatternArgs pattern_args;
  CLI::App* pattern = app.add_subcommand(
      "pattern", "Far-field scattering pattern for a phase-coding sequence");
  pattern->fallthrough();
  pattern->add_option("--code", pattern_args.code,
                      "coding sequence, digits 0-7, one per column")
      ->required();
  pattern->add_option("-o,--out", pattern_args.out, "CSV output path")
      ->required();
  {
    ConfigBinder& b = binders[pattern];
    b.bind(pattern->add_option("--pitch", pattern_args.pitch_mm,
                               "column pitch (mm)"),
           "pitch_mm", number_from_config(pattern_args.pitch_mm, "pitch_mm"));
    b.bind(pattern->add_option("--freq", pattern_args.freq_ghz,
                               "frequency (GHz)"),
           "freq_ghz", number_from_config(pattern_args.freq_ghz, "freq_ghz"));
    b.bind(pattern->add_option("--theta-lo", pattern_args.theta_lo_deg,
                               "sweep start (deg)"),
           "theta_lo_deg",
           number_from_config(pattern_args.theta_lo_deg, "theta_lo_deg"));
    b.bind(pattern->add_option("--theta-hi", pattern_args.theta_hi_deg,
                               "sweep stop (deg)"),
           "theta_hi_deg",
           number_from_config(pattern_args.theta_hi_deg, "theta_hi_deg"));
    b.bind(pattern->add_option("--step", pattern_args.theta_step_deg,
                               "sweep step (deg)"),
           "theta_step_deg",
           number_from_config(pattern_args.theta_step_deg, "theta_step_deg"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config_path.empty()) {
      nlohmann::json config;
      try {
        config = nlohmann::json::parse(risopt::read_text_file(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw risopt::parse_error(
            std::string("config file is not valid JSON: ") + e.what(), 0);
      }
      if (!config.is_object())
        throw risopt::parse_error("config file must hold a JSON object", 0);
      binders.at(active).apply(config);
    }

    if (active == gen) return run_gen_data(gen_args, seed);
    if (active == train) return run_train(train_args, seed);
    if (active == design) return run_design(design_args, seed);
    if (active == spectrum) return run_spectrum(spectrum_args);
    if (active == verify) return run_verify(verify_args);
    return run_pattern(pattern_args);
  } catch (const risopt::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const risopt::singularity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
