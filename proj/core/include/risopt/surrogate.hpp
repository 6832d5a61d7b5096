#pragma once

// Shallow sigmoid MLP that regresses the eight impedance components from
// six geometry values plus frequency.  The network, backpropagation and the
// Adam trainer are implemented here directly; Eigen supplies the matrix
// arithmetic.  Training is fully seeded: identical data and seed reproduce
// identical weights on a given platform.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "risopt/geometry.hpp"
#include "risopt/network.hpp"
#include "risopt/oracle.hpp"

namespace risopt {

inline constexpr int kSurrogateInputDim = 7;   // 6 geometry + frequency
inline constexpr int kSurrogateHiddenDim = 30;
inline constexpr int kSurrogateOutputDim = 8;  // Re/Im of z11 z12 z21 z22

inline constexpr std::array<const char*, 8> kOutputComponentNames = {
    "re_z11", "im_z11", "re_z12", "im_z12",
    "re_z21", "im_z21", "re_z22", "im_z22"};

// Min-max input scaling.  A component with zero span maps to the constant
// 0.5 in both directions so single-frequency datasets stay usable.
struct InputNormalizer {
  std::vector<double> lo;
  std::vector<double> hi;

  // Returns true if any component had to be clamped into [lo, hi].
  bool normalize(std::span<const double> in, std::span<double> out) const;
  void denormalize(std::span<const double> in, std::span<double> out) const;
};

// Z-score output scaling with stats taken from the training split.  A
// constant component (zero standard deviation) keeps scale 1 and is merely
// mean-centred; the scale stored here is always the one actually applied.
struct OutputNormalizer {
  std::vector<double> mean;
  std::vector<double> scale;

  void normalize(std::span<const double> in, std::span<double> out) const;
  void denormalize(std::span<const double> in, std::span<double> out) const;
};

struct SurrogateModel {
  int input_dim = kSurrogateInputDim;
  int hidden_dim = kSurrogateHiddenDim;
  int output_dim = kSurrogateOutputDim;

  Eigen::MatrixXd w_hidden;  // hidden_dim x input_dim
  Eigen::VectorXd b_hidden;  // hidden_dim
  Eigen::MatrixXd w_output;  // output_dim x hidden_dim
  Eigen::VectorXd b_output;  // output_dim

  InputNormalizer input_norm;
  OutputNormalizer output_norm;

  std::uint64_t train_seed = 0;
  std::string dataset_fingerprint;

  // Frequency band the model was trained on = bounds of input 7.
  double band_lo_ghz() const { return input_norm.lo.back(); }
  double band_hi_ghz() const { return input_norm.hi.back(); }
};

// Fresh network with fan-in-scaled symmetric uniform weights, zero biases
// and identity normalizers.  Used by the trainer and by gradient tests.
SurrogateModel make_mlp(int input_dim, int hidden_dim, int output_dim,
                        std::uint64_t seed);

struct ForwardResult {
  std::vector<double> values;  // physical units (ohm)
  bool clamped = false;        // input left the normalizer bounds
};

// Full physical-units forward pass: normalize, hidden sigmoid layer, linear
// output layer, denormalize.  Pure and bitwise deterministic.
ForwardResult mlp_forward(const SurrogateModel& model,
                          std::span<const double> input);

// Training batch in normalized space; rows are samples.
struct Batch {
  Eigen::MatrixXd inputs;   // n x input_dim
  Eigen::MatrixXd targets;  // n x output_dim
};

// Mean over all (sample, component) entries of the squared error of the
// network's normalized outputs.  Duplicating the batch leaves it unchanged.
double batch_loss(const SurrogateModel& model, const Batch& batch);

struct Gradients {
  Eigen::MatrixXd w_hidden;
  Eigen::VectorXd b_hidden;
  Eigen::MatrixXd w_output;
  Eigen::VectorXd b_output;
};

// Exact backpropagation gradient of batch_loss with respect to every weight
// and bias.
Gradients mlp_gradient(const SurrogateModel& model, const Batch& batch);

struct TrainConfig {
  double train_fraction = 0.8;
  int epochs = 2000;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ComponentMetrics {
  double mse = 0.0;
  double mae = 0.0;
};

struct MetricsReport {
  // Indexed by output component, kOutputComponentNames order.
  std::array<ComponentMetrics, 8> train_normalized{};
  std::array<ComponentMetrics, 8> test_normalized{};
  std::array<ComponentMetrics, 8> train_physical{};
  std::array<ComponentMetrics, 8> test_physical{};
  std::vector<double> epoch_train_loss;  // mean normalized MSE per epoch
  std::vector<double> epoch_test_loss;   // full test split, per epoch
};

std::string metrics_to_json(const MetricsReport& metrics);

struct TrainResult {
  SurrogateModel model;
  MetricsReport metrics;
};

// Trains a 7-30-8 network.  The record list must hold at least 10 records
// and at least 2 distinct geometries; the split is by geometry (grouped
// spectra never straddle the train/test boundary) and is seeded.  Inputs are
// min-max normalized with the design-box bounds plus the dataset's frequency
// extent; outputs are z-scored with training-split statistics.
TrainResult train(const std::vector<DatasetRecord>& records,
                  const TrainConfig& cfg, const GeometryBounds& bounds = {});

// Model evaluation composed for the designer: geometry must sit inside the
// normalizer's design box and freq inside the trained band (domain_error
// otherwise).  The returned matrix is not forced to be reciprocal; the
// network predicts all eight components independently.
ImpedanceMatrix predict_impedance(const SurrogateModel& model,
                                  const GeometryParams& g, double freq_ghz);

// Plain squared/absolute error means over equal-length spans.
double mse(std::span<const double> predicted, std::span<const double> actual);
double mae(std::span<const double> predicted, std::span<const double> actual);

// JSON model serialization (dimensions, row-major weights, normalizer stats,
// training seed, dataset fingerprint).  Loading validates shapes and raises
// parse_error on malformed input.
std::string model_to_json(const SurrogateModel& model);
SurrogateModel model_from_json(const std::string& json_text);
void save_model(const SurrogateModel& model, const std::string& path);
SurrogateModel load_model(const std::string& path);

}  // namespace risopt
