#include "risopt/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "risopt/io_util.hpp"

namespace risopt {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

constexpr double kDegenerateScaleGuard = 1e-12;

void require_dims(const SurrogateModel& m) {
  const bool ok = m.input_dim > 0 && m.hidden_dim > 0 && m.output_dim > 0 &&
                  m.w_hidden.rows() == m.hidden_dim &&
                  m.w_hidden.cols() == m.input_dim &&
                  m.b_hidden.size() == m.hidden_dim &&
                  m.w_output.rows() == m.output_dim &&
                  m.w_output.cols() == m.hidden_dim &&
                  m.b_output.size() == m.output_dim &&
                  m.input_norm.lo.size() == static_cast<std::size_t>(m.input_dim) &&
                  m.input_norm.hi.size() == static_cast<std::size_t>(m.input_dim) &&
                  m.output_norm.mean.size() ==
                      static_cast<std::size_t>(m.output_dim) &&
                  m.output_norm.scale.size() ==
                      static_cast<std::size_t>(m.output_dim);
  if (!ok) throw contract_error("surrogate model dimensions are inconsistent");
}

struct AdamState {
  Eigen::MatrixXd m, v;
  explicit AdamState(const Eigen::MatrixXd& shape)
      : m(Eigen::MatrixXd::Zero(shape.rows(), shape.cols())),
        v(Eigen::MatrixXd::Zero(shape.rows(), shape.cols())) {}

  void update(Eigen::Ref<Eigen::MatrixXd> param, const Eigen::MatrixXd& grad,
              long step, const TrainConfig& cfg) {
    m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * grad;
    v.array() = cfg.adam_beta2 * v.array() +
                (1.0 - cfg.adam_beta2) * grad.array().square();
    const double mc = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
    const double vc = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
    param.array() -= cfg.learning_rate * (m.array() / mc) /
                     ((v.array() / vc).sqrt() + cfg.adam_epsilon);
  }
};

std::array<double, 6> geometry_key(const GeometryParams& g) { return g.to_array(); }

}  // namespace

bool InputNormalizer::normalize(std::span<const double> in,
                                std::span<double> out) const {
  if (in.size() != lo.size() || out.size() != lo.size())
    throw contract_error("input normalizer size mismatch");
  bool clamped = false;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double span = hi[i] - lo[i];
    if (span <= 0.0) {
      out[i] = 0.5;
      continue;
    }
    double u = (in[i] - lo[i]) / span;
    if (u < 0.0) {
      u = 0.0;
      clamped = true;
    } else if (u > 1.0) {
      u = 1.0;
      clamped = true;
    }
    out[i] = u;
  }
  return clamped;
}

void InputNormalizer::denormalize(std::span<const double> in,
                                  std::span<double> out) const {
  if (in.size() != lo.size() || out.size() != lo.size())
    throw contract_error("input normalizer size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double span = hi[i] - lo[i];
    out[i] = span <= 0.0 ? lo[i] : lo[i] + in[i] * span;
  }
}

void OutputNormalizer::normalize(std::span<const double> in,
                                 std::span<double> out) const {
  if (in.size() != mean.size() || out.size() != mean.size())
    throw contract_error("output normalizer size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = (in[i] - mean[i]) / scale[i];
}

void OutputNormalizer::denormalize(std::span<const double> in,
                                   std::span<double> out) const {
  if (in.size() != mean.size() || out.size() != mean.size())
    throw contract_error("output normalizer size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = mean[i] + in[i] * scale[i];
}

SurrogateModel make_mlp(int input_dim, int hidden_dim, int output_dim,
                        std::uint64_t seed) {
  if (input_dim < 1 || hidden_dim < 1 || output_dim < 1)
    throw contract_error("network dimensions must be positive");
  SurrogateModel m;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.output_dim = output_dim;
  m.w_hidden.resize(hidden_dim, input_dim);
  m.b_hidden = Eigen::VectorXd::Zero(hidden_dim);
  m.w_output.resize(output_dim, hidden_dim);
  m.b_output = Eigen::VectorXd::Zero(output_dim);

  std::mt19937_64 rng(seed);
  const double s1 = 1.0 / std::sqrt(static_cast<double>(input_dim));
  for (int r = 0; r < hidden_dim; ++r)
    for (int c = 0; c < input_dim; ++c)
      m.w_hidden(r, c) = s1 * (2.0 * uniform01(rng) - 1.0);
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  for (int r = 0; r < output_dim; ++r)
    for (int c = 0; c < hidden_dim; ++c)
      m.w_output(r, c) = s2 * (2.0 * uniform01(rng) - 1.0);

  m.input_norm.lo.assign(input_dim, 0.0);
  m.input_norm.hi.assign(input_dim, 1.0);
  m.output_norm.mean.assign(output_dim, 0.0);
  m.output_norm.scale.assign(output_dim, 1.0);
  return m;
}

ForwardResult mlp_forward(const SurrogateModel& model,
                          std::span<const double> input) {
  require_dims(model);
  if (input.size() != static_cast<std::size_t>(model.input_dim))
    throw contract_error("mlp_forward input length mismatch");

  std::vector<double> xn(input.size());
  ForwardResult result;
  result.clamped = model.input_norm.normalize(input, xn);

  Eigen::Map<const Eigen::VectorXd> x(xn.data(),
                                      static_cast<Eigen::Index>(xn.size()));
  const Eigen::VectorXd hidden =
      (1.0 / (1.0 + (-(model.w_hidden * x + model.b_hidden).array()).exp()))
          .matrix();
  const Eigen::VectorXd yn = model.w_output * hidden + model.b_output;

  result.values.resize(model.output_dim);
  std::vector<double> yn_vec(yn.data(), yn.data() + yn.size());
  model.output_norm.denormalize(yn_vec, result.values);
  return result;
}

double batch_loss(const SurrogateModel& model, const Batch& batch) {
  require_dims(model);
  if (batch.inputs.rows() == 0 || batch.inputs.rows() != batch.targets.rows() ||
      batch.inputs.cols() != model.input_dim ||
      batch.targets.cols() != model.output_dim)
    throw contract_error("batch shape mismatch");
  const Eigen::MatrixXd z1 = (batch.inputs * model.w_hidden.transpose()).rowwise() +
                             model.b_hidden.transpose();
  const Eigen::MatrixXd h = (1.0 / (1.0 + (-z1.array()).exp())).matrix();
  const Eigen::MatrixXd o = (h * model.w_output.transpose()).rowwise() +
                            model.b_output.transpose();
  const Eigen::MatrixXd e = o - batch.targets;
  return e.squaredNorm() /
         static_cast<double>(e.rows() * e.cols());
}

Gradients mlp_gradient(const SurrogateModel& model, const Batch& batch) {
  require_dims(model);
  if (batch.inputs.rows() == 0 || batch.inputs.rows() != batch.targets.rows() ||
      batch.inputs.cols() != model.input_dim ||
      batch.targets.cols() != model.output_dim)
    throw contract_error("batch shape mismatch");

  const Eigen::MatrixXd z1 = (batch.inputs * model.w_hidden.transpose()).rowwise() +
                             model.b_hidden.transpose();
  const Eigen::MatrixXd h = (1.0 / (1.0 + (-z1.array()).exp())).matrix();
  const Eigen::MatrixXd o = (h * model.w_output.transpose()).rowwise() +
                            model.b_output.transpose();
  const double inv = 1.0 / static_cast<double>(o.rows() * o.cols());
  const Eigen::MatrixXd d_o = 2.0 * inv * (o - batch.targets);

  Gradients g;
  g.w_output = d_o.transpose() * h;
  g.b_output = d_o.colwise().sum().transpose();
  const Eigen::MatrixXd d_h = d_o * model.w_output;
  const Eigen::MatrixXd d_z1 =
      (d_h.array() * h.array() * (1.0 - h.array())).matrix();
  g.w_hidden = d_z1.transpose() * batch.inputs;
  g.b_hidden = d_z1.colwise().sum().transpose();
  return g;
}

void TrainConfig::validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw domain_error("train_fraction must lie strictly between 0 and 1");
  if (epochs < 1) throw domain_error("epochs must be >= 1");
  if (batch_size < 1) throw domain_error("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw domain_error("learning_rate must be > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) ||
      !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
    throw domain_error("adam betas must lie in [0, 1)");
  if (!(adam_epsilon > 0.0)) throw domain_error("adam_epsilon must be > 0");
}

TrainResult train(const std::vector<DatasetRecord>& records,
                  const TrainConfig& cfg, const GeometryBounds& bounds) {
  cfg.validate();
  bounds.validate();
  if (records.size() < 10)
    throw domain_error("training needs at least 10 records");

  // Group records by exact geometry so a unit cell's whole spectrum lands on
  // one side of the split.
  std::vector<std::vector<std::size_t>> groups;
  {
    std::map<std::array<double, 6>, std::size_t> index_of;
    for (std::size_t r = 0; r < records.size(); ++r) {
      const auto key = geometry_key(records[r].geom);
      auto [it, inserted] = index_of.try_emplace(key, groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(r);
    }
  }
  const std::size_t n_groups = groups.size();
  if (n_groups < 2)
    throw domain_error("training needs at least 2 distinct geometries");

  std::mt19937_64 rng(cfg.seed);

  std::vector<std::size_t> group_order(n_groups);
  for (std::size_t i = 0; i < n_groups; ++i) group_order[i] = i;
  for (std::size_t i = n_groups - 1; i > 0; --i) {
    const std::size_t j = uniform_below(rng, i + 1);
    std::swap(group_order[i], group_order[j]);
  }
  std::size_t n_train_groups = static_cast<std::size_t>(
      std::llround(cfg.train_fraction * static_cast<double>(n_groups)));
  n_train_groups = std::clamp<std::size_t>(n_train_groups, 1, n_groups - 1);

  std::vector<std::size_t> train_rows, test_rows;
  for (std::size_t i = 0; i < n_groups; ++i) {
    auto& dst = i < n_train_groups ? train_rows : test_rows;
    for (std::size_t r : groups[group_order[i]]) dst.push_back(r);
  }

  // Input scaling: design box plus the dataset's frequency extent.
  SurrogateModel model = make_mlp(kSurrogateInputDim, kSurrogateHiddenDim,
                                  kSurrogateOutputDim, cfg.seed);
  model.train_seed = cfg.seed;
  model.input_norm.lo.assign(bounds.lo.begin(), bounds.lo.end());
  model.input_norm.hi.assign(bounds.hi.begin(), bounds.hi.end());
  double f_min = records.front().freq_ghz, f_max = records.front().freq_ghz;
  for (const auto& rec : records) {
    f_min = std::min(f_min, rec.freq_ghz);
    f_max = std::max(f_max, rec.freq_ghz);
  }
  model.input_norm.lo.push_back(f_min);
  model.input_norm.hi.push_back(f_max);

  // Output scaling from the training split only.
  model.output_norm.mean.assign(kSurrogateOutputDim, 0.0);
  model.output_norm.scale.assign(kSurrogateOutputDim, 0.0);
  for (std::size_t r : train_rows)
    for (int c = 0; c < kSurrogateOutputDim; ++c)
      model.output_norm.mean[c] += records[r].z[c];
  for (int c = 0; c < kSurrogateOutputDim; ++c)
    model.output_norm.mean[c] /= static_cast<double>(train_rows.size());
  for (std::size_t r : train_rows)
    for (int c = 0; c < kSurrogateOutputDim; ++c) {
      const double d = records[r].z[c] - model.output_norm.mean[c];
      model.output_norm.scale[c] += d * d;
    }
  for (int c = 0; c < kSurrogateOutputDim; ++c) {
    const double std_dev =
        std::sqrt(model.output_norm.scale[c] / static_cast<double>(train_rows.size()));
    // Constant components (the oracle's purely reactive coupling makes
    // Re z12, Re z21 and Re z22 constants) stay mean-centred with unit scale.
    model.output_norm.scale[c] =
        std_dev > kDegenerateScaleGuard ? std_dev : 1.0;
  }

  auto fill_matrices = [&](const std::vector<std::size_t>& rows,
                           Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
    x.resize(static_cast<Eigen::Index>(rows.size()), kSurrogateInputDim);
    y.resize(static_cast<Eigen::Index>(rows.size()), kSurrogateOutputDim);
    std::array<double, kSurrogateInputDim> raw{};
    std::array<double, kSurrogateInputDim> norm{};
    std::array<double, kSurrogateOutputDim> yn{};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const DatasetRecord& rec = records[rows[i]];
      const auto g = rec.geom.to_array();
      std::copy(g.begin(), g.end(), raw.begin());
      raw[6] = rec.freq_ghz;
      model.input_norm.normalize(raw, norm);
      model.output_norm.normalize(rec.z, yn);
      for (int c = 0; c < kSurrogateInputDim; ++c)
        x(static_cast<Eigen::Index>(i), c) = norm[c];
      for (int c = 0; c < kSurrogateOutputDim; ++c)
        y(static_cast<Eigen::Index>(i), c) = yn[c];
    }
  };

  Eigen::MatrixXd x_train, y_train, x_test, y_test;
  fill_matrices(train_rows, x_train, y_train);
  fill_matrices(test_rows, x_test, y_test);

  const Eigen::Index n_train = x_train.rows();
  const Eigen::Index bs_max = std::min<Eigen::Index>(cfg.batch_size, n_train);

  AdamState adam_w1(model.w_hidden), adam_w2(model.w_output);
  AdamState adam_b1(model.b_hidden), adam_b2(model.b_output);

  std::vector<std::size_t> order(static_cast<std::size_t>(n_train));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  // Pre-allocated batch workspaces; the final batch of an epoch may be
  // shorter and uses top-row views.
  Eigen::MatrixXd xb(bs_max, kSurrogateInputDim), yb(bs_max, kSurrogateOutputDim);
  Eigen::MatrixXd z1, h, o, e, d_o, d_h, d_z1;
  Eigen::MatrixXd g_w1, g_w2;
  Eigen::VectorXd g_b1, g_b2;

  TrainResult result;
  result.metrics.epoch_train_loss.reserve(cfg.epochs);
  result.metrics.epoch_test_loss.reserve(cfg.epochs);

  long step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      const std::size_t j = uniform_below(rng, i + 1);
      std::swap(order[i], order[j]);
    }
    double epoch_sse = 0.0;
    Eigen::Index cursor = 0;
    while (cursor < n_train) {
      const Eigen::Index bs = std::min<Eigen::Index>(bs_max, n_train - cursor);
      for (Eigen::Index i = 0; i < bs; ++i) {
        const auto src = static_cast<Eigen::Index>(order[cursor + i]);
        xb.row(i) = x_train.row(src);
        yb.row(i) = y_train.row(src);
      }
      auto xv = xb.topRows(bs);
      auto yv = yb.topRows(bs);

      z1.noalias() = xv * model.w_hidden.transpose();
      z1.rowwise() += model.b_hidden.transpose();
      h = (1.0 / (1.0 + (-z1.array()).exp())).matrix();
      o.noalias() = h * model.w_output.transpose();
      o.rowwise() += model.b_output.transpose();
      e = o - yv;
      epoch_sse += e.squaredNorm();

      const double inv = 1.0 / static_cast<double>(bs * kSurrogateOutputDim);
      d_o = 2.0 * inv * e;
      g_w2.noalias() = d_o.transpose() * h;
      g_b2 = d_o.colwise().sum().transpose();
      d_h.noalias() = d_o * model.w_output;
      d_z1 = (d_h.array() * h.array() * (1.0 - h.array())).matrix();
      g_w1.noalias() = d_z1.transpose() * xv;
      g_b1 = d_z1.colwise().sum().transpose();

      ++step;
      adam_w1.update(model.w_hidden, g_w1, step, cfg);
      adam_b1.update(model.b_hidden, g_b1, step, cfg);
      adam_w2.update(model.w_output, g_w2, step, cfg);
      adam_b2.update(model.b_output, g_b2, step, cfg);

      cursor += bs;
    }
    result.metrics.epoch_train_loss.push_back(
        epoch_sse / static_cast<double>(n_train * kSurrogateOutputDim));
    result.metrics.epoch_test_loss.push_back(
        batch_loss(model, Batch{x_test, y_test}));
  }

  // Final per-component metrics on both splits and both scales.
  auto component_metrics = [&](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                               std::array<ComponentMetrics, 8>& normalized,
                               std::array<ComponentMetrics, 8>& physical) {
    const Eigen::MatrixXd z1f = ((x * model.w_hidden.transpose()).rowwise() +
                                 model.b_hidden.transpose());
    const Eigen::MatrixXd hf = (1.0 / (1.0 + (-z1f.array()).exp())).matrix();
    const Eigen::MatrixXd of = (hf * model.w_output.transpose()).rowwise() +
                               model.b_output.transpose();
    const Eigen::MatrixXd err = of - y;
    const double n = static_cast<double>(err.rows());
    for (int c = 0; c < kSurrogateOutputDim; ++c) {
      const double mse_n = err.col(c).squaredNorm() / n;
      const double mae_n = err.col(c).array().abs().sum() / n;
      const double s = model.output_norm.scale[c];
      normalized[c] = {mse_n, mae_n};
      physical[c] = {mse_n * s * s, mae_n * s};
    }
  };
  component_metrics(x_train, y_train, result.metrics.train_normalized,
                    result.metrics.train_physical);
  component_metrics(x_test, y_test, result.metrics.test_normalized,
                    result.metrics.test_physical);

  // Content fingerprint of the records, independent of file formatting.
  std::uint64_t fp = kFnv1a64Seed;
  for (const auto& rec : records) {
    const auto g = rec.geom.to_array();
    fp = fnv1a64_append(fp, g.data(), sizeof(double) * g.size());
    fp = fnv1a64_append(fp, &rec.freq_ghz, sizeof(double));
    fp = fnv1a64_append(fp, rec.z.data(), sizeof(double) * rec.z.size());
  }
  char fp_text[32];
  std::snprintf(fp_text, sizeof fp_text, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fp));
  model.dataset_fingerprint = fp_text;

  result.model = std::move(model);
  return result;
}

ImpedanceMatrix predict_impedance(const SurrogateModel& model,
                                  const GeometryParams& g, double freq_ghz) {
  require_dims(model);
  if (model.input_dim != kSurrogateInputDim ||
      model.output_dim != kSurrogateOutputDim)
    throw contract_error("predict_impedance needs a 7-input 8-output model");
  GeometryBounds box;
  std::copy_n(model.input_norm.lo.begin(), kGeometryDim, box.lo.begin());
  std::copy_n(model.input_norm.hi.begin(), kGeometryDim, box.hi.begin());
  box.require_inside(g);
  const double slack = 1e-9;
  if (freq_ghz < model.band_lo_ghz() - slack ||
      freq_ghz > model.band_hi_ghz() + slack) {
    std::ostringstream msg;
    msg << "frequency " << freq_ghz << " GHz outside trained band ["
        << model.band_lo_ghz() << ", " << model.band_hi_ghz() << "] GHz";
    throw domain_error(msg.str());
  }
  std::array<double, kSurrogateInputDim> input{};
  const auto ga = g.to_array();
  std::copy(ga.begin(), ga.end(), input.begin());
  input[6] = freq_ghz;
  const ForwardResult fwd = mlp_forward(model, input);
  std::array<double, 8> z{};
  std::copy_n(fwd.values.begin(), 8, z.begin());
  return ImpedanceMatrix::from_components(z, freq_ghz);
}

double mse(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size() || predicted.empty())
    throw contract_error("mse needs equal-length non-empty spans");
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - actual[i];
    acc += d * d;
  }
  return acc / static_cast<double>(predicted.size());
}

double mae(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size() || predicted.empty())
    throw contract_error("mae needs equal-length non-empty spans");
  double acc = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    acc += std::abs(predicted[i] - actual[i]);
  return acc / static_cast<double>(predicted.size());
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows.push_back(m(r, c));
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, Eigen::Index rows,
                                 Eigen::Index cols, const char* name) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows * cols))
    throw parse_error(std::string("model field '") + name +
                          "' has the wrong element count",
                      0);
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!j[k].is_number())
        throw parse_error(std::string("model field '") + name +
                              "' holds a non-numeric entry",
                          k);
      m(r, c) = j[k++].get<double>();
    }
  return m;
}

std::vector<double> vector_from_json(const nlohmann::json& j, std::size_t n,
                                     const char* name) {
  if (!j.is_array() || j.size() != n)
    throw parse_error(std::string("model field '") + name +
                          "' has the wrong element count",
                      0);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_number())
      throw parse_error(std::string("model field '") + name +
                            "' holds a non-numeric entry",
                        i);
    v[i] = j[i].get<double>();
  }
  return v;
}

constexpr const char* kModelFormat = "risopt-mlp-v1";

}  // namespace

std::string model_to_json(const SurrogateModel& model) {
  require_dims(model);
  nlohmann::json doc;
  doc["format"] = kModelFormat;
  doc["input_dim"] = model.input_dim;
  doc["hidden_dim"] = model.hidden_dim;
  doc["output_dim"] = model.output_dim;
  doc["w_hidden"] = matrix_to_json(model.w_hidden);
  doc["b_hidden"] = matrix_to_json(model.b_hidden);
  doc["w_output"] = matrix_to_json(model.w_output);
  doc["b_output"] = matrix_to_json(model.b_output);
  doc["input_lo"] = model.input_norm.lo;
  doc["input_hi"] = model.input_norm.hi;
  doc["output_mean"] = model.output_norm.mean;
  doc["output_scale"] = model.output_norm.scale;
  doc["train_seed"] = model.train_seed;
  doc["dataset_fingerprint"] = model.dataset_fingerprint;
  return doc.dump(2) + "\n";
}

SurrogateModel model_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("model file is not valid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object() || doc.value("format", "") != kModelFormat)
    throw parse_error(std::string("model file must declare format '") +
                          kModelFormat + "'",
                      0);
  for (const char* key :
       {"input_dim", "hidden_dim", "output_dim", "w_hidden", "b_hidden",
        "w_output", "b_output", "input_lo", "input_hi", "output_mean",
        "output_scale", "train_seed", "dataset_fingerprint"})
    if (!doc.contains(key))
      throw parse_error(std::string("model file is missing field '") + key + "'",
                        0);

  SurrogateModel m;
  m.input_dim = doc["input_dim"].get<int>();
  m.hidden_dim = doc["hidden_dim"].get<int>();
  m.output_dim = doc["output_dim"].get<int>();
  if (m.input_dim < 1 || m.hidden_dim < 1 || m.output_dim < 1)
    throw parse_error("model dimensions must be positive", 0);
  m.w_hidden = matrix_from_json(doc["w_hidden"], m.hidden_dim, m.input_dim,
                                "w_hidden");
  m.b_hidden = matrix_from_json(doc["b_hidden"], m.hidden_dim, 1, "b_hidden");
  m.w_output = matrix_from_json(doc["w_output"], m.output_dim, m.hidden_dim,
                                "w_output");
  m.b_output = matrix_from_json(doc["b_output"], m.output_dim, 1, "b_output");
  m.input_norm.lo = vector_from_json(doc["input_lo"],
                                     static_cast<std::size_t>(m.input_dim),
                                     "input_lo");
  m.input_norm.hi = vector_from_json(doc["input_hi"],
                                     static_cast<std::size_t>(m.input_dim),
                                     "input_hi");
  m.output_norm.mean = vector_from_json(
      doc["output_mean"], static_cast<std::size_t>(m.output_dim), "output_mean");
  m.output_norm.scale = vector_from_json(
      doc["output_scale"], static_cast<std::size_t>(m.output_dim),
      "output_scale");
  for (double s : m.output_norm.scale)
    if (!(s > 0.0)) throw parse_error("model output scales must be positive", 0);
  if (!doc["train_seed"].is_number_unsigned() &&
      !doc["train_seed"].is_number_integer())
    throw parse_error("model train_seed must be an integer", 0);
  m.train_seed = doc["train_seed"].get<std::uint64_t>();
  if (!doc["dataset_fingerprint"].is_string())
    throw parse_error("model dataset_fingerprint must be a string", 0);
  m.dataset_fingerprint = doc["dataset_fingerprint"].get<std::string>();
  require_dims(m);
  return m;
}

void save_model(const SurrogateModel& model, const std::string& path) {
  write_text_file(path, model_to_json(model));
}

SurrogateModel load_model(const std::string& path) {
  return model_from_json(read_text_file(path));
}

std::string metrics_to_json(const MetricsReport& metrics) {
  nlohmann::json doc;
  auto scale_block = [&](const std::array<ComponentMetrics, 8>& train,
                         const std::array<ComponentMetrics, 8>& test) {
    nlohmann::json block;
    for (int c = 0; c < 8; ++c) {
      nlohmann::json comp;
      comp["train"] = {{"mse", train[c].mse}, {"mae", train[c].mae}};
      comp["test"] = {{"mse", test[c].mse}, {"mae", test[c].mae}};
      block[kOutputComponentNames[c]] = comp;
    }
    return block;
  };
  doc["normalized"] = scale_block(metrics.train_normalized, metrics.test_normalized);
  doc["physical_ohm"] = scale_block(metrics.train_physical, metrics.test_physical);
  doc["epoch_train_loss"] = metrics.epoch_train_loss;
  doc["epoch_test_loss"] = metrics.epoch_test_loss;
  return doc.dump(2) + "\n";
}

}  // namespace risopt
