// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fakecheck/features.hpp"
#include "fakecheck/matrix.hpp"
#include "fakecheck/platt.hpp"
#include "fakecheck/random.hpp"

namespace fakecheck::classifiers {

inline constexpr int kModelFormatVersion = 1;

enum class Kind { LinearSvm, RandomForest, Mlp, SoftmaxHead };

std::string_view kind_name(Kind k);
Kind parse_kind(std::string_view name);

struct SvmParams {
  double c = 1.0;
  // Kept for parity with kernel SVM configurations; a linear kernel ignores it.
  double gamma = 1.0;
  std::size_t iterations = 1000;
};

struct ForestParams {
  std::size_t n_trees = 400;
  // 0 selects floor(sqrt(d)).
  std::size_t max_features = 0;
  bool bootstrap = true;
  // 0 means unlimited.
  std::size_t max_depth = 0;
  std::size_t min_samples_split = 2;
  // 0 uses the hardware concurrency. The result does not depend on it.
  std::size_t threads = 0;
};

struct MlpParams {
  std::vector<std::size_t> hidden = {30, 10};
  std::size_t epochs = 1000;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainConfig {
  Kind kind = Kind::SoftmaxHead;
  std::uint64_t seed = 0;
  SvmParams svm;
  ForestParams forest;
  MlpParams mlp;

  // Defaults for `kind`; the softmax head is an MLP without hidden layers.
  static TrainConfig defaults(Kind kind, std::uint64_t seed = 0);

  // Only the parameters relevant to `kind`; thread count is excluded.
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
  std::string fingerprint() const;
};

// ---------------------------------------------------------------------------
// Model parameter types

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  PlattScaling platt;

  double margin(std::span<const double> x) const;
};

struct TreeNode {
  // Negative for leaves.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Majority class at the node; the prediction for leaves.
  int label = 0;
};

// Binary CART tree; x[feature] <= threshold goes left.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  int predict(std::span<const double> x) const;
  std::size_t depth() const;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
};

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // outputs x inputs, row-major
  std::vector<double> bias;     // outputs

  DenseLayer() = default;
  DenseLayer(std::size_t in, std::size_t out) : inputs(in), outputs(out), weights(in * out, 0.0), bias(out, 0.0) {}
};

// ReLU hidden layers followed by a 2-way softmax output layer.
struct MlpModel {
  std::vector<DenseLayer> layers;

  std::size_t input_width() const { return layers.empty() ? 0 : layers.front().inputs; }
  std::array<double, 2> predict_proba(std::span<const double> x) const;
};

// Uniform Xavier initialization, zero biases.
MlpModel init_mlp(std::size_t inputs, const std::vector<std::size_t>& hidden, Rng& rng);

struct MlpGradients {
  std::vector<DenseLayer> layers;  // same shapes as the model
  double loss = 0.0;
};

// Mean softmax cross-entropy over the batch and its analytic gradient.
MlpGradients mlp_gradient(const MlpModel& model, const Matrix& batch, std::span<const int> labels);
double mlp_loss(const MlpModel& model, const Matrix& batch, std::span<const int> labels);

// Grows one tree on `samples` (indices into X; repeats allowed).
DecisionTree train_tree(const Matrix& X, std::span<const int> y, std::span<const std::size_t> samples,
                        const ForestParams& params, Rng& rng);

// ---------------------------------------------------------------------------

using ModelParams = std::variant<LinearModel, ForestModel, MlpModel>;

struct EpochLoss {
  std::size_t epoch = 0;
  double loss = 0.0;
};

using TrainingLog = std::vector<EpochLoss>;

class TrainedModel {
 public:
  TrainedModel() = default;
  TrainedModel(Kind kind, ModelParams params, features::Layout layout, nlohmann::json config);

  Kind kind() const noexcept { return kind_; }
  const ModelParams& params() const noexcept { return params_; }
  const features::Layout& layout() const noexcept { return layout_; }
  const nlohmann::json& config() const noexcept { return config_; }

  // Fitted on the training split by the pipeline that produced the model.
  const std::optional<features::Scaler>& scaler() const noexcept { return scaler_; }
  void set_scaler(features::Scaler s) { scaler_ = std::move(s); }

  // Free-form provenance (dataset digest, resource fingerprints, as_of, ...).
  const nlohmann::json& metadata() const noexcept { return metadata_; }
  void set_metadata(nlohmann::json m) { metadata_ = std::move(m); }

  // {p_non_fake, p_fake}. Throws LayoutMismatchError on a width mismatch.
  std::array<double, 2> predict_proba(std::span<const double> x) const;
  // Also checks the layout hash.
  std::array<double, 2> predict_proba(const features::FeatureVector& x) const;

  std::string serialize() const;
  static TrainedModel deserialize(const std::string& bytes);
  // Digest of serialize().
  std::string fingerprint() const;

 private:
  Kind kind_ = Kind::SoftmaxHead;
  ModelParams params_;
  features::Layout layout_;
  nlohmann::json config_;
  std::optional<features::Scaler> scaler_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

// Argmax with ties resolved to 0 (non-fake).
int predicted_label(const std::array<double, 2>& proba);

// Throws ValidationError for fewer than two rows, a single class or
// non-finite values, and LayoutMismatchError when X's width differs from the
// layout.
TrainedModel train(const TrainConfig& cfg, const Matrix& X, std::span<const int> y, const features::Layout& layout,
                   TrainingLog* log = nullptr);
TrainedModel train(const TrainConfig& cfg, const Matrix& X, std::span<const int> y, TrainingLog* log = nullptr);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

void write_training_log(std::ostream& out, const TrainingLog& log);

}  // namespace fakecheck::classifiers
