// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/classifiers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "fakecheck/error.hpp"
#include "fakecheck/hash.hpp"

namespace fakecheck::classifiers {

using json = nlohmann::json;

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::LinearSvm: return "linear_svm";
    case Kind::RandomForest: return "random_forest";
    case Kind::Mlp: return "mlp";
    case Kind::SoftmaxHead: return "softmax_head";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  for (Kind k : {Kind::LinearSvm, Kind::RandomForest, Kind::Mlp, Kind::SoftmaxHead}) {
    if (kind_name(k) == name) return k;
  }
  if (name == "svm") return Kind::LinearSvm;
  if (name == "rfc" || name == "forest") return Kind::RandomForest;
  if (name == "head" || name == "nn") return Kind::SoftmaxHead;
  throw ConfigError("unknown classifier kind '" + std::string(name) + "'");
}

TrainConfig TrainConfig::defaults(Kind kind, std::uint64_t seed) {
  TrainConfig c;
  c.kind = kind;
  c.seed = seed;
  if (kind == Kind::SoftmaxHead) {
    c.mlp.hidden.clear();
    c.mlp.epochs = 200;
  }
  return c;
}

json TrainConfig::to_json() const {
  json p;
  switch (kind) {
    case Kind::LinearSvm:
      p = {{"c", svm.c}, {"gamma", svm.gamma}, {"iterations", svm.iterations}};
      break;
    case Kind::RandomForest:
      p = {{"n_trees", forest.n_trees},
           {"max_features", forest.max_features},
           {"bootstrap", forest.bootstrap},
           {"max_depth", forest.max_depth},
           {"min_samples_split", forest.min_samples_split}};
      break;
    case Kind::Mlp:
    case Kind::SoftmaxHead:
      p = {{"hidden", mlp.hidden},       {"epochs", mlp.epochs}, {"batch_size", mlp.batch_size},
           {"learning_rate", mlp.learning_rate}, {"beta1", mlp.beta1}, {"beta2", mlp.beta2},
           {"epsilon", mlp.epsilon}};
      break;
  }
  return {{"kind", kind_name(kind)}, {"seed", seed}, {"params", p}};
}

TrainConfig TrainConfig::from_json(const json& j) {
  TrainConfig c = defaults(parse_kind(j.at("kind").get<std::string>()), j.value("seed", std::uint64_t{0}));
  const json p = j.value("params", json::object());
  c.svm.c = p.value("c", c.svm.c);
  c.svm.gamma = p.value("gamma", c.svm.gamma);
  c.svm.iterations = p.value("iterations", c.svm.iterations);
  c.forest.n_trees = p.value("n_trees", c.forest.n_trees);
  c.forest.max_features = p.value("max_features", c.forest.max_features);
  c.forest.bootstrap = p.value("bootstrap", c.forest.bootstrap);
  c.forest.max_depth = p.value("max_depth", c.forest.max_depth);
  c.forest.min_samples_split = p.value("min_samples_split", c.forest.min_samples_split);
  c.mlp.hidden = p.value("hidden", c.mlp.hidden);
  c.mlp.epochs = p.value("epochs", c.mlp.epochs);
  c.mlp.batch_size = p.value("batch_size", c.mlp.batch_size);
  c.mlp.learning_rate = p.value("learning_rate", c.mlp.learning_rate);
  c.mlp.beta1 = p.value("beta1", c.mlp.beta1);
  c.mlp.beta2 = p.value("beta2", c.mlp.beta2);
  c.mlp.epsilon = p.value("epsilon", c.mlp.epsilon);
  if (c.kind == Kind::SoftmaxHead && !c.mlp.hidden.empty()) {
    throw ConfigError("softmax_head has no hidden layers");
  }
  return c;
}

std::string TrainConfig::fingerprint() const { return fnv1a_hex(to_json().dump()); }

// ---------------------------------------------------------------------------

double LinearModel::margin(std::span<const double> x) const {
  double s = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * x[i];
  return s;
}

int predicted_label(const std::array<double, 2>& proba) { return proba[1] > proba[0] ? 1 : 0; }

TrainedModel::TrainedModel(Kind kind, ModelParams params, features::Layout layout, json config)
    : kind_(kind), params_(std::move(params)), layout_(std::move(layout)), config_(std::move(config)) {}

std::array<double, 2> TrainedModel::predict_proba(std::span<const double> x) const {
  if (x.size() != layout_.size()) {
    throw LayoutMismatchError("feature vector width " + std::to_string(x.size()) + " != model input width " +
                              std::to_string(layout_.size()));
  }
  return std::visit(
      [&](const auto& p) -> std::array<double, 2> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LinearModel>) {
          const double fake = p.platt.probability(p.margin(x));
          return {1.0 - fake, fake};
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          std::size_t votes = 0;
          for (const auto& t : p.trees) votes += static_cast<std::size_t>(t.predict(x) == 1);
          const double fake = static_cast<double>(votes) / static_cast<double>(p.trees.size());
          return {1.0 - fake, fake};
        } else {
          return p.predict_proba(x);
        }
      },
      params_);
}

std::array<double, 2> TrainedModel::predict_proba(const features::FeatureVector& x) const {
  if (x.layout && x.layout->hash() != layout_.hash()) {
    throw LayoutMismatchError("feature layout " + x.layout->hash() + " does not match model layout " + layout_.hash());
  }
  return predict_proba(std::span<const double>(x.values));
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json layout_to_json(const features::Layout& l) {
  std::vector<std::string> fams;
  for (auto f : l.families()) fams.emplace_back(features::family_name(f));
  return {{"families", fams}, {"embedding_dim", l.embedding_dim()}, {"width", l.size()}, {"hash", l.hash()}};
}

features::Layout layout_from_json(const json& j) {
  const auto fams = j.at("families").get<std::vector<std::string>>();
  features::Layout l = fams.empty() ? features::Layout::raw(j.at("width").get<std::size_t>())
                                    : features::Layout(features::parse_families(fams), j.at("embedding_dim").get<std::size_t>());
  if (l.hash() != j.at("hash").get<std::string>() || l.size() != j.at("width").get<std::size_t>()) {
    throw CorruptFileError("model layout does not match its recorded hash");
  }
  return l;
}

json params_to_json(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LinearModel>) {
          return {{"weights", p.weights}, {"bias", p.bias}, {"platt", {{"a", p.platt.a}, {"b", p.platt.b}}}};
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          json trees = json::array();
          for (const auto& t : p.trees) {
            std::vector<int> feature, left, right, label;
            std::vector<double> threshold;
            for (const auto& n : t.nodes) {
              feature.push_back(n.feature);
              threshold.push_back(n.threshold);
              left.push_back(n.left);
              right.push_back(n.right);
              label.push_back(n.label);
            }
            trees.push_back({{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right},
                             {"label", label}});
          }
          return {{"trees", trees}};
        } else {
          json layers = json::array();
          for (const auto& l : p.layers) {
            layers.push_back({{"inputs", l.inputs}, {"outputs", l.outputs}, {"weights", l.weights}, {"bias", l.bias}});
          }
          return {{"layers", layers}};
        }
      },
      params);
}

ModelParams params_from_json(Kind kind, const json& j) {
  switch (kind) {
    case Kind::LinearSvm: {
      LinearModel m;
      m.weights = j.at("weights").get<std::vector<double>>();
      m.bias = j.at("bias").get<double>();
      m.platt.a = j.at("platt").at("a").get<double>();
      m.platt.b = j.at("platt").at("b").get<double>();
      return m;
    }
    case Kind::RandomForest: {
      ForestModel m;
      for (const auto& t : j.at("trees")) {
        const auto feature = t.at("feature").get<std::vector<int>>();
        const auto threshold = t.at("threshold").get<std::vector<double>>();
        const auto left = t.at("left").get<std::vector<int>>();
        const auto right = t.at("right").get<std::vector<int>>();
        const auto label = t.at("label").get<std::vector<int>>();
        const std::size_t n = feature.size();
        if (n == 0 || threshold.size() != n || left.size() != n || right.size() != n || label.size() != n) {
          throw CorruptFileError("tree arrays disagree in length");
        }
        DecisionTree tree;
        for (std::size_t i = 0; i < n; ++i) {
          const bool inner = feature[i] >= 0;
          const auto in_range = [n](int k) { return k >= 0 && static_cast<std::size_t>(k) < n; };
          if (inner && (!in_range(left[i]) || !in_range(right[i]))) throw CorruptFileError("tree child out of range");
          tree.nodes.push_back({feature[i], threshold[i], left[i], right[i], label[i]});
        }
        m.trees.push_back(std::move(tree));
      }
      if (m.trees.empty()) throw CorruptFileError("forest has no trees");
      return m;
    }
    case Kind::Mlp:
    case Kind::SoftmaxHead: {
      MlpModel m;
      for (const auto& l : j.at("layers")) {
        DenseLayer layer(l.at("inputs").get<std::size_t>(), l.at("outputs").get<std::size_t>());
        layer.weights = l.at("weights").get<std::vector<double>>();
        layer.bias = l.at("bias").get<std::vector<double>>();
        if (layer.weights.size() != layer.inputs * layer.outputs || layer.bias.size() != layer.outputs) {
          throw CorruptFileError("layer shape mismatch");
        }
        if (!m.layers.empty() && m.layers.back().outputs != layer.inputs) {
          throw CorruptFileError("consecutive layers disagree in width");
        }
        m.layers.push_back(std::move(layer));
      }
      if (m.layers.empty() || m.layers.back().outputs != 2) throw CorruptFileError("network must end in 2 outputs");
      return m;
    }
  }
  throw CorruptFileError("unknown model kind");
}

}  // namespace

std::string TrainedModel::serialize() const {
  json j = {{"format", "fakecheck.model"},
            {"format_version", kModelFormatVersion},
            {"kind", kind_name(kind_)},
            {"config", config_},
            {"layout", layout_to_json(layout_)},
            {"params", params_to_json(params_)},
            {"metadata", metadata_}};
  if (scaler_) j["scaler"] = scaler_->to_json();
  return j.dump() + "\n";
}

TrainedModel TrainedModel::deserialize(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw CorruptFileError(std::string("model file is corrupt or truncated: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", std::string{}) != "fakecheck.model") {
      throw CorruptFileError("not a fakecheck model file");
    }
    const int version = j.at("format_version").get<int>();
    if (version > kModelFormatVersion) {
      throw VersionError("model format version " + std::to_string(version) + " is newer than supported version " +
                         std::to_string(kModelFormatVersion));
    }
    if (version < 1) throw VersionError("invalid model format version " + std::to_string(version));
    const Kind kind = parse_kind(j.at("kind").get<std::string>());
    TrainedModel m(kind, params_from_json(kind, j.at("params")), layout_from_json(j.at("layout")), j.at("config"));
    if (j.contains("scaler")) {
      m.scaler_ = features::Scaler::from_json(j.at("scaler"));
      if (m.scaler_->size() != m.layout_.size()) throw CorruptFileError("scaler width differs from layout");
    }
    m.metadata_ = j.value("metadata", json::object());
    const std::size_t width = m.layout_.size();
    const bool width_ok = std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, LinearModel>) return p.weights.size() == width;
          else if constexpr (std::is_same_v<T, MlpModel>) return p.input_width() == width;
          else return true;
        },
        m.params_);
    if (!width_ok) throw CorruptFileError("model parameters do not match the layout width");
    return m;
  } catch (const json::exception& e) {
    throw CorruptFileError(std::string("model file is incomplete: ") + e.what());
  } catch (const ConfigError& e) {
    throw CorruptFileError(std::string("model file is invalid: ") + e.what());
  }
}

std::string TrainedModel::fingerprint() const { return fnv1a_hex(serialize()); }

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path.string());
  out << model.serialize();
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read model file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return TrainedModel::deserialize(buf.str());
}

void write_training_log(std::ostream& out, const TrainingLog& log) {
  for (const auto& e : log) out << json{{"epoch", e.epoch}, {"loss", e.loss}}.dump() << '\n';
}

// ---------------------------------------------------------------------------
// Training

namespace {

LinearModel train_svm(const SvmParams& p, const Matrix& X, std::span<const int> y) {
  if (p.c <= 0.0 || p.iterations == 0) throw ConfigError("linear_svm needs c > 0 and iterations >= 1");
  const std::size_t n = X.rows(), d = X.cols();
  // Objective: lambda/2 |w|^2 + mean hinge, lambda = 1/C. The mean (rather
  // than sum) makes the optimum independent of dataset replication.
  const double lambda = 1.0 / p.c;
  std::vector<double> w(d, 0.0), grad(d), avg_w(d, 0.0);
  double b = 0.0, avg_b = 0.0;
  std::size_t averaged = 0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t t = 1; t <= p.iterations; ++t) {
    const double eta = 1.0 / (lambda * static_cast<double>(t));
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = X.row(i);
      const double yi = y[i] == 1 ? 1.0 : -1.0;
      double m = b;
      for (std::size_t k = 0; k < d; ++k) m += w[k] * x[k];
      if (yi * m < 1.0) {
        for (std::size_t k = 0; k < d; ++k) grad[k] += yi * x[k];
        grad_b += yi;
      }
    }
    const double shrink = 1.0 - eta * lambda;
    for (std::size_t k = 0; k < d; ++k) w[k] = shrink * w[k] + eta * inv_n * grad[k];
    b += eta * inv_n * grad_b;
    // Average the second half of the iterates.
    if (2 * t > p.iterations) {
      ++averaged;
      for (std::size_t k = 0; k < d; ++k) avg_w[k] += w[k];
      avg_b += b;
    }
  }
  LinearModel m;
  m.weights.resize(d);
  for (std::size_t k = 0; k < d; ++k) m.weights[k] = avg_w[k] / static_cast<double>(averaged);
  m.bias = avg_b / static_cast<double>(averaged);
  std::vector<double> margins(n);
  for (std::size_t i = 0; i < n; ++i) margins[i] = m.margin(X.row(i));
  m.platt = PlattScaling::fit(margins, y);
  return m;
}

ForestModel train_forest(const ForestParams& p, std::uint64_t seed, const Matrix& X, std::span<const int> y) {
  if (p.n_trees == 0) throw ConfigError("random_forest needs at least one tree");
  ForestModel m;
  m.trees.resize(p.n_trees);
  const std::size_t n = X.rows();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < p.n_trees; t = next++) {
      Rng rng(seed + t);
      std::vector<std::size_t> samples(n);
      if (p.bootstrap) {
        for (auto& s : samples) s = rng.uniform_index(n);
      } else {
        std::iota(samples.begin(), samples.end(), std::size_t{0});
      }
      m.trees[t] = train_tree(X, y, samples, p, rng);
    }
  };
  std::size_t threads = p.threads ? p.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, p.n_trees);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return m;
}

MlpModel train_mlp(const MlpParams& p, std::uint64_t seed, const Matrix& X, std::span<const int> y,
                   TrainingLog* log) {
  if (p.batch_size == 0 || p.epochs == 0) throw ConfigError("mlp needs batch_size >= 1 and epochs >= 1");
  Rng rng(seed);
  MlpModel model = init_mlp(X.cols(), p.hidden, rng);
  std::vector<DenseLayer> m1, m2;
  for (const auto& l : model.layers) {
    m1.emplace_back(l.inputs, l.outputs);
    m2.emplace_back(l.inputs, l.outputs);
  }
  const std::size_t n = X.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t step = 0;
  double beta1_t = 1.0, beta2_t = 1.0;

  auto adam = [&](std::vector<double>& param, std::vector<double>& m, std::vector<double>& v,
                  const std::vector<double>& g, double lr_t) {
    for (std::size_t i = 0; i < param.size(); ++i) {
      m[i] = p.beta1 * m[i] + (1.0 - p.beta1) * g[i];
      v[i] = p.beta2 * v[i] + (1.0 - p.beta2) * g[i] * g[i];
      const double m_hat = m[i] / (1.0 - beta1_t);
      const double v_hat = v[i] / (1.0 - beta2_t);
      param[i] -= lr_t * m_hat / (std::sqrt(v_hat) + p.epsilon);
    }
  };

  std::vector<int> batch_y;
  for (std::size_t epoch = 1; epoch <= p.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < n; start += p.batch_size) {
      const std::size_t end = std::min(n, start + p.batch_size);
      const std::span<const std::size_t> idx(order.data() + start, end - start);
      const Matrix batch = X.select_rows(idx);
      batch_y.clear();
      for (auto i : idx) batch_y.push_back(y[i]);
      const auto g = mlp_gradient(model, batch, batch_y);
      ++step;
      beta1_t *= p.beta1;
      beta2_t *= p.beta2;
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        adam(model.layers[l].weights, m1[l].weights, m2[l].weights, g.layers[l].weights, p.learning_rate);
        adam(model.layers[l].bias, m1[l].bias, m2[l].bias, g.layers[l].bias, p.learning_rate);
      }
    }
    if (log) log->push_back({epoch, mlp_loss(model, X, y)});
  }
  return model;
}

}  // namespace

TrainedModel train(const TrainConfig& cfg, const Matrix& X, std::span<const int> y, const features::Layout& layout,
                   TrainingLog* log) {
  if (X.rows() != y.size()) throw ValidationError("feature rows and label count differ");
  if (X.rows() < 2) throw ValidationError("training needs at least two rows");
  if (X.cols() != layout.size()) {
    throw LayoutMismatchError("matrix width " + std::to_string(X.cols()) + " does not match declared layout width " +
                              std::to_string(layout.size()));
  }
  std::size_t positives = 0;
  for (int v : y) {
    if (v != 0 && v != 1) throw ValidationError("labels must be 0 or 1");
    positives += static_cast<std::size_t>(v);
  }
  if (positives == 0 || positives == y.size()) throw ValidationError("training labels contain a single class");
  for (double v : X.data()) {
    if (!std::isfinite(v)) throw ValidationError("training matrix contains non-finite values");
  }

  ModelParams params;
  switch (cfg.kind) {
    case Kind::LinearSvm: params = train_svm(cfg.svm, X, y); break;
    case Kind::RandomForest: params = train_forest(cfg.forest, cfg.seed, X, y); break;
    case Kind::Mlp: params = train_mlp(cfg.mlp, cfg.seed, X, y, log); break;
    case Kind::SoftmaxHead: {
      MlpParams head = cfg.mlp;
      head.hidden.clear();
      params = train_mlp(head, cfg.seed, X, y, log);
      break;
    }
  }
  return TrainedModel(cfg.kind, std::move(params), layout, cfg.to_json());
}

TrainedModel train(const TrainConfig& cfg, const Matrix& X, std::span<const int> y, TrainingLog* log) {
  return train(cfg, X, y, features::Layout::raw(X.cols()), log);
}

}  // namespace fakecheck::classifiers
