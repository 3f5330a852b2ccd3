// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <json.hpp>

#include "fakecheck/classifiers.hpp"
#include "fakecheck/error.hpp"
#include "mlp_check.hpp"
#include "oracles.hpp"

using namespace fakecheck;
using namespace fakecheck::classifiers;

namespace {

const Kind kAllKinds[] = {Kind::LinearSvm, Kind::RandomForest, Kind::Mlp, Kind::SoftmaxHead};

// 20 points on a line, label 1 iff x > 0.
void line_data(Matrix& X, std::vector<int>& y) {
  for (int i = 0; i < 20; ++i) {
    const double x = i < 10 ? -1.0 - 0.1 * i : 1.0 + 0.1 * (i - 10);
    X.append_row(std::vector<double>{x});
    y.push_back(i < 10 ? 0 : 1);
  }
}

TrainConfig quick(Kind kind, std::uint64_t seed = 3) {
  auto cfg = TrainConfig::defaults(kind, seed);
  cfg.forest.n_trees = 50;
  if (kind == Kind::Mlp) {
    cfg.mlp.epochs = 300;
    cfg.mlp.learning_rate = 1e-2;
  }
  if (kind == Kind::SoftmaxHead) cfg.mlp.learning_rate = 5e-2;
  return cfg;
}

double training_accuracy(const TrainedModel& m, const Matrix& X, const std::vector<int>& y) {
  std::size_t ok = 0;
  for (std::size_t r = 0; r < X.rows(); ++r) ok += predicted_label(m.predict_proba(X.row(r))) == y[r];
  return static_cast<double>(ok) / static_cast<double>(X.rows());
}

DecisionTree leaf(int label) {
  DecisionTree t;
  t.nodes.push_back(TreeNode{-1, 0.0, -1, -1, label});
  return t;
}

}  // namespace

TEST(Kinds, NamesRoundTrip) {
  for (auto k : kAllKinds) EXPECT_EQ(parse_kind(kind_name(k)), k);
  EXPECT_EQ(parse_kind("svm"), Kind::LinearSvm);
  EXPECT_EQ(parse_kind("forest"), Kind::RandomForest);
  EXPECT_THROW(parse_kind("knn"), ConfigError);
}

TEST(Train, SeparableLineIsFitExactly) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  for (auto k : kAllKinds) {
    const auto m = train(quick(k), X, y);
    EXPECT_EQ(training_accuracy(m, X, y), 1.0) << kind_name(k);
  }
}

TEST(Train, DeterministicForFixedSeed) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  for (auto k : kAllKinds) {
    EXPECT_EQ(train(quick(k), X, y).serialize(), train(quick(k), X, y).serialize()) << kind_name(k);
  }
}

TEST(Train, ForestDoesNotDependOnThreadCount) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  auto one = quick(Kind::RandomForest);
  one.forest.threads = 1;
  auto four = one;
  four.forest.threads = 4;
  EXPECT_EQ(train(one, X, y).serialize(), train(four, X, y).serialize());
}

TEST(Train, RejectsDegenerateInputs) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  const std::vector<int> ones(20, 1);
  for (auto k : kAllKinds) EXPECT_THROW(train(quick(k), X, ones), ValidationError) << kind_name(k);

  const std::vector<int> short_labels(19, 0);
  EXPECT_THROW(train(quick(Kind::LinearSvm), X, short_labels), ValidationError);

  std::vector<int> bad = y;
  bad[0] = 2;
  EXPECT_THROW(train(quick(Kind::LinearSvm), X, bad), ValidationError);

  Matrix nan = X;
  nan(3, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(train(quick(Kind::LinearSvm), nan, y), ValidationError);

  EXPECT_THROW(train(quick(Kind::LinearSvm), X, y, features::Layout::raw(2)), LayoutMismatchError);
}

TEST(Predict, ZeroWeightHeadIsUniform) {
  MlpModel head;
  head.layers.emplace_back(3, 2);
  const TrainedModel m(Kind::SoftmaxHead, head, features::Layout::raw(3), TrainConfig::defaults(Kind::SoftmaxHead).to_json());
  const auto p = m.predict_proba(std::vector<double>{0.3, -7.0, 2.0});
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.5);
  EXPECT_EQ(predicted_label(p), 0);
}

TEST(Predict, ForestProbabilityIsTheVoteFraction) {
  ForestModel f;
  for (int t = 0; t < 400; ++t) f.trees.push_back(leaf(t < 300 ? 1 : 0));
  const TrainedModel m(Kind::RandomForest, f, features::Layout::raw(2), TrainConfig::defaults(Kind::RandomForest).to_json());
  const auto p = m.predict_proba(std::vector<double>{0.0, 0.0});
  EXPECT_DOUBLE_EQ(p[1], 0.75);
  EXPECT_DOUBLE_EQ(p[0], 0.25);
}

TEST(Predict, ForestIgnoresTreeOrder) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  auto noisy = y;
  noisy[2] = 1;
  noisy[15] = 0;
  const auto trained = train(quick(Kind::RandomForest), X, noisy);
  auto forest = std::get<ForestModel>(trained.params());
  std::mt19937_64 rng(5);
  std::shuffle(forest.trees.begin(), forest.trees.end(), rng);
  const TrainedModel permuted(Kind::RandomForest, forest, trained.layout(), trained.config());
  for (double x = -3.0; x <= 3.0; x += 0.05) {
    const std::vector<double> v{x};
    EXPECT_EQ(trained.predict_proba(v), permuted.predict_proba(v));
  }
}

TEST(Predict, WrongWidthIsALayoutMismatch) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  for (auto k : kAllKinds) {
    const auto m = train(quick(k), X, y);
    EXPECT_THROW(m.predict_proba(std::vector<double>{1.0, 2.0}), LayoutMismatchError);
    const features::FeatureVector fv{std::make_shared<const features::Layout>(features::Layout::raw(2)), {1.0}};
    EXPECT_THROW(m.predict_proba(fv), LayoutMismatchError);
  }
}

TEST(Predict, ProbabilitiesSumToOne) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  for (auto k : kAllKinds) {
    const auto m = train(quick(k), X, y);
    for (double x = -5.0; x <= 5.0; x += 0.37) {
      const auto p = m.predict_proba(std::vector<double>{x});
      EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
      EXPECT_GE(p[0], 0.0);
      EXPECT_GE(p[1], 0.0);
    }
  }
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> normal;
  for (const std::vector<std::size_t>& hidden : {std::vector<std::size_t>{}, {5}, {4, 3}}) {
    Rng rng(9);
    auto model = init_mlp(3, hidden, rng);
    // Nonzero biases keep pre-activations off the ReLU kink at 0.
    for (auto& l : model.layers) {
      for (auto& b : l.bias) b = 0.1 + 0.3 * std::abs(normal(gen));
    }
    Matrix batch(6, 3);
    std::vector<int> labels;
    for (std::size_t r = 0; r < 6; ++r) {
      for (std::size_t c = 0; c < 3; ++c) batch(r, c) = normal(gen);
      labels.push_back(static_cast<int>(r % 2));
    }
    EXPECT_LT(oracle::mlp_gradient_error(model, batch, labels), 1e-4) << hidden.size();
  }
}

TEST(Gradient, ZeroInputAndWeightsLeaveOnlyTheOutputBias) {
  MlpModel head;
  head.layers.emplace_back(4, 2);
  const Matrix batch(1, 4, 0.0);
  const std::vector<int> label{1};
  const auto g = mlp_gradient(head, batch, label);
  for (double w : g.layers[0].weights) EXPECT_EQ(w, 0.0);
  // softmax(0,0) = (0.5,0.5); d loss / d bias = p - onehot.
  EXPECT_DOUBLE_EQ(g.layers[0].bias[0], 0.5);
  EXPECT_DOUBLE_EQ(g.layers[0].bias[1], -0.5);
  EXPECT_NEAR(g.loss, std::log(2.0), 1e-15);
}

TEST(Gradient, DuplicatedBatchEqualsSingleSample) {
  Rng rng(4);
  const auto model = init_mlp(3, {4}, rng);
  const std::vector<double> x{0.2, -1.3, 0.7};
  Matrix one;
  one.append_row(x);
  Matrix many;
  for (int i = 0; i < 8; ++i) many.append_row(x);
  const auto g1 = oracle::flatten(mlp_gradient(model, one, std::vector<int>{1}).layers);
  const auto g8 = oracle::flatten(mlp_gradient(model, many, std::vector<int>(8, 1)).layers);
  ASSERT_EQ(g1.size(), g8.size());
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_NEAR(g1[i], g8[i], 1e-12);
}

TEST(Tree, DepthOneSplitsOnThePerfectFeature) {
  Matrix X;
  std::vector<int> y;
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const int label = i % 2;
    X.append_row(std::vector<double>{u(gen), label ? 2.0 + u(gen) : -2.0 + u(gen)});
    y.push_back(label);
  }
  ForestParams p;
  p.max_depth = 1;
  p.max_features = 2;
  std::vector<std::size_t> all(X.rows());
  std::iota(all.begin(), all.end(), 0);
  Rng rng(0);
  const auto tree = train_tree(X, y, all, p, rng);
  EXPECT_EQ(tree.depth(), 1u);
  ASSERT_EQ(tree.nodes.size(), 3u);
  EXPECT_EQ(tree.nodes[0].feature, 1);
  for (std::size_t r = 0; r < X.rows(); ++r) EXPECT_EQ(tree.predict(X.row(r)), y[r]);
}

TEST(Svm, InvariantToDuplicatingTheDataset) {
  Matrix X;
  std::vector<int> y;
  const auto pts = oracle::blobs(60, 1.0, 0.8, 13);
  for (const auto& p : pts) {
    X.append_row(std::vector<double>{p.x, p.y});
    y.push_back(p.label);
  }
  Matrix X2 = X;
  std::vector<int> y2 = y;
  for (std::size_t r = 0; r < X.rows(); ++r) {
    X2.append_row(X.row(r));
    y2.push_back(y[r]);
  }
  const auto a = std::get<LinearModel>(train(quick(Kind::LinearSvm), X, y).params());
  const auto b = std::get<LinearModel>(train(quick(Kind::LinearSvm), X2, y2).params());
  for (std::size_t i = 0; i < a.weights.size(); ++i) EXPECT_NEAR(a.weights[i], b.weights[i], 1e-9);
  EXPECT_NEAR(a.bias, b.bias, 1e-9);
}

TEST(Mlp, SmoothedLossDoesNotIncrease) {
  Matrix X;
  std::vector<int> y;
  for (const auto& p : oracle::blobs(100, 1.5, 0.6, 17)) {
    X.append_row(std::vector<double>{p.x, p.y});
    y.push_back(p.label);
  }
  auto cfg = TrainConfig::defaults(Kind::Mlp, 1);
  cfg.mlp.epochs = 200;
  TrainingLog log;
  train(cfg, X, y, &log);
  ASSERT_EQ(log.size(), 200u);
  constexpr std::size_t window = 20;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t end = window; end <= log.size(); ++end) {
    double sum = 0;
    for (std::size_t i = end - window; i < end; ++i) sum += log[i].loss;
    const double avg = sum / window;
    EXPECT_LE(avg, prev * (1.0 + 1e-12)) << "epoch " << end;
    prev = avg;
  }
}

TEST(Persistence, SaveLoadPredictsIdentically) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  const auto dir = std::filesystem::temp_directory_path() / "fakecheck_classifiers_test";
  std::filesystem::create_directories(dir);
  for (auto k : kAllKinds) {
    auto m = train(quick(k), X, y);
    m.set_metadata({{"note", "x"}});
    const auto path = dir / (std::string(kind_name(k)) + ".json");
    save_model(m, path);
    const auto back = load_model(path);
    EXPECT_EQ(back.kind(), k);
    EXPECT_EQ(back.serialize(), m.serialize());
    EXPECT_EQ(back.fingerprint(), m.fingerprint());
    for (double x = -4.0; x <= 4.0; x += 0.1) {
      const std::vector<double> v{x};
      EXPECT_EQ(back.predict_proba(v), m.predict_proba(v));
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Persistence, CorruptAndFutureFilesAreRejected) {
  Matrix X;
  std::vector<int> y;
  line_data(X, y);
  const auto bytes = train(quick(Kind::Mlp), X, y).serialize();
  EXPECT_THROW(TrainedModel::deserialize(bytes.substr(0, bytes.size() - 10)), CorruptFileError);
  EXPECT_THROW(TrainedModel::deserialize(""), CorruptFileError);
  auto j = nlohmann::json::parse(bytes);
  j["format_version"] = 2;
  EXPECT_THROW(TrainedModel::deserialize(j.dump()), VersionError);
  j = nlohmann::json::parse(bytes);
  j["layout"]["width"] = 5;
  EXPECT_THROW(TrainedModel::deserialize(j.dump()), CorruptFileError);
}

TEST(Config, JsonRoundTrip) {
  for (auto k : kAllKinds) {
    const auto cfg = TrainConfig::defaults(k, 42);
    const auto back = TrainConfig::from_json(cfg.to_json());
    EXPECT_EQ(back.to_json(), cfg.to_json());
    EXPECT_EQ(back.fingerprint(), cfg.fingerprint());
  }
  auto a = TrainConfig::defaults(Kind::RandomForest);
  auto b = a;
  b.forest.threads = 7;
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  b.forest.n_trees = 10;
  EXPECT_NE(a.fingerprint(), b.fingerprint());
}
