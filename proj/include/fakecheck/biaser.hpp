// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fakecheck/platt.hpp"

namespace fakecheck::biaser {

// Score used for the Bias family when no model is configured.
inline constexpr double kNeutralScore = 0.5;

struct BiasConfig {
  int word_ngram_min = 1;
  int word_ngram_max = 2;
  int char_ngram_min = 3;
  int char_ngram_max = 5;
  double lambda = 1e-3;
  int epochs = 30;
  std::uint64_t seed = 0;

  std::string hash() const;
  bool operator==(const BiasConfig&) const = default;
};

// (column, value) pairs sorted by column.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

// Word n-grams ("w:...") over preprocessed tokens and character n-grams
// ("c:...") over the preprocessed string, with their counts.
std::map<std::string, double> extract_ngrams(std::string_view raw_text, const BiasConfig& cfg);

// TF-IDF n-gram vocabulary + linear hinge-loss weights + sigmoid calibration.
class BiasModel {
 public:
  BiasModel() = default;

  const BiasConfig& config() const noexcept { return config_; }
  std::size_t vocabulary_size() const noexcept { return vocabulary_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double intercept() const noexcept { return intercept_; }
  const PlattScaling& calibration() const noexcept { return platt_; }
  const std::map<std::string, std::uint32_t>& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<double>& idf() const noexcept { return idf_; }

  // tf * idf over in-vocabulary n-grams; out-of-vocabulary n-grams are dropped.
  SparseVector vectorize(std::string_view raw_text) const;
  double margin(const SparseVector& x) const;
  // Calibrated probability, strictly inside (0, 1).
  double probability(const SparseVector& x) const;

  std::string serialize() const;
  static BiasModel deserialize(const std::string& bytes);

  friend BiasModel train_bias_model(const std::vector<std::pair<std::string, int>>& corpus, const BiasConfig& cfg);

 private:
  BiasConfig config_;
  std::map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
  std::vector<double> weights_;
  double intercept_ = 0.0;
  PlattScaling platt_;
};

// Pegasos-style stochastic subgradient descent on the L2-regularized hinge
// loss; sample order comes from cfg.seed. Labels are 1 = offensive.
BiasModel train_bias_model(const std::vector<std::pair<std::string, int>>& corpus, const BiasConfig& cfg = {});

double bias_score(const BiasModel& model, std::string_view text);

// Tab-separated "label<TAB>text" lines.
std::vector<std::pair<std::string, int>> load_bias_corpus(const std::filesystem::path& path);

void save_bias_model(const BiasModel& model, const std::filesystem::path& path);
BiasModel load_bias_model(const std::filesystem::path& path);

}  // namespace fakecheck::biaser
