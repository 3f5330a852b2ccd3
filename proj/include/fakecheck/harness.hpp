// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fakecheck/biaser.hpp"
#include "fakecheck/classifiers.hpp"
#include "fakecheck/corpus.hpp"
#include "fakecheck/embeddings.hpp"
#include "fakecheck/factver.hpp"
#include "fakecheck/features.hpp"
#include "fakecheck/kvconfig.hpp"
#include "fakecheck/timeutil.hpp"

namespace fakecheck::harness {

// Binary metrics with fake (label 1) as the positive class. Undefined ratios
// (zero denominators) are reported as 0 and flagged.
struct Metrics {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  double accuracy = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f_undefined = false;
  // Unweighted mean over both classes.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f_score = 0.0;

  std::size_t total() const { return tp + fp + fn + tn; }
  nlohmann::json to_json() const;
  static Metrics from_json(const nlohmann::json& j);
};

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);
// Throws ValidationError on a length mismatch or empty input.
Metrics compute_metrics(std::span<const int> predicted, std::span<const int> gold);

// Inputs to feature extraction beyond the record itself. Null members make
// the corresponding family unavailable, except the bias model whose absence
// yields the neutral score.
struct Resources {
  const embeddings::EmbeddingStore* store = nullptr;
  const biaser::BiasModel* bias = nullptr;
  const factver::SearchBackend* search = nullptr;
  std::size_t factver_k = factver::kDefaultK;
  Timestamp as_of{};
  // Folded into run fingerprints; set by whoever owns the resources.
  std::string search_fingerprint;
};

// Computes the parts needed for `families` from one record. A record without
// a user profile leaves tweetuser unset; a missing embedding throws
// ValidationError naming the id.
features::FeatureParts record_parts(const corpus::TweetRecord& rec, const std::vector<features::Family>& families,
                                    const Resources& res);

// Rows in dataset order. Throws like assemble_feature_vector.
Matrix feature_matrix(const corpus::Dataset& ds, const features::Layout& layout, const Resources& res);

enum class Mode { SplitWithinLangs, HoldoutLanguage };

std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view name);

struct ExperimentConfig {
  std::string name;
  std::set<std::string> train_langs;
  std::set<std::string> test_langs;
  std::vector<features::Family> families;
  classifiers::TrainConfig classifier;
  Mode mode = Mode::SplitWithinLangs;
  double train_fraction = 0.8;
  // Drives the split and the classifier; a sweep overrides it per run.
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> sweep_seeds;
  Timestamp as_of{};
  std::size_t factver_k = factver::kDefaultK;
  bool standardize = true;

  // Throws ConfigError (empty language sets, overlap in holdout mode,
  // fraction outside (0,1), no families).
  void validate() const;

  // Keys: name, train_langs, test_langs, features, classifier, mode,
  // train_fraction, seed, seeds, as_of, factver_k, standardize, plus
  // classifier parameters (svm.c, forest.n_trees, mlp.epochs, ...).
  static ExperimentConfig from_kv(const KeyValueConfig& kv);
  static std::vector<std::string> known_keys();

  nlohmann::json to_json() const;
};

struct ExperimentReport {
  std::string name;
  nlohmann::json config;
  std::string fingerprint;
  std::uint64_t seed = 0;
  Metrics metrics;
  std::map<std::string, Metrics> per_language;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::vector<std::string> regrouped_origins;
  std::string dataset_digest;
  std::string model_fingerprint;

  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
};

// Digest over the canonical serialization of every record.
std::string dataset_digest(const corpus::Dataset& ds);

// Model, scaler and log of a single run, for callers that persist them.
struct RunArtifacts {
  classifiers::TrainedModel model;
  classifiers::TrainingLog log;
};

// preprocess -> features -> scale (fit on train) -> train -> evaluate.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const corpus::Dataset& ds, const Resources& res,
                                RunArtifacts* artifacts = nullptr);

struct SweepFailure {
  std::uint64_t seed = 0;
  std::string error;
};

struct SweepSummary {
  double min_f = 0.0;
  double median_f = 0.0;
  double max_f = 0.0;
  // Best F; ties go to the earliest seed in the list.
  std::optional<std::uint64_t> chosen_seed;
  std::string fingerprint;
};

struct SweepResult {
  std::vector<ExperimentReport> reports;
  std::vector<SweepFailure> failures;
  SweepSummary summary;

  nlohmann::json summary_json() const;
};

// Runs one experiment per seed; failures are recorded and the sweep goes on.
SweepResult seed_sweep(const ExperimentConfig& cfg, const corpus::Dataset& ds, const Resources& res,
                       std::span<const std::uint64_t> seeds);
SweepResult seed_sweep(std::span<const std::uint64_t> seeds,
                       const std::function<ExperimentReport(std::uint64_t)>& run, const std::string& base_fingerprint);

void write_reports(std::ostream& out, std::span<const ExperimentReport> reports);
std::vector<ExperimentReport> read_reports(std::istream& in);

struct ReferenceRow {
  std::string setting;
  std::string train;
  std::string test;
  std::string features;
  std::string model;
  std::optional<double> precision;
  std::optional<double> recall;
  double f_score = 0.0;
};

// Published results of the original system, for side-by-side display.
const std::vector<ReferenceRow>& reference_rows();

// Grid with one row per report (train langs, test lang, features,
// classifier, P/R/F in percent) and, optionally, the reference rows.
std::string render_table(std::span<const ExperimentReport> reports, bool with_reference);

}  // namespace fakecheck::harness
