// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fakecheck/biaser.hpp"
#include "fakecheck/classifiers.hpp"
#include "fakecheck/corpus.hpp"
#include "fakecheck/embeddings.hpp"
#include "fakecheck/factver.hpp"
#include "fakecheck/kvconfig.hpp"

namespace fakecheck::service {

struct Request {
  std::string text;
  std::optional<corpus::UserProfile> user;
  std::optional<std::string> lang;
  // Looks up a precomputed embedding by record id.
  std::optional<std::string> id;
  std::optional<std::uint64_t> retweet_count;
  std::optional<std::uint64_t> favourite_count;
};

// Field name -> problem, for 400 responses.
using FieldReport = std::vector<std::pair<std::string, std::string>>;

// Parses a /predict body. Returns the request or the list of bad fields.
std::variant<Request, FieldReport> parse_request(const std::string& body);

struct Verdict {
  int label = corpus::kNonFake;
  double p_fake = 0.0;
  // Unscaled values of every non-embedding column, in layout order.
  std::vector<std::pair<std::string, double>> feature_breakdown;
  std::vector<std::string> factver_titles;
  std::string model_fingerprint;

  nlohmann::json to_json() const;
};

struct PipelineConfig {
  std::filesystem::path model;
  std::optional<std::filesystem::path> embeddings;
  std::optional<std::filesystem::path> bias_model;
  std::optional<std::filesystem::path> index;
  std::optional<std::filesystem::path> allowlist;
  std::optional<embeddings::ProviderOptions> provider;
  // Reference time for user features; defaults to the model's recorded as_of.
  std::optional<Timestamp> as_of;
  std::optional<std::size_t> factver_k;

  // Keys: model, embeddings, bias_model, index, allowlist, provider.endpoint,
  // provider.batch_size, provider.timeout_ms, provider.retries, as_of, factver_k.
  static PipelineConfig from_kv(const KeyValueConfig& kv);
};

// A trained model plus the resources its feature families need. Immutable;
// classify() may be called from many threads.
class Pipeline {
 public:
  Pipeline(classifiers::TrainedModel model, std::shared_ptr<const embeddings::EmbeddingStore> store,
           std::shared_ptr<const biaser::BiasModel> bias, std::shared_ptr<const factver::TrustedIndex> index,
           std::shared_ptr<const embeddings::EmbeddingSource> provider, Timestamp as_of,
           std::size_t factver_k = factver::kDefaultK);

  // Throws ConfigError when the model needs a resource the config lacks.
  static Pipeline load(const PipelineConfig& cfg);

  // Errors: ValidationError("empty input"), FamilyUnavailableError (missing
  // user profile), ProviderError (no embedding obtainable), DimensionError.
  Verdict classify(const Request& req) const;

  const classifiers::TrainedModel& model() const noexcept { return model_; }
  const std::string& model_fingerprint() const noexcept { return model_fingerprint_; }
  std::size_t embedding_dim() const noexcept { return model_.layout().embedding_dim(); }

 private:
  std::vector<double> resolve_embedding(const Request& req, const std::string& preprocessed) const;

  classifiers::TrainedModel model_;
  std::shared_ptr<const features::Layout> layout_;
  std::shared_ptr<const embeddings::EmbeddingStore> store_;
  std::shared_ptr<const biaser::BiasModel> bias_;
  std::shared_ptr<const factver::TrustedIndex> index_;
  std::shared_ptr<const embeddings::EmbeddingSource> provider_;
  Timestamp as_of_;
  std::size_t factver_k_;
  std::string model_fingerprint_;
};

// HTTP status for an exception thrown by Pipeline::classify.
int status_for(const std::exception& e);

struct ServerOptions {
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  int port = 8080;
  std::optional<std::filesystem::path> static_dir;
  std::size_t threads = 8;
  // One JSON object per request; null disables logging.
  std::ostream* log = nullptr;

  // Keys: host, port, static_dir, threads.
  static ServerOptions from_kv(const KeyValueConfig& kv);
};

// POST /predict, GET /health, GET /version, static files under /.
class Server {
 public:
  Server(std::shared_ptr<const Pipeline> pipeline, ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds the socket; throws IoError when the port is taken. Returns the port.
  int bind();
  // Serves until stop(). Binds first if needed.
  void run();
  // run() on a background thread; returns once the server accepts requests.
  void start();
  void stop();
  int port() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Keys accepted by `serve --config`, for environment overrides.
std::vector<std::string> config_keys();

}  // namespace fakecheck::service
