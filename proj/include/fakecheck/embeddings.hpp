// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fakecheck::embeddings {

inline constexpr std::size_t kDefaultDim = 768;

// id -> vector map with a declared width. Immutable once built.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(std::size_t dim, std::string model_id);

  std::size_t dim() const noexcept { return dim_; }
  const std::string& model_id() const noexcept { return model_id_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  bool contains(std::string_view id) const { return vectors_.find(id) != vectors_.end(); }

  // nullptr when the id is unknown.
  const std::vector<double>* find(std::string_view id) const;
  // Throws ValidationError naming the id when it is unknown.
  const std::vector<double>& at(std::string_view id) const;

  // Rows in insertion order.
  const std::vector<std::string>& ids() const noexcept { return order_; }

  // Throws DimensionError (wrong width), ValidationError (non-finite entry or
  // duplicate id).
  void add(std::string id, std::vector<double> values);

  std::string fingerprint() const;

 private:
  std::size_t dim_ = 0;
  std::string model_id_;
  std::map<std::string, std::vector<double>, std::less<>> vectors_;
  std::vector<std::string> order_;
};

// First line {"dim":D,"model_id":M}; then one {"id":..,"values":[..]} per line.
EmbeddingStore load_embeddings(const std::filesystem::path& path);
EmbeddingStore parse_embeddings(std::istream& in);
void write_embeddings(std::ostream& out, const EmbeddingStore& store);
void save_embeddings(const std::filesystem::path& path, const EmbeddingStore& store);

// Anything that can turn texts into vectors, in input order.
class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) const = 0;
  virtual std::size_t dim() const = 0;
};

struct ProviderOptions {
  // e.g. "http://127.0.0.1:8081" or "http://host:8081/v1/embed"; the path
  // defaults to /embed.
  std::string endpoint;
  std::size_t batch_size = 32;
  std::chrono::milliseconds timeout{5000};
  // Extra attempts per batch after the first one.
  std::size_t retries = 2;
  std::chrono::milliseconds retry_backoff{50};
  // Expected vector width; 0 accepts the width of the first response.
  std::size_t dim = 0;
};

// HTTP client for POST /embed {texts} -> {model_id, vectors}.
class EmbeddingProviderClient : public EmbeddingSource {
 public:
  explicit EmbeddingProviderClient(ProviderOptions options);

  const ProviderOptions& options() const noexcept { return options_; }

  // One vector per text, in order. Connection failures and 5xx/429 answers
  // are retried; exhaustion raises TimeoutError if the last attempt timed out
  // and ProviderError otherwise. Wrong counts or widths raise DimensionError.
  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) const override;
  std::size_t dim() const override { return options_.dim; }

  // Number of HTTP requests issued so far (including retries).
  std::size_t requests_sent() const noexcept { return requests_; }

 private:
  std::vector<std::vector<double>> fetch_batch(const std::vector<std::string>& texts) const;

  ProviderOptions options_;
  std::string base_;
  std::string path_;
  mutable std::atomic<std::size_t> requests_{0};
};

// Convenience wrapper matching the module's operation name.
std::vector<std::vector<double>> fetch_embeddings(const EmbeddingSource& source, const std::vector<std::string>& texts);

}  // namespace fakecheck::embeddings
