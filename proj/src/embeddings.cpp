// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fakecheck/error.hpp"
#include "fakecheck/hash.hpp"

namespace fakecheck::embeddings {

using json = nlohmann::json;

EmbeddingStore::EmbeddingStore(std::size_t dim, std::string model_id) : dim_(dim), model_id_(std::move(model_id)) {
  if (dim_ == 0) throw ValidationError("embedding dim must be positive");
}

const std::vector<double>* EmbeddingStore::find(std::string_view id) const {
  auto it = vectors_.find(id);
  return it == vectors_.end() ? nullptr : &it->second;
}

const std::vector<double>& EmbeddingStore::at(std::string_view id) const {
  if (const auto* v = find(id)) return *v;
  throw ValidationError("no embedding for id '" + std::string(id) + "'");
}

void EmbeddingStore::add(std::string id, std::vector<double> values) {
  if (values.size() != dim_) {
    throw DimensionError("embedding '" + id + "' has " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(dim_));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("embedding '" + id + "' contains a non-finite value");
  }
  if (vectors_.count(id)) throw ValidationError("duplicate embedding id '" + id + "'");
  order_.push_back(id);
  vectors_.emplace(std::move(id), std::move(values));
}

std::string EmbeddingStore::fingerprint() const {
  Fnv1a h;
  h.field(std::to_string(dim_)).field(model_id_);
  for (const auto& id : order_) {
    h.field(id);
    for (double v : vectors_.at(id)) h.update(std::string_view(reinterpret_cast<const char*>(&v), sizeof v));
  }
  return h.hex();
}

EmbeddingStore parse_embeddings(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  EmbeddingStore store;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lineno, "", std::string("invalid JSON: ") + e.what());
    }
    if (!have_header) {
      if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned()) {
        throw ParseError(lineno, "dim", "header must declare a positive integer dim");
      }
      if (!j.contains("model_id") || !j["model_id"].is_string()) {
        throw ParseError(lineno, "model_id", "header must declare model_id");
      }
      store = EmbeddingStore(j["dim"].get<std::size_t>(), j["model_id"].get<std::string>());
      have_header = true;
      continue;
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
      throw ParseError(lineno, "id", "missing or non-string id");
    }
    if (!j.contains("values") || !j["values"].is_array()) {
      throw ParseError(lineno, "values", "missing values array");
    }
    std::vector<double> values;
    values.reserve(j["values"].size());
    for (const auto& v : j["values"]) {
      if (!v.is_number()) throw ParseError(lineno, "values", "non-numeric entry");
      values.push_back(v.get<double>());
    }
    store.add(j["id"].get<std::string>(), std::move(values));
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "dim", "missing header record");
  return store;
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read embedding file: " + path.string());
  return parse_embeddings(in);
}

void write_embeddings(std::ostream& out, const EmbeddingStore& store) {
  out << json{{"dim", store.dim()}, {"model_id", store.model_id()}}.dump() << '\n';
  for (const auto& id : store.ids()) {
    // nlohmann prints the shortest representation that reads back to the same double.
    out << json{{"id", id}, {"values", store.at(id)}}.dump() << '\n';
  }
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingStore& store) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write embedding file: " + path.string());
  write_embeddings(out, store);
}

// ---------------------------------------------------------------------------

EmbeddingProviderClient::EmbeddingProviderClient(ProviderOptions options) : options_(std::move(options)) {
  if (options_.batch_size == 0) throw ConfigError("provider batch size must be at least 1");
  if (options_.endpoint.empty()) throw ConfigError("provider endpoint is empty");
  const auto scheme = options_.endpoint.find("://");
  const auto path_start = options_.endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) {
    base_ = options_.endpoint;
    path_ = "/embed";
  } else {
    base_ = options_.endpoint.substr(0, path_start);
    path_ = options_.endpoint.substr(path_start);
    if (path_ == "/") path_ = "/embed";
  }
}

std::vector<std::vector<double>> EmbeddingProviderClient::fetch_batch(const std::vector<std::string>& texts) const {
  httplib::Client client(base_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const std::string body = json{{"texts", texts}}.dump();
  std::string last_error = "no attempt made";
  bool last_timed_out = false;
  for (std::size_t attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.retry_backoff * attempt);
    ++requests_;
    const auto start = std::chrono::steady_clock::now();
    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      const auto elapsed = std::chrono::steady_clock::now() - start;
      last_timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                       (res.error() == httplib::Error::Read && elapsed >= options_.timeout);
      last_error = "embedding provider request failed: " + httplib::to_string(res.error());
      continue;
    }
    last_timed_out = false;
    if (res->status >= 500 || res->status == 429) {
      last_error = "embedding provider returned status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError("embedding provider returned status " + std::to_string(res->status) + ": " + res->body);
    }
    json j;
    try {
      j = json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw ProviderError(std::string("embedding provider sent invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_array()) {
      throw ProviderError("embedding provider response lacks a vectors array");
    }
    const auto& vectors = j["vectors"];
    if (vectors.size() != texts.size()) {
      throw DimensionError("embedding provider returned " + std::to_string(vectors.size()) + " vectors for " +
                           std::to_string(texts.size()) + " texts");
    }
    std::vector<std::vector<double>> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
      if (!v.is_array()) throw ProviderError("embedding provider vector is not an array");
      std::vector<double> row;
      row.reserve(v.size());
      for (const auto& x : v) {
        if (!x.is_number()) throw ProviderError("embedding provider vector holds a non-number");
        const double d = x.get<double>();
        if (!std::isfinite(d)) throw ProviderError("embedding provider vector holds a non-finite value");
        row.push_back(d);
      }
      out.push_back(std::move(row));
    }
    return out;
  }
  if (last_timed_out) throw TimeoutError(last_error + " (timed out)");
  throw ProviderError(last_error);
}

std::vector<std::vector<double>> EmbeddingProviderClient::embed(const std::vector<std::string>& texts) const {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  std::size_t expected = options_.dim;
  for (std::size_t start = 0; start < texts.size(); start += options_.batch_size) {
    const std::size_t end = std::min(texts.size(), start + options_.batch_size);
    auto batch = fetch_batch(std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(start),
                                                      texts.begin() + static_cast<std::ptrdiff_t>(end)));
    for (auto& v : batch) {
      if (expected == 0) expected = v.size();
      if (v.size() != expected) {
        throw DimensionError("embedding provider returned width " + std::to_string(v.size()) + ", expected " +
                             std::to_string(expected));
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<std::vector<double>> fetch_embeddings(const EmbeddingSource& source, const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  return source.embed(texts);
}

}  // namespace fakecheck::embeddings
