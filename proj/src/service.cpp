// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/service.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <ostream>
#include <thread>

#include <httplib.h>

#include "fakecheck/error.hpp"
#include "fakecheck/features.hpp"
#include "fakecheck/hash.hpp"
#include "fakecheck/version.hpp"

namespace fakecheck::service {

using json = nlohmann::json;
using features::Family;

std::variant<Request, FieldReport> parse_request(const std::string& body) {
  FieldReport bad;
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error&) {
    bad.emplace_back("body", "not valid JSON");
    return bad;
  }
  if (!j.is_object()) {
    bad.emplace_back("body", "expected a JSON object");
    return bad;
  }
  Request req;
  if (!j.contains("text")) {
    bad.emplace_back("text", "required");
  } else if (!j["text"].is_string()) {
    bad.emplace_back("text", "expected a string");
  } else {
    req.text = j["text"].get<std::string>();
  }
  auto opt_string = [&](const char* key, std::optional<std::string>& out) {
    if (!j.contains(key) || j[key].is_null()) return;
    if (!j[key].is_string()) {
      bad.emplace_back(key, "expected a string");
      return;
    }
    out = j[key].get<std::string>();
  };
  opt_string("lang", req.lang);
  opt_string("id", req.id);
  if (req.lang) {
    const auto& l = *req.lang;
    const bool ok = !l.empty() && l.size() <= 8 &&
                    std::all_of(l.begin(), l.end(), [](char c) { return (c >= 'a' && c <= 'z') || c == '-'; });
    if (!ok) bad.emplace_back("lang", "expected a lower-case language tag");
  }
  auto opt_count = [&](const char* key, std::optional<std::uint64_t>& out) {
    if (!j.contains(key) || j[key].is_null()) return;
    if (j[key].is_number_unsigned()) {
      out = j[key].get<std::uint64_t>();
    } else if (j[key].is_number_integer() && j[key].get<std::int64_t>() >= 0) {
      out = static_cast<std::uint64_t>(j[key].get<std::int64_t>());
    } else {
      bad.emplace_back(key, "expected a non-negative integer");
    }
  };
  opt_count("retweet_count", req.retweet_count);
  opt_count("favourite_count", req.favourite_count);
  if (j.contains("user") && !j["user"].is_null()) {
    try {
      req.user = corpus::parse_user_profile(j["user"].dump());
    } catch (const ParseError& e) {
      bad.emplace_back(e.field().empty() ? "user" : e.field(), e.what());
    } catch (const Error& e) {
      bad.emplace_back("user", e.what());
    }
  }
  if (!bad.empty()) return bad;
  return req;
}

json Verdict::to_json() const {
  json breakdown = json::object();
  for (const auto& [name, v] : feature_breakdown) breakdown[name] = v;
  return {{"label", label == corpus::kFake ? "fake" : "non_fake"},
          {"p_fake", p_fake},
          {"feature_breakdown", breakdown},
          {"factver_titles", factver_titles},
          {"model_fingerprint", model_fingerprint}};
}

// ---------------------------------------------------------------------------

namespace {

std::optional<std::filesystem::path> opt_path(const KeyValueConfig& kv, const std::string& key) {
  auto v = kv.get(key);
  if (!v || v->empty()) return std::nullopt;
  return std::filesystem::path(*v);
}

bool has_family(const features::Layout& l, Family f) { return l.has(f); }

}  // namespace

PipelineConfig PipelineConfig::from_kv(const KeyValueConfig& kv) {
  PipelineConfig c;
  c.model = kv.require("model");
  c.embeddings = opt_path(kv, "embeddings");
  c.bias_model = opt_path(kv, "bias_model");
  c.index = opt_path(kv, "index");
  c.allowlist = opt_path(kv, "allowlist");
  if (auto ep = kv.get("provider.endpoint"); ep && !ep->empty()) {
    embeddings::ProviderOptions p;
    p.endpoint = *ep;
    p.batch_size = static_cast<std::size_t>(kv.get_int("provider.batch_size", 32));
    p.timeout = std::chrono::milliseconds(kv.get_int("provider.timeout_ms", 5000));
    p.retries = static_cast<std::size_t>(kv.get_int("provider.retries", 2));
    c.provider = p;
  }
  if (auto t = kv.get("as_of"); t && !t->empty()) {
    try {
      c.as_of = parse_timestamp(*t);
    } catch (const Error& e) {
      throw ConfigError(std::string("key 'as_of': ") + e.what());
    }
  }
  if (kv.has("factver_k")) c.factver_k = static_cast<std::size_t>(kv.get_int("factver_k", factver::kDefaultK));
  return c;
}

Pipeline::Pipeline(classifiers::TrainedModel model, std::shared_ptr<const embeddings::EmbeddingStore> store,
                   std::shared_ptr<const biaser::BiasModel> bias, std::shared_ptr<const factver::TrustedIndex> index,
                   std::shared_ptr<const embeddings::EmbeddingSource> provider, Timestamp as_of, std::size_t factver_k)
    : model_(std::move(model)),
      layout_(std::make_shared<const features::Layout>(model_.layout())),
      store_(std::move(store)),
      bias_(std::move(bias)),
      index_(std::move(index)),
      provider_(std::move(provider)),
      as_of_(as_of),
      factver_k_(factver_k),
      model_fingerprint_(model_.fingerprint()) {
  const auto& l = *layout_;
  if (l.families().empty()) throw ConfigError("model was not trained on named feature families");
  if (factver_k_ == 0) throw ConfigError("factver_k must be at least 1");
  if (has_family(l, Family::FactVer) && !index_) {
    throw ConfigError("model uses FactVer but no trusted index is configured");
  }
  if (has_family(l, Family::TextEmbd)) {
    if (!store_ && !provider_) {
      throw ConfigError("model uses TextEmbd but neither an embedding file nor a provider is configured");
    }
    if (store_ && store_->dim() != l.embedding_dim()) {
      throw DimensionError("embedding file width " + std::to_string(store_->dim()) + " != model embedding width " +
                           std::to_string(l.embedding_dim()));
    }
  }
}

Pipeline Pipeline::load(const PipelineConfig& cfg) {
  auto model = classifiers::load_model(cfg.model);
  std::shared_ptr<const embeddings::EmbeddingStore> store;
  if (cfg.embeddings) store = std::make_shared<const embeddings::EmbeddingStore>(embeddings::load_embeddings(*cfg.embeddings));
  std::shared_ptr<const biaser::BiasModel> bias;
  if (cfg.bias_model) bias = std::make_shared<const biaser::BiasModel>(biaser::load_bias_model(*cfg.bias_model));
  std::shared_ptr<const factver::TrustedIndex> index;
  if (cfg.index) {
    if (!cfg.allowlist) throw ConfigError("an index needs an allowlist");
    index = std::make_shared<const factver::TrustedIndex>(factver::load_index(*cfg.index, *cfg.allowlist));
  }
  std::shared_ptr<const embeddings::EmbeddingSource> provider;
  if (cfg.provider) {
    auto opts = *cfg.provider;
    if (opts.dim == 0) opts.dim = model.layout().embedding_dim();
    provider = std::make_shared<const embeddings::EmbeddingProviderClient>(opts);
  }
  Timestamp as_of{};
  if (cfg.as_of) {
    as_of = *cfg.as_of;
  } else if (auto it = model.metadata().find("as_of"); it != model.metadata().end() && it->is_string()) {
    as_of = parse_timestamp(it->get<std::string>());
  } else if (model.layout().has(Family::TweetUser)) {
    throw ConfigError("model uses tweetuser but no as_of is configured or recorded in the model");
  }
  std::size_t k = factver::kDefaultK;
  if (cfg.factver_k) {
    k = *cfg.factver_k;
  } else if (auto it = model.metadata().find("factver_k"); it != model.metadata().end() && it->is_number_unsigned()) {
    k = it->get<std::size_t>();
  }
  return Pipeline(std::move(model), store, bias, index, provider, as_of, k);
}

std::vector<double> Pipeline::resolve_embedding(const Request& req, const std::string& preprocessed) const {
  if (store_) {
    for (const std::string* key : {req.id ? &*req.id : nullptr, &req.text, &preprocessed}) {
      if (!key) continue;
      if (const auto* v = store_->find(*key)) return *v;
    }
  }
  if (!provider_) throw ProviderError("embedding provider unavailable: text is not in the embedding file");
  auto vectors = provider_->embed({preprocessed});
  if (vectors.size() != 1) throw DimensionError("embedding provider returned no vector");
  if (vectors[0].size() != layout_->embedding_dim()) {
    throw DimensionError("embedding provider width " + std::to_string(vectors[0].size()) +
                         " != model embedding width " + std::to_string(layout_->embedding_dim()));
  }
  return std::move(vectors[0]);
}

Verdict Pipeline::classify(const Request& req) const {
  const std::string preprocessed = corpus::preprocess_text(req.text);
  if (preprocessed.empty()) throw ValidationError("empty input");
  const auto& l = *layout_;

  features::FeatureParts parts;
  Verdict v;
  if (l.has(Family::TweetUser)) {
    if (!req.user) throw FamilyUnavailableError("missing feature family: tweetuser (request has no user profile)");
    parts.user = features::extract_user_features(*req.user, as_of_);
  }
  if (l.has(Family::TweetText)) {
    parts.text = features::extract_text_features(req.text, req.retweet_count.value_or(0), req.favourite_count.value_or(0));
  }
  if (l.has(Family::FactVer)) {
    auto score = factver::factver_score(req.text, *index_, factver_k_);
    parts.factver = score.score;
    v.factver_titles = std::move(score.matched_titles);
  }
  if (l.has(Family::Bias)) parts.bias = bias_ ? biaser::bias_score(*bias_, req.text) : biaser::kNeutralScore;
  if (l.has(Family::TextEmbd)) parts.embedding = resolve_embedding(req, preprocessed);

  const auto raw = features::assemble_feature_vector(parts, layout_);
  const auto scaled = model_.scaler() ? model_.scaler()->apply(raw) : raw;
  const auto proba = model_.predict_proba(scaled);
  v.p_fake = proba[1];
  v.label = classifiers::predicted_label(proba);
  const std::size_t skip = l.embedding_dim();
  for (std::size_t i = skip; i < l.size(); ++i) v.feature_breakdown.emplace_back(l.names()[i], raw.values[i]);
  v.model_fingerprint = model_fingerprint_;
  return v;
}

int status_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e)) return 400;
  if (dynamic_cast<const FamilyUnavailableError*>(&e)) return 422;
  if (dynamic_cast<const ProviderError*>(&e)) return 503;
  if (dynamic_cast<const DimensionError*>(&e)) return 502;
  return 500;
}

// ---------------------------------------------------------------------------

ServerOptions ServerOptions::from_kv(const KeyValueConfig& kv) {
  ServerOptions o;
  o.host = kv.get_or("host", o.host);
  o.port = static_cast<int>(kv.get_int("port", o.port));
  if (o.port < 0 || o.port > 65535) throw ConfigError("port out of range");
  o.static_dir = opt_path(kv, "static_dir");
  o.threads = static_cast<std::size_t>(kv.get_int("threads", static_cast<std::int64_t>(o.threads)));
  if (o.threads == 0) throw ConfigError("threads must be at least 1");
  return o;
}

std::vector<std::string> config_keys() {
  return {"model",           "embeddings",         "bias_model",         "index",     "allowlist",
          "provider.endpoint", "provider.batch_size", "provider.timeout_ms", "provider.retries",
          "as_of",           "factver_k",          "host",               "port",      "static_dir",
          "threads"};
}

struct Server::Impl {
  std::shared_ptr<const Pipeline> pipeline;
  ServerOptions options;
  httplib::Server http;
  std::mutex log_mu;
  std::atomic<bool> bound{false};
  int port = -1;
  std::thread thread;

  void log(const httplib::Request& req, int status, double ms) {
    if (!options.log) return;
    const auto now = std::chrono::system_clock::now();
    json line = {{"ts", format_timestamp(std::chrono::floor<std::chrono::seconds>(now))},
                 {"method", req.method},
                 {"path", req.path},
                 {"status", status},
                 {"duration_ms", ms},
                 {"remote", req.remote_addr}};
    std::lock_guard lock(log_mu);
    *options.log << line.dump() << '\n' << std::flush;
  }

  static void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  void handle_predict(const httplib::Request& req, httplib::Response& res) {
    auto parsed = parse_request(req.body);
    if (auto* bad = std::get_if<FieldReport>(&parsed)) {
      json fields = json::object();
      for (const auto& [k, v] : *bad) fields[k] = v;
      send_json(res, 400, {{"error", "invalid request"}, {"fields", fields}});
      return;
    }
    try {
      send_json(res, 200, pipeline->classify(std::get<Request>(parsed)).to_json());
    } catch (const std::exception& e) {
      const int status = status_for(e);
      std::string kind = status == 400 ? "invalid input" : status == 422 ? "missing feature family"
                       : status == 503 ? "embedding provider unavailable" : "internal error";
      send_json(res, status, {{"error", kind}, {"detail", e.what()}});
    }
  }

  void routes() {
    auto timed = [this](auto handler) {
      return [this, handler](const httplib::Request& req, httplib::Response& res) {
        const auto start = std::chrono::steady_clock::now();
        handler(req, res);
        const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
        log(req, res.status, ms.count());
      };
    };
    http.Post("/predict", timed([this](const httplib::Request& q, httplib::Response& r) { handle_predict(q, r); }));
    http.Get("/health", timed([this](const httplib::Request&, httplib::Response& r) {
               std::vector<std::string> fams;
               for (auto f : pipeline->model().layout().families()) fams.emplace_back(features::family_name(f));
               send_json(r, 200,
                         {{"status", "ok"},
                          {"model_fingerprint", pipeline->model_fingerprint()},
                          {"dim", pipeline->embedding_dim()},
                          {"kind", classifiers::kind_name(pipeline->model().kind())},
                          {"families", fams}});
             }));
    http.Get("/version", timed([](const httplib::Request&, httplib::Response& r) {
               send_json(r, 200,
                         {{"name", "fakecheck"},
                          {"version", kVersion},
                          {"model_format_version", classifiers::kModelFormatVersion},
                          {"dataset_schema_version", corpus::kSchemaVersion}});
             }));
    if (options.static_dir) {
      if (!http.set_mount_point("/", options.static_dir->string())) {
        throw ConfigError("static directory does not exist: " + options.static_dir->string());
      }
    }
    http.set_payload_max_length(1 << 20);
    // httplib also sets SO_REUSEPORT by default, which would let a second
    // server share a busy port.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    const std::size_t threads = options.threads;
    http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  }
};

Server::Server(std::shared_ptr<const Pipeline> pipeline, ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->pipeline = std::move(pipeline);
  impl_->options = std::move(options);
  impl_->routes();
}

Server::~Server() { stop(); }

int Server::bind() {
  if (impl_->bound) return impl_->port;
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) throw IoError("cannot bind " + o.host + ":" + std::to_string(o.port) + " (port busy?)");
  impl_->bound = true;
  return impl_->port;
}

void Server::run() {
  bind();
  impl_->http.listen_after_bind();
}

void Server::start() {
  bind();
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
}

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int Server::port() const noexcept { return impl_->port; }

}  // namespace fakecheck::service
