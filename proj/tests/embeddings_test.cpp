// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fakecheck/embeddings.hpp"
#include "fakecheck/error.hpp"

using namespace fakecheck;
using namespace fakecheck::embeddings;
using nlohmann::json;

namespace {

std::string header(std::size_t dim) { return json{{"dim", dim}, {"model_id", "test-encoder"}}.dump() + "\n"; }

std::string row(const std::string& id, std::size_t width, double v = 0.5) {
  return json{{"id", id}, {"values", std::vector<double>(width, v)}}.dump() + "\n";
}

// In-process stand-in for an embedding provider. `respond` sees each request's
// texts and fills the response.
class FakeProvider {
 public:
  using Handler = std::function<void(const std::vector<std::string>&, httplib::Response&)>;

  explicit FakeProvider(Handler respond) : respond_(std::move(respond)) {
    server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      const auto texts = json::parse(req.body).at("texts").get<std::vector<std::string>>();
      {
        std::lock_guard lock(mu_);
        batches_.push_back(texts);
      }
      respond_(texts, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeProvider() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::vector<std::vector<std::string>> batches() const {
    std::lock_guard lock(mu_);
    return batches_;
  }

  // Vectors whose first entry is the text length, so ordering is checkable.
  static void echo(const std::vector<std::string>& texts, httplib::Response& res, std::size_t dim = 4) {
    json vectors = json::array();
    for (const auto& t : texts) {
      std::vector<double> v(dim, 0.0);
      v[0] = static_cast<double>(t.size());
      vectors.push_back(v);
    }
    res.set_content(json{{"model_id", "fake"}, {"vectors", vectors}}.dump(), "application/json");
  }

 private:
  Handler respond_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mu_;
  std::vector<std::vector<std::string>> batches_;
};

ProviderOptions options_for(const FakeProvider& p, std::size_t batch) {
  ProviderOptions o;
  o.endpoint = p.endpoint();
  o.batch_size = batch;
  o.timeout = std::chrono::milliseconds(500);
  o.retries = 2;
  o.retry_backoff = std::chrono::milliseconds(1);
  o.dim = 4;
  return o;
}

}  // namespace

TEST(EmbeddingFile, LoadsHeaderAndRows) {
  std::istringstream in(header(3) + row("a", 3) + row("b", 3) + row("c", 3));
  const auto store = parse_embeddings(in);
  EXPECT_EQ(store.size(), 3u);
  EXPECT_EQ(store.dim(), 3u);
  EXPECT_EQ(store.model_id(), "test-encoder");
  EXPECT_EQ(store.ids(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(store.at("b"), std::vector<double>(3, 0.5));
  EXPECT_EQ(store.find("zz"), nullptr);
  EXPECT_THROW(store.at("zz"), ValidationError);
}

TEST(EmbeddingFile, WrongWidthNamesTheId) {
  std::istringstream in(header(768) + row("ok", 768) + row("tweet-42", 767));
  try {
    parse_embeddings(in);
    FAIL();
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("tweet-42"), std::string::npos) << e.what();
  }
}

TEST(EmbeddingFile, RejectsDuplicatesNonFiniteAndBadHeader) {
  std::istringstream dup(header(2) + row("a", 2) + row("a", 2));
  EXPECT_THROW(parse_embeddings(dup), ValidationError);

  EmbeddingStore store(2, "m");
  EXPECT_THROW(store.add("x", {1.0, std::numeric_limits<double>::quiet_NaN()}), ValidationError);
  EXPECT_THROW(store.add("y", {1.0, std::numeric_limits<double>::infinity()}), ValidationError);
  EXPECT_THROW(store.add("z", {1.0}), DimensionError);

  std::istringstream bad("{\"model_id\":\"m\"}\n");
  EXPECT_THROW(parse_embeddings(bad), ParseError);
  std::istringstream junk(header(2) + "not json\n");
  EXPECT_THROW(parse_embeddings(junk), ParseError);
}

TEST(EmbeddingFile, RoundTripIsBitExact) {
  EmbeddingStore store(3, "m");
  store.add("p", {0.1, 1.0 / 3.0, -2.5e-300});
  store.add("q", {std::nextafter(1.0, 2.0), -0.0, 123456789.123456789});
  std::stringstream buf;
  write_embeddings(buf, store);
  const auto back = parse_embeddings(buf);
  ASSERT_EQ(back.ids(), store.ids());
  for (const auto& id : store.ids()) {
    const auto& a = store.at(id);
    const auto& b = back.at(id);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(std::memcmp(&a[i], &b[i], sizeof(double)), 0) << id << "[" << i << "]";
    }
  }
  EXPECT_EQ(back.fingerprint(), store.fingerprint());
}

TEST(Provider, BatchesInOrder) {
  FakeProvider fake([](const auto& texts, auto& res) { FakeProvider::echo(texts, res); });
  EmbeddingProviderClient client(options_for(fake, 2));
  const std::vector<std::string> texts = {"a", "bb", "ccc", "dddd", "eeeee"};
  const auto vectors = fetch_embeddings(client, texts);
  ASSERT_EQ(vectors.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(vectors[i][0], static_cast<double>(i + 1));
  const auto batches = fake.batches();
  ASSERT_EQ(batches.size(), 3u);
  EXPECT_EQ(batches[0], (std::vector<std::string>{"a", "bb"}));
  EXPECT_EQ(batches[1], (std::vector<std::string>{"ccc", "dddd"}));
  EXPECT_EQ(batches[2], (std::vector<std::string>{"eeeee"}));
  EXPECT_EQ(client.requests_sent(), 3u);
}

TEST(Provider, EmptyInputSendsNothing) {
  FakeProvider fake([](const auto& texts, auto& res) { FakeProvider::echo(texts, res); });
  EmbeddingProviderClient client(options_for(fake, 2));
  EXPECT_TRUE(fetch_embeddings(client, {}).empty());
  EXPECT_EQ(client.requests_sent(), 0u);
  EXPECT_TRUE(fake.batches().empty());
}

TEST(Provider, CountMismatchIsAnError) {
  FakeProvider fake([](const auto& texts, auto& res) {
    auto shorter = texts;
    shorter.pop_back();
    FakeProvider::echo(shorter, res);
  });
  EmbeddingProviderClient client(options_for(fake, 8));
  EXPECT_THROW(fetch_embeddings(client, {"a", "b", "c", "d", "e"}), DimensionError);
}

TEST(Provider, WidthMismatchIsAnError) {
  FakeProvider fake([](const auto& texts, auto& res) { FakeProvider::echo(texts, res, 3); });
  EmbeddingProviderClient client(options_for(fake, 8));
  EXPECT_THROW(fetch_embeddings(client, {"a"}), DimensionError);
}

TEST(Provider, RetriesServerErrors) {
  std::atomic<int> calls{0};
  FakeProvider fake([&](const auto& texts, auto& res) {
    if (calls++ == 0) {
      res.status = 500;
      return;
    }
    FakeProvider::echo(texts, res);
  });
  EmbeddingProviderClient client(options_for(fake, 8));
  const auto v = fetch_embeddings(client, {"abc"});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0][0], 3.0);
  EXPECT_EQ(client.requests_sent(), 2u);
}

TEST(Provider, PersistentServerErrorExhaustsRetries) {
  FakeProvider fake([](const auto&, auto& res) { res.status = 503; });
  EmbeddingProviderClient client(options_for(fake, 8));
  EXPECT_THROW(fetch_embeddings(client, {"abc"}), ProviderError);
  EXPECT_EQ(client.requests_sent(), 3u);
}

TEST(Provider, ClientErrorIsNotRetried) {
  FakeProvider fake([](const auto&, auto& res) { res.status = 400; });
  EmbeddingProviderClient client(options_for(fake, 8));
  EXPECT_THROW(fetch_embeddings(client, {"abc"}), ProviderError);
  EXPECT_EQ(client.requests_sent(), 1u);
}

TEST(Provider, SlowProviderTimesOut) {
  FakeProvider fake([](const auto& texts, auto& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(400));
    FakeProvider::echo(texts, res);
  });
  auto opts = options_for(fake, 8);
  opts.timeout = std::chrono::milliseconds(100);
  opts.retries = 1;
  EmbeddingProviderClient client(opts);
  EXPECT_THROW(fetch_embeddings(client, {"abc"}), TimeoutError);
}

TEST(Provider, UnreachableEndpointIsAProviderError) {
  ProviderOptions o;
  o.endpoint = "http://127.0.0.1:1";
  o.retries = 0;
  o.timeout = std::chrono::milliseconds(200);
  EmbeddingProviderClient client(o);
  EXPECT_THROW(fetch_embeddings(client, {"abc"}), ProviderError);
}
