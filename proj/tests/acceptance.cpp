// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "fakecheck/biaser.hpp"
#include "fakecheck/classifiers.hpp"
#include "fakecheck/corpus.hpp"
#include "fakecheck/error.hpp"
#include "fakecheck/factver.hpp"
#include "fakecheck/features.hpp"
#include "fakecheck/harness.hpp"
#include "fakecheck/service.hpp"
#include "fakecheck/synthetic.hpp"
#include "mlp_check.hpp"
#include "oracles.hpp"

using namespace fakecheck;
using nlohmann::json;
using features::Family;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later checks still run so the detail is useful.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
    if (!ok) ++failures_;
  }
  Outcome outcome(const std::string& summary) const {
    if (pass_) return {true, summary};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed; first: " + first_failure_};
  }
  bool ok() const { return pass_; }

 private:
  bool pass_ = true;
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_failure_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream o;
  o.precision(digits);
  o << std::fixed << v;
  return o.str();
}

// ---------------------------------------------------------------------------

Outcome levenshtein_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2020);
  Checker c;
  std::vector<std::u32string> pool;
  for (int i = 0; i < 10000; ++i) {
    const auto a = oracle::random_mixed(rng, 20);
    const auto b = oracle::random_mixed(rng, 20);
    const auto got = factver::levenshtein(a, b);
    c.expect(got == oracle::levenshtein(a, b), "pair " + std::to_string(i) + " (" + oracle::utf8(a) + ", " +
                                                   oracle::utf8(b) + ")");
    pool.push_back(a);
    pool.push_back(b);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 10000; ++i) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    const auto& x = pool[pick(rng)];
    const auto ab = factver::levenshtein(a, b), ba = factver::levenshtein(b, a);
    const auto ax = factver::levenshtein(a, x), bx = factver::levenshtein(b, x);
    c.expect(ab == ba, "symmetry");
    c.expect(factver::levenshtein(a, a) == 0, "identity");
    c.expect((ab == 0) == (a == b), "zero iff equal");
    c.expect(ax <= ab + bx, "triangle inequality");
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "runtime " + fmt(secs) + " s >= 10 s");
  return c.outcome("10000 pairs match the DP oracle, 10000 triples satisfy the metric axioms, " + fmt(secs) + " s");
}

// ---------------------------------------------------------------------------

Outcome gradient_check() {
  std::mt19937_64 gen(77);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> small(1, 6);
  Checker c;
  double worst = 0.0;
  for (int cfg = 0; cfg < 50; ++cfg) {
    const bool head = cfg % 2 == 0;
    const auto inputs = static_cast<std::size_t>(small(gen));
    std::vector<std::size_t> hidden;
    if (!head) {
      const int depth = 1 + cfg % 3 % 2;
      for (int d = 0; d < depth; ++d) hidden.push_back(static_cast<std::size_t>(small(gen)));
    }
    Rng rng(static_cast<std::uint64_t>(cfg));
    auto model = classifiers::init_mlp(inputs, hidden, rng);
    // Random nonzero biases keep ReLU pre-activations away from the kink.
    for (auto& l : model.layers) {
      for (auto& b : l.bias) b = 0.5 * normal(gen);
    }
    const auto rows = static_cast<std::size_t>(small(gen));
    Matrix batch(rows, inputs);
    std::vector<int> labels;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < inputs; ++k) batch(r, k) = normal(gen);
      labels.push_back(static_cast<int>(gen() % 2));
    }
    const double err = oracle::mlp_gradient_error(model, batch, labels);
    worst = std::max(worst, err);
    c.expect(err < 1e-4, "config " + std::to_string(cfg) + " relative error " + std::to_string(err));
  }
  return c.outcome("50 configurations (25 softmax head, 25 MLP), worst relative error " + [&] {
    std::ostringstream o;
    o << std::scientific << worst;
    return o.str();
  }());
}

// ---------------------------------------------------------------------------

void to_matrix(const std::vector<oracle::Point2>& pts, Matrix& X, std::vector<int>& y) {
  for (const auto& p : pts) {
    X.append_row(std::vector<double>{p.x, p.y});
    y.push_back(p.label);
  }
}

Outcome classifier_oracle() {
  const auto train_pts = oracle::blobs(200, 2.0, 0.6, 101);
  const auto test_pts = oracle::blobs(200, 2.0, 0.6, 202);
  Checker c;
  const double margin = oracle::separation_margin(train_pts);
  c.expect(margin > 0.0, "training blobs are not linearly separable (margin " + std::to_string(margin) + ")");
  Matrix X, Xt;
  std::vector<int> y, yt;
  to_matrix(train_pts, X, y);
  to_matrix(test_pts, Xt, yt);
  std::string summary = "separating margin " + fmt(margin) + ";";
  for (auto kind : {classifiers::Kind::LinearSvm, classifiers::Kind::RandomForest, classifiers::Kind::Mlp,
                    classifiers::Kind::SoftmaxHead}) {
    const auto model = classifiers::train(classifiers::TrainConfig::defaults(kind, 5), X, y);
    std::vector<int> pred_train, pred_test;
    for (std::size_t r = 0; r < X.rows(); ++r) pred_train.push_back(classifiers::predicted_label(model.predict_proba(X.row(r))));
    for (std::size_t r = 0; r < Xt.rows(); ++r) pred_test.push_back(classifiers::predicted_label(model.predict_proba(Xt.row(r))));
    const auto mt = harness::compute_metrics(pred_train, y);
    const auto mh = harness::compute_metrics(pred_test, yt);
    const std::string name(classifiers::kind_name(kind));
    c.expect(mt.accuracy == 1.0, name + " training accuracy " + std::to_string(mt.accuracy));
    c.expect(mh.f_score >= 0.95, name + " held-out F " + std::to_string(mh.f_score));
    summary += " " + name + " train_acc=" + fmt(mt.accuracy) + " heldout_F=" + fmt(mh.f_score);
  }
  return c.outcome(summary);
}

// ---------------------------------------------------------------------------

struct World {
  synthetic::Bundle bundle;
  factver::TrustedIndex index;
  factver::IndexSearchBackend search;
  biaser::BiasModel bias;
  harness::Resources res;

  World() : bundle(synthetic::generate()), index(bundle.documents, bundle.allowlist), search(index) {
    bias = biaser::train_bias_model(bundle.bias_corpus);
    res.store = &bundle.store;
    res.bias = &bias;
    res.search = &search;
    res.as_of = bundle.as_of;
    res.search_fingerprint = index.fingerprint();
  }
};

const World& world() {
  static const World w;
  return w;
}

harness::ExperimentConfig experiment(classifiers::Kind kind, harness::Mode mode, std::set<std::string> train,
                                     std::set<std::string> test, std::vector<Family> families) {
  harness::ExperimentConfig cfg;
  cfg.name = "acceptance";
  cfg.train_langs = std::move(train);
  cfg.test_langs = std::move(test);
  cfg.families = std::move(families);
  cfg.classifier = classifiers::TrainConfig::defaults(kind);
  cfg.mode = mode;
  cfg.seed = 11;
  cfg.as_of = world().bundle.as_of;
  return cfg;
}

Outcome determinism() {
  Checker c;
  const auto& w = world();
  const std::vector<Family> all = {Family::TextEmbd, Family::TweetText, Family::TweetUser, Family::FactVer,
                                   Family::Bias};
  std::size_t paths = 0;
  for (auto kind : {classifiers::Kind::LinearSvm, classifiers::Kind::RandomForest, classifiers::Kind::Mlp,
                    classifiers::Kind::SoftmaxHead}) {
    for (auto mode : {harness::Mode::SplitWithinLangs, harness::Mode::HoldoutLanguage}) {
      const auto cfg = mode == harness::Mode::SplitWithinLangs
                           ? experiment(kind, mode, {"en", "hi", "bn"}, {"en", "hi", "bn"}, all)
                           : experiment(kind, mode, {"en", "hi"}, {"bn"}, all);
      const std::string what = std::string(classifiers::kind_name(kind)) + "/" + std::string(harness::mode_name(mode));
      harness::RunArtifacts a, b;
      const auto ra = harness::run_experiment(cfg, w.bundle.dataset, w.res, &a);
      const auto rb = harness::run_experiment(cfg, w.bundle.dataset, w.res, &b);
      c.expect(a.model.serialize() == b.model.serialize(), what + ": model bytes differ");
      c.expect(ra.to_json().dump() == rb.to_json().dump(), what + ": reports differ");

      // Evaluate path: score the saved model on the test ids twice.
      const auto reloaded = classifiers::TrainedModel::deserialize(a.model.serialize());
      c.expect(reloaded.serialize() == a.model.serialize(), what + ": reload changed the model");
      std::ostringstream sa, sb;
      for (const auto& id : ra.test_ids) {
        const auto& rec = *w.bundle.dataset.find(id);
        const auto layout = std::make_shared<const features::Layout>(a.model.layout());
        const auto raw = features::assemble_feature_vector(harness::record_parts(rec, layout->families(), w.res), layout);
        sa << a.model.predict_proba(a.model.scaler()->apply(raw))[1] << ' ';
        sb << reloaded.predict_proba(reloaded.scaler()->apply(raw))[1] << ' ';
      }
      c.expect(sa.str() == sb.str(), what + ": evaluation of the reloaded model differs");
      ++paths;
    }
  }
  const auto b1 = biaser::train_bias_model(w.bundle.bias_corpus).serialize();
  const auto b2 = biaser::train_bias_model(w.bundle.bias_corpus).serialize();
  c.expect(b1 == b2, "bias model bytes differ");

  const std::vector<std::uint64_t> seeds = {1, 2, 3};
  auto sweep_cfg = experiment(classifiers::Kind::SoftmaxHead, harness::Mode::SplitWithinLangs, {"en", "hi", "bn"},
                              {"en", "hi", "bn"}, {Family::TextEmbd});
  const auto s1 = harness::seed_sweep(sweep_cfg, w.bundle.dataset, w.res, seeds);
  const auto s2 = harness::seed_sweep(sweep_cfg, w.bundle.dataset, w.res, seeds);
  c.expect(s1.summary_json().dump() == s2.summary_json().dump(), "sweep summaries differ");
  return c.outcome(std::to_string(paths) + " train/evaluate paths, the bias model and a 3-seed sweep are byte-identical across runs");
}

// ---------------------------------------------------------------------------

Outcome metric_identities() {
  std::mt19937_64 rng(4242);
  Checker c;
  std::size_t flagged = 0;
  for (int i = 0; i < 1000; ++i) {
    // Small counts so that zero denominators come up often.
    const std::size_t hi = i % 2 ? 3 : 50;
    std::uniform_int_distribution<std::size_t> d(0, hi);
    const std::size_t tp = d(rng), fp = d(rng), fn = d(rng), tn = d(rng);
    const auto m = harness::metrics_from_counts(tp, fp, fn, tn);
    const double p = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    const double r = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    const std::string id = "(" + std::to_string(tp) + "," + std::to_string(fp) + "," + std::to_string(fn) + "," +
                           std::to_string(tn) + ")";
    c.expect(m.precision_undefined == (tp + fp == 0), "precision flag " + id);
    c.expect(m.recall_undefined == (tp + fn == 0), "recall flag " + id);
    c.expect(m.f_undefined == (p + r == 0.0), "F flag " + id);
    c.expect(std::abs(m.precision - p) <= 1e-12 && std::abs(m.recall - r) <= 1e-12, "P/R " + id);
    if (p + r > 0.0) {
      c.expect(std::abs(m.f_score - 2.0 * p * r / (p + r)) <= 1e-9, "F identity " + id);
    } else {
      c.expect(m.f_score == 0.0, "undefined F reported as 0 " + id);
    }
    flagged += m.precision_undefined || m.recall_undefined || m.f_undefined;
  }
  return c.outcome("1000 confusion matrices (" + std::to_string(flagged) + " with a zero denominator)");
}

// ---------------------------------------------------------------------------

Outcome feature_goldens() {
  Checker c;
  std::size_t n = 0;
  auto expect = [&](bool ok, const std::string& what) {
    c.expect(ok, what);
    ++n;
  };

  const auto t = features::extract_text_features("Is this REAL?? Yes!!", 5, 9);
  expect(t.n_upper == 6 && t.n_question == 2 && t.n_exclaim == 2 && t.retweet_count == 5 && t.favourite_count == 9,
         "text counts for \"Is this REAL?? Yes!!\"");
  const auto z = features::extract_text_features("", 0, 0);
  expect(z.values() == std::array<double, 5>{}, "empty text gives zeros");
  expect(features::extract_text_features("করোনা ভাইরাস", 0, 0).n_upper == 0, "Bengali has no upper case");

  corpus::UserProfile u;
  u.real_name = "Amar Azad";
  u.handle = "amarazad";
  u.created_at = parse_timestamp("2019-01-01T00:00:00Z");
  u.statuses_count = 730;
  u.followers_count = 1000;
  u.friends_count = 0;
  const auto uf = features::extract_user_features(u, parse_timestamp("2020-01-01T00:00:00Z"));
  expect(uf.num_matches == 8, "num_matches Amar Azad / amarazad");
  expect(uf.acc_life == 365, "acc_life");
  expect(uf.posting_frequency == 2.0, "posting_frequency");
  expect(uf.follower_friends_ratio == 1000.0, "follower_friends_ratio with max(friends,1)");

  const auto scaler = features::Scaler::fit(Matrix::from_rows({{0.0, 5.0}, {2.0, 5.0}, {1.0, 5.0}}));
  const auto two = features::Scaler::fit(Matrix::from_rows({{0.0}, {2.0}}));
  expect(two.apply(std::vector<double>{0.0}) == std::vector<double>{-1.0} &&
             two.apply(std::vector<double>{2.0}) == std::vector<double>{1.0},
         "scaler [0,2] -> [-1,1]");
  expect(scaler.constant()[1] && scaler.apply(std::vector<double>{1.0, 5.0})[1] == 5.0, "constant column untouched");
  bool dim_error = false;
  try {
    two.apply(std::vector<double>{1.0, 2.0});
  } catch (const DimensionError&) {
    dim_error = true;
  }
  expect(dim_error, "scaler width check");

  expect(features::Layout({Family::TextEmbd, Family::TweetUser}, 768).size() == 787, "TextEmbd+tweetuser width 787");
  expect(features::Layout({Family::TextEmbd}, 768).size() == 768, "TextEmbd width 768");

  const std::vector<int> labels = {0, 1, 0, 1, 1};
  const std::vector<std::string> names = {"same", "flip", "const"};
  Matrix corr_m;
  for (int l : labels) corr_m.append_row(std::vector<double>{double(l), 1.0 - l, 3.0});
  const auto corr = features::feature_label_correlation(corr_m, labels, names);
  expect(std::abs(corr.entries[0].coefficient - 1.0) < 1e-12, "correlation identical to label");
  expect(std::abs(corr.entries[1].coefficient + 1.0) < 1e-12, "correlation of 1-label");
  expect(corr.entries[2].constant && corr.entries[2].coefficient == 0.0, "constant feature flagged");

  expect(factver::levenshtein(std::string_view(""), std::string_view("abcd")) == 4, "lev('', abcd)");
  expect(factver::levenshtein(std::string_view("abc"), std::string_view("abc")) == 0, "lev(abc, abc)");
  expect(factver::levenshtein(std::string_view("kitten"), std::string_view("sitting")) ==
             oracle::levenshtein(U"kitten", U"sitting"),
         "lev(kitten, sitting) equals the oracle");
  expect(factver::normalized_distance("abc", "abc") == 0.0, "normalized identical");
  expect(factver::normalized_distance("", "abcd") == 1.0, "normalized all insertions");
  expect(factver::normalized_distance("", "") == 0.0, "normalized both empty");
  expect(std::abs(factver::normalized_distance("kitten", "sitting") - 3.0 / 7.0) < 1e-15, "normalized kitten");

  const factver::TrustedIndex empty_index;
  const auto empty_score = factver::factver_score("anything at all", empty_index);
  expect(empty_score.score == 1.0 && empty_score.k_used == 0, "empty index scores 1.0");
  const factver::TrustedIndex idx({{"covid vaccine approved", "https://who.int/a"},
                                   {"weather today", "https://who.int/b"},
                                   {"covid cases rise", "https://who.int/c"}},
                                  {"who.int"});
  const auto titles = factver::retrieve_titles("covid vaccine trial", idx, 2);
  expect(titles == std::vector<std::string>{"covid vaccine approved", "covid cases rise"}, "retrieval ranking");
  const factver::TrustedIndex one({{"masks stop the spread", "https://who.int/m"}}, {"who.int"});
  const auto exact = factver::factver_score("masks stop the spread", one, 10);
  expect(exact.score == 0.0 && exact.k_used == 1, "title equal to text scores 0");
  // Distances 2/10 and 6/10 from the oracle.
  const factver::TrustedIndex pair({{"aa bbbbbcc", "https://who.int/1"}, {"aa bcccccc", "https://who.int/2"}},
                                   {"who.int"});
  expect(oracle::levenshtein(U"aa bbbbbbb", U"aa bbbbbcc") == 2 && oracle::levenshtein(U"aa bbbbbbb", U"aa bcccccc") == 6,
         "oracle distances for the averaging example");
  expect(std::abs(factver::factver_score("aa bbbbbbb", pair, 10).score - 0.4) < 1e-12, "mean of 0.2 and 0.6");

  std::vector<std::pair<std::string, int>> toy;
  for (int i = 0; i < 10; ++i) {
    toy.emplace_back("you idiot", 1);
    toy.emplace_back("have a nice day", 0);
  }
  const auto bm = biaser::train_bias_model(toy);
  expect(biaser::bias_score(bm, "you idiot") > 0.5, "toy bias model scores the offensive example above 0.5");
  expect(biaser::train_bias_model(toy).serialize() == bm.serialize(), "bias training determinism");
  expect(biaser::bias_score(bm, "") == bm.calibration().probability(bm.intercept()), "empty text scores the intercept");
  bool single_class = false;
  try {
    biaser::train_bias_model({{"a", 1}, {"b", 1}});
  } catch (const ValidationError&) {
    single_class = true;
  }
  expect(single_class, "single-class bias corpus rejected");

  harness::Resources no_bias;
  corpus::TweetRecord rec;
  rec.id = "x";
  rec.text = "hello";
  rec.lang = "en";
  const auto parts = harness::record_parts(rec, {Family::Bias}, no_bias);
  expect(parts.bias && *parts.bias == biaser::kNeutralScore, "no bias model gives 0.5");

  return c.outcome(std::to_string(n) + " worked examples");
}

// ---------------------------------------------------------------------------

Outcome end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& w = world();
  Checker c;
  const std::set<std::string> langs = {"en", "hi", "bn"};
  std::vector<harness::ExperimentReport> reports;
  for (const auto& lang : langs) {
    reports.push_back(harness::run_experiment(
        experiment(classifiers::Kind::SoftmaxHead, harness::Mode::SplitWithinLangs, langs, {lang}, {Family::TextEmbd}),
        w.bundle.dataset, w.res));
    std::set<std::string> others = langs;
    others.erase(lang);
    reports.push_back(harness::run_experiment(
        experiment(classifiers::Kind::SoftmaxHead, harness::Mode::HoldoutLanguage, others, {lang}, {Family::TextEmbd}),
        w.bundle.dataset, w.res));
  }
  std::string cells;
  for (const auto& r : reports) {
    const auto& cfg = r.config;
    const std::string cell = cfg.at("mode").get<std::string>() + ":" + cfg.at("test_langs").dump();
    c.expect(r.metrics.f_score >= 0.90, cell + " F=" + std::to_string(r.metrics.f_score));
    cells += " " + cell + "=" + fmt(r.metrics.f_score);
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "matrix runtime " + fmt(secs) + " s >= 60 s");
  return c.outcome(std::to_string(reports.size()) + " cells," + cells + ", " + fmt(secs, 2) + " s");
}

// ---------------------------------------------------------------------------

Outcome service_contract() {
  const auto& w = world();
  Checker c;
  auto cfg = experiment(classifiers::Kind::SoftmaxHead, harness::Mode::SplitWithinLangs, {"en", "hi", "bn"},
                        {"en", "hi", "bn"}, {Family::TextEmbd, Family::TweetUser});
  harness::RunArtifacts art;
  harness::run_experiment(cfg, w.bundle.dataset, w.res, &art);
  auto pipeline = std::make_shared<const service::Pipeline>(
      art.model, std::make_shared<const embeddings::EmbeddingStore>(w.bundle.store), nullptr, nullptr, nullptr,
      w.bundle.as_of);

  service::ServerOptions opts;
  opts.port = 0;
  service::Server server(pipeline, opts);
  server.start();
  httplib::Client client("127.0.0.1", server.port());
  client.set_read_timeout(10, 0);

  auto health = client.Get("/health");
  c.expect(health && health->status == 200 && json::parse(health->body).at("status") == "ok", "/health");

  const auto& rec = w.bundle.dataset[0];
  json body = {{"text", rec.text}, {"id", rec.id}, {"user", json::parse(corpus::serialize_user_profile(*rec.user))}};
  auto ok = client.Post("/predict", body.dump(), "application/json");
  c.expect(ok && ok->status == 200, "/predict happy path status");
  if (ok && ok->status == 200) {
    const auto v = json::parse(ok->body);
    std::set<std::string> keys;
    for (const auto& [k, _] : v.items()) keys.insert(k);
    c.expect(keys == std::set<std::string>{"label", "p_fake", "feature_breakdown", "factver_titles", "model_fingerprint"},
             "/predict verdict fields");
    c.expect(v.at("model_fingerprint") == art.model.fingerprint(), "/predict model fingerprint");
  }

  auto malformed = client.Post("/predict", "{\"text\":", "application/json");
  c.expect(malformed && malformed->status == 400, "malformed body -> 400");
  json empty = body;
  empty["text"] = "";
  auto empty_r = client.Post("/predict", empty.dump(), "application/json");
  c.expect(empty_r && empty_r->status == 400, "empty text -> 400");
  json no_user = body;
  no_user.erase("user");
  auto no_user_r = client.Post("/predict", no_user.dump(), "application/json");
  c.expect(no_user_r && no_user_r->status == 422, "missing user -> 422");

  std::vector<std::future<std::string>> futures;
  for (int i = 0; i < 100; ++i) {
    futures.push_back(std::async(std::launch::async, [&] {
      httplib::Client cl("127.0.0.1", server.port());
      cl.set_read_timeout(10, 0);
      auto r = cl.Post("/predict", body.dump(), "application/json");
      return r && r->status == 200 ? r->body : std::string("error");
    }));
  }
  std::set<std::string> verdicts;
  for (auto& f : futures) verdicts.insert(f.get());
  c.expect(verdicts.size() == 1 && *verdicts.begin() != "error", "100 parallel requests gave " +
                                                                     std::to_string(verdicts.size()) + " distinct answers");
  server.stop();
  return c.outcome("/health, /predict 200/400/400/422, 100 parallel identical verdicts");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"levenshtein_oracle", levenshtein_oracle},
      {"gradient_check", gradient_check},
      {"classifier_oracle", classifier_oracle},
      {"determinism", determinism},
      {"metric_identities", metric_identities},
      {"feature_goldens", feature_goldens},
      {"end_to_end_smoke", end_to_end},
      {"service_contract", service_contract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
