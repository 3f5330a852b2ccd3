// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

// Command-line entry point. Every subcommand reads its settings from an
// optional `--config` key=value file, then FAKECHECK_* environment variables,
// then command-line flags (highest precedence).

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fakecheck/biaser.hpp"
#include "fakecheck/classifiers.hpp"
#include "fakecheck/corpus.hpp"
#include "fakecheck/embeddings.hpp"
#include "fakecheck/error.hpp"
#include "fakecheck/factver.hpp"
#include "fakecheck/features.hpp"
#include "fakecheck/harness.hpp"
#include "fakecheck/hash.hpp"
#include "fakecheck/kvconfig.hpp"
#include "fakecheck/service.hpp"
#include "fakecheck/synthetic.hpp"
#include "fakecheck/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace fakecheck;

namespace {

constexpr const char* kEnvPrefix = "FAKECHECK_";

// Flag values collected by CLI11; empty means "not given".
struct Settings {
  std::string config;
  std::map<std::string, std::string> flags;

  // Registers `--name` as an override for config key `key`.
  void add(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        "--" + name, [this, key](const std::string& v) { flags[key] = v; }, help);
  }

  KeyValueConfig resolve(const std::vector<std::string>& keys) const {
    KeyValueConfig kv = config.empty() ? KeyValueConfig{} : KeyValueConfig::load(config);
    kv.apply_env_overrides(kEnvPrefix, keys);
    for (const auto& [k, v] : flags) kv.set(k, v);
    return kv;
  }
};

std::vector<std::string> resource_keys() {
  return {"data", "embeddings", "bias_model", "index", "allowlist", "out", "report", "log", "model"};
}

std::vector<std::string> merge(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Owns whatever resource files the configuration names.
struct LoadedResources {
  std::optional<embeddings::EmbeddingStore> store;
  std::optional<biaser::BiasModel> bias;
  std::optional<factver::TrustedIndex> index;
  std::unique_ptr<factver::IndexSearchBackend> search;

  static std::unique_ptr<LoadedResources> load(const KeyValueConfig& kv) {
    auto r = std::make_unique<LoadedResources>();
    if (auto p = kv.get("embeddings"); p && !p->empty()) r->store = embeddings::load_embeddings(*p);
    if (auto p = kv.get("bias_model"); p && !p->empty()) r->bias = biaser::load_bias_model(*p);
    if (auto p = kv.get("index"); p && !p->empty()) {
      r->index = factver::load_index(*p, kv.require("allowlist"));
      r->search = std::make_unique<factver::IndexSearchBackend>(*r->index);
    }
    return r;
  }

  harness::Resources view() const {
    harness::Resources res;
    res.store = store ? &*store : nullptr;
    res.bias = bias ? &*bias : nullptr;
    res.search = search.get();
    res.search_fingerprint = index ? index->fingerprint() : "";
    return res;
  }
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_synth(const KeyValueConfig& kv) {
  synthetic::Options o;
  o.seed = static_cast<std::uint64_t>(kv.get_int("seed", static_cast<std::int64_t>(o.seed)));
  o.per_language = static_cast<std::size_t>(kv.get_int("per_language", static_cast<std::int64_t>(o.per_language)));
  o.dim = static_cast<std::size_t>(kv.get_int("dim", static_cast<std::int64_t>(o.dim)));
  o.signal_dims = std::min(o.signal_dims, o.dim);
  const auto bundle = synthetic::generate(o);
  const std::string dir = kv.require("out");
  synthetic::write_bundle(bundle, dir);
  std::cout << corpus::format_tallies(bundle.dataset);
  std::cout << "as_of = " << format_timestamp(bundle.as_of) << "\n";
  return 0;
}

int cmd_ingest(const KeyValueConfig& kv) {
  corpus::LoadOptions load;
  load.schema_version = static_cast<int>(kv.get_int("schema", corpus::kSchemaVersion));
  if (kv.has("langs")) {
    const auto langs = kv.get_list("langs");
    load.languages = {langs.begin(), langs.end()};
  }
  const std::string in = kv.require("in");
  corpus::Dataset ds;
  if (kv.get_bool("csv", false)) {
    std::ifstream f(in);
    if (!f) throw IoError("cannot read " + in);
    corpus::CsvOptions csv;
    csv.load = load;
    if (auto l = kv.get("lang"); l && !l->empty()) csv.default_lang = *l;
    ds = corpus::convert_csv(f, csv);
  } else {
    ds = corpus::load_dataset(in, load);
  }
  if (auto out = kv.get("out"); out && !out->empty()) corpus::save_dataset(*out, ds);
  std::cout << corpus::format_tallies(ds);
  return 0;
}

int cmd_features(const KeyValueConfig& kv) {
  const auto ds = corpus::load_dataset(kv.require("data"));
  const auto res_owner = LoadedResources::load(kv);
  auto res = res_owner->view();
  const auto families = features::parse_families(std::string_view(kv.get_or("features", "tweettext+tweetuser")));
  if (auto t = kv.get("as_of")) res.as_of = parse_timestamp(*t);
  res.factver_k = static_cast<std::size_t>(kv.get_int("k", factver::kDefaultK));
  const features::Layout layout(families, res.store ? res.store->dim() : 0);
  const Matrix m = harness::feature_matrix(ds, layout, res);
  std::vector<std::string> ids;
  for (const auto& r : ds.records()) ids.push_back(r.id);
  if (auto out = kv.get("out"); out && !out->empty()) {
    auto f = open_out(*out);
    features::write_feature_rows(f, ids, layout, m);
  }
  if (auto corr = kv.get("correlation")) {
    std::vector<int> y;
    for (const auto& r : ds.records()) y.push_back(r.label);
    const auto report = features::feature_label_correlation(m, y, layout.names());
    if (corr->empty() || *corr == "-") std::cout << report.to_table();
    else write_file(*corr, report.to_table());
  }
  std::cout << "rows=" << m.rows() << " width=" << m.cols() << " layout_hash=" << layout.hash() << "\n";
  return 0;
}

int cmd_factver(const KeyValueConfig& kv) {
  const auto index = factver::load_index(kv.require("index"), kv.require("allowlist"));
  const auto k = static_cast<std::size_t>(kv.get_int("k", factver::kDefaultK));
  auto emit = [&](const std::string& id, const std::string& text) {
    const auto s = factver::factver_score(text, index, k);
    json j = {{"score", s.score}, {"k_used", s.k_used}, {"matched_titles", s.matched_titles}};
    if (!id.empty()) j["id"] = id;
    std::cout << j.dump() << "\n";
  };
  if (auto t = kv.get("text")) {
    emit("", *t);
  } else {
    for (const auto& r : corpus::load_dataset(kv.require("data")).records()) emit(r.id, r.text);
  }
  std::cerr << "index: " << index.documents().size() << " documents kept, " << index.dropped() << " dropped\n";
  return 0;
}

int cmd_bias_train(const KeyValueConfig& kv) {
  biaser::BiasConfig cfg;
  cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 0));
  cfg.lambda = kv.get_double("lambda", cfg.lambda);
  cfg.epochs = static_cast<int>(kv.get_int("epochs", cfg.epochs));
  const auto model = biaser::train_bias_model(biaser::load_bias_corpus(kv.require("corpus")), cfg);
  biaser::save_bias_model(model, kv.require("out"));
  std::cout << "vocabulary=" << model.vocabulary_size() << " config_hash=" << cfg.hash() << "\n";
  return 0;
}

int cmd_bias_score(const KeyValueConfig& kv) {
  std::optional<biaser::BiasModel> model;
  if (auto p = kv.get("model"); p && !p->empty()) model = biaser::load_bias_model(*p);
  auto score = [&](const std::string& t) { return model ? biaser::bias_score(*model, t) : biaser::kNeutralScore; };
  if (auto t = kv.get("text")) {
    std::cout << json{{"bias_score", score(*t)}}.dump() << "\n";
  } else {
    std::string line;
    while (std::getline(std::cin, line)) std::cout << json{{"text", line}, {"bias_score", score(line)}}.dump() << "\n";
  }
  return 0;
}

int cmd_train(const KeyValueConfig& kv) {
  const auto cfg = harness::ExperimentConfig::from_kv(kv);
  const auto ds = corpus::load_dataset(kv.require("data"));
  const auto res = LoadedResources::load(kv);
  harness::RunArtifacts artifacts;
  const auto report = harness::run_experiment(cfg, ds, res->view(), &artifacts);
  classifiers::save_model(artifacts.model, kv.require("out"));
  if (auto p = kv.get("log"); p && !p->empty()) {
    auto f = open_out(*p);
    classifiers::write_training_log(f, artifacts.log);
  }
  if (auto p = kv.get("report"); p && !p->empty()) {
    auto f = open_out(*p);
    harness::write_reports(f, std::span(&report, 1));
  }
  std::cout << harness::render_table(std::span(&report, 1), false);
  return 0;
}

int cmd_evaluate(const KeyValueConfig& kv) {
  const auto ds = corpus::load_dataset(kv.require("data"));
  const auto res = LoadedResources::load(kv);
  std::vector<harness::ExperimentReport> reports;
  if (auto model_path = kv.get("model"); model_path && !model_path->empty()) {
    // Score a saved model on every record (optionally restricted by language).
    const auto model = classifiers::load_model(*model_path);
    auto view = res->view();
    const auto& meta = model.metadata();
    if (auto t = kv.get("as_of")) view.as_of = parse_timestamp(*t);
    else if (meta.contains("as_of")) view.as_of = parse_timestamp(meta["as_of"].get<std::string>());
    view.factver_k = meta.value("factver_k", factver::kDefaultK);
    corpus::Dataset scope = ds;
    if (kv.has("test_langs")) {
      const auto langs = kv.get_list("test_langs");
      scope = ds.filter_languages({langs.begin(), langs.end()});
    }
    Matrix x = harness::feature_matrix(scope, model.layout(), view);
    if (model.scaler()) x = model.scaler()->apply(x);
    std::vector<int> pred, gold;
    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> by_lang;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      pred.push_back(classifiers::predicted_label(model.predict_proba(x.row(i))));
      gold.push_back(scope[i].label);
      by_lang[scope[i].lang].first.push_back(pred.back());
      by_lang[scope[i].lang].second.push_back(gold.back());
    }
    harness::ExperimentReport r;
    r.name = kv.get_or("name", "evaluate");
    std::vector<std::string> fams;
    for (auto f : model.layout().families()) fams.emplace_back(features::family_name(f));
    std::set<std::string> langs;
    for (const auto& [l, _] : by_lang) langs.insert(l);
    r.config = {{"mode", "saved_model"},
                {"features", fams},
                {"classifier", model.config()},
                {"train_langs", meta.value("train_langs", std::set<std::string>{})},
                {"test_langs", langs}};
    r.metrics = harness::compute_metrics(pred, gold);
    for (const auto& [l, pg] : by_lang) r.per_language[l] = harness::compute_metrics(pg.first, pg.second);
    for (const auto& rec : scope.records()) r.test_ids.push_back(rec.id);
    r.dataset_digest = harness::dataset_digest(scope);
    r.model_fingerprint = model.fingerprint();
    r.fingerprint = Fnv1a{}.field(r.model_fingerprint).field(r.dataset_digest).hex();
    reports.push_back(std::move(r));
  } else {
    reports.push_back(harness::run_experiment(harness::ExperimentConfig::from_kv(kv), ds, res->view()));
  }
  if (auto p = kv.get("report"); p && !p->empty()) {
    auto f = open_out(*p);
    harness::write_reports(f, reports);
  }
  std::cout << harness::render_table(reports, false);
  return 0;
}

int cmd_sweep(const KeyValueConfig& kv) {
  const auto cfg = harness::ExperimentConfig::from_kv(kv);
  if (cfg.sweep_seeds.empty()) throw ConfigError("key 'seeds' lists no seeds");
  const auto ds = corpus::load_dataset(kv.require("data"));
  const auto res = LoadedResources::load(kv);
  const auto result = harness::seed_sweep(cfg, ds, res->view(), cfg.sweep_seeds);
  if (auto p = kv.get("report"); p && !p->empty()) {
    auto f = open_out(*p);
    harness::write_reports(f, result.reports);
  }
  std::cout << result.summary_json().dump(2) << "\n";
  return result.reports.empty() ? 1 : 0;
}

service::PipelineConfig pipeline_config(const KeyValueConfig& kv) { return service::PipelineConfig::from_kv(kv); }

int cmd_predict(const KeyValueConfig& kv) {
  const auto pipeline = service::Pipeline::load(pipeline_config(kv));
  service::Request req;
  req.text = kv.require("text");
  if (auto v = kv.get("id")) req.id = *v;
  if (auto v = kv.get("lang")) req.lang = *v;
  if (auto v = kv.get("user"); v && !v->empty()) {
    std::ifstream f(*v);
    if (!f) throw IoError("cannot read " + *v);
    std::stringstream buf;
    buf << f.rdbuf();
    req.user = corpus::parse_user_profile(buf.str());
  }
  std::cout << pipeline.classify(req).to_json().dump(2) << "\n";
  return 0;
}

service::Server* g_server = nullptr;

int cmd_serve(const KeyValueConfig& kv) {
  auto pipeline = std::make_shared<const service::Pipeline>(service::Pipeline::load(pipeline_config(kv)));
  auto options = service::ServerOptions::from_kv(kv);
  options.log = &std::cerr;
  service::Server server(pipeline, options);
  const int port = server.bind();
  std::cerr << json{{"event", "listening"}, {"host", options.host}, {"port", port},
                    {"model_fingerprint", pipeline->model_fingerprint()}}.dump()
            << std::endl;
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  server.run();
  g_server = nullptr;
  return 0;
}

int cmd_report(const KeyValueConfig& kv) {
  kv.require("in");
  std::vector<harness::ExperimentReport> reports;
  for (const auto& in : kv.get_list("in")) {
    std::ifstream f(in);
    if (!f) throw IoError("cannot read " + in);
    auto part = harness::read_reports(f);
    reports.insert(reports.end(), part.begin(), part.end());
  }
  if (kv.get_bool("table", true)) {
    std::cout << harness::render_table(reports, kv.get_bool("reference", false));
  } else {
    for (const auto& r : reports) std::cout << r.to_json().dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fakecheck: multilingual fake-tweet detection"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Settings>> all;
  struct Command {
    CLI::App* app;
    Settings* settings;
    std::vector<std::string> keys;
    int (*run)(const KeyValueConfig&);
  };
  std::vector<Command> commands;

  auto make = [&](CLI::App* parent, const std::string& name, const std::string& help, std::vector<std::string> keys,
                  int (*run)(const KeyValueConfig&)) -> Command& {
    auto* sub = parent->add_subcommand(name, help);
    all.push_back(std::make_unique<Settings>());
    auto* s = all.back().get();
    sub->add_option("--config", s->config, "key=value configuration file")->check(CLI::ExistingFile);
    commands.push_back({sub, s, std::move(keys), run});
    return commands.back();
  };

  {
    auto& c = make(&app, "synth", "Write the synthetic trilingual fixture", {"out", "seed", "per_language", "dim"},
                   cmd_synth);
    c.settings->add(c.app, "out", "out", "output directory");
    c.settings->add(c.app, "seed", "seed", "generator seed");
    c.settings->add(c.app, "per-language", "per_language", "records per language");
    c.settings->add(c.app, "dim", "dim", "embedding width");
  }
  {
    auto& c = make(&app, "ingest", "Validate a dataset (or convert the released CSV) and print tallies",
                   {"in", "out", "csv", "lang", "langs", "schema"}, cmd_ingest);
    c.settings->add(c.app, "in", "in", "input file");
    c.settings->add(c.app, "out", "out", "write canonical line-delimited records here");
    c.app->add_flag_callback("--csv", [s = c.settings] { s->flags["csv"] = "true"; }, "input is the released CSV");
    c.settings->add(c.app, "lang", "lang", "language for CSV rows without a lang column");
    c.settings->add(c.app, "langs", "langs", "accepted language tags (comma-separated)");
    c.settings->add(c.app, "schema", "schema", "expected schema version");
  }
  {
    auto& c = make(&app, "features", "Extract a feature matrix and optional correlation report",
                   merge(resource_keys(), {"features", "as_of", "k", "correlation"}), cmd_features);
    for (auto k : {"data", "embeddings", "bias-model", "index", "allowlist", "features", "as-of", "k", "out",
                   "correlation"}) {
      std::string key = k;
      std::replace(key.begin(), key.end(), '-', '_');
      c.settings->add(c.app, k, key, key);
    }
  }
  {
    auto& c = make(&app, "factver", "Score texts against a trusted index",
                   {"index", "allowlist", "k", "text", "data"}, cmd_factver);
    for (auto k : {"index", "allowlist", "k", "text", "data"}) c.settings->add(c.app, k, k, k);
  }
  {
    auto* bias = app.add_subcommand("bias", "Offensive-language scorer");
    bias->require_subcommand(1);
    auto& t = make(bias, "train", "Train from a label<TAB>text corpus", {"corpus", "out", "seed", "lambda", "epochs"},
                   cmd_bias_train);
    for (auto k : {"corpus", "out", "seed", "lambda", "epochs"}) t.settings->add(t.app, k, k, k);
    auto& s = make(bias, "score", "Score --text or stdin lines", {"model", "text"}, cmd_bias_score);
    for (auto k : {"model", "text"}) s.settings->add(s.app, k, k, k);
  }
  const auto experiment_keys = merge(resource_keys(), harness::ExperimentConfig::known_keys());
  auto add_experiment_flags = [](Command& c) {
    for (auto k : {"data", "embeddings", "bias-model", "index", "allowlist", "out", "report", "log", "name",
                   "train-langs", "test-langs", "features", "classifier", "mode", "train-fraction", "seed", "seeds",
                   "as-of"}) {
      std::string key = k;
      std::replace(key.begin(), key.end(), '-', '_');
      c.settings->add(c.app, k, key, key);
    }
  };
  {
    auto& c = make(&app, "train", "Run one experiment and save the trained model", experiment_keys, cmd_train);
    add_experiment_flags(c);
  }
  {
    auto& c = make(&app, "evaluate", "Evaluate a saved --model on a dataset, or run an experiment",
                   merge(experiment_keys, {"model"}), cmd_evaluate);
    add_experiment_flags(c);
    c.settings->add(c.app, "model", "model", "saved model file");
  }
  {
    auto& c = make(&app, "sweep", "Run an experiment for every seed in `seeds`", experiment_keys, cmd_sweep);
    add_experiment_flags(c);
  }
  {
    auto& c = make(&app, "predict", "Classify one text with a saved model",
                   merge(service::config_keys(), {"text", "id", "lang", "user"}), cmd_predict);
    for (auto k : {"model", "embeddings", "bias-model", "index", "allowlist", "as-of", "text", "id", "lang", "user"}) {
      std::string key = k;
      std::replace(key.begin(), key.end(), '-', '_');
      c.settings->add(c.app, k, key, key);
    }
    c.settings->add(c.app, "provider", "provider.endpoint", "embedding provider URL");
  }
  {
    auto& c = make(&app, "serve", "Run the HTTP prediction service", service::config_keys(), cmd_serve);
    for (auto k : {"model", "embeddings", "bias-model", "index", "allowlist", "as-of", "host", "port", "static-dir",
                   "threads"}) {
      std::string key = k;
      std::replace(key.begin(), key.end(), '-', '_');
      c.settings->add(c.app, k, key, key);
    }
    c.settings->add(c.app, "provider", "provider.endpoint", "embedding provider URL");
  }
  {
    auto& c = make(&app, "report", "Render report files", {"in", "table", "reference"}, cmd_report);
    c.settings->add(c.app, "in", "in", "report files, comma-separated (line-delimited JSON)");
    c.app->add_flag_callback("--table", [s = c.settings] { s->flags["table"] = "true"; }, "render a grid (default)");
    c.app->add_flag_callback("--json", [s = c.settings] { s->flags["table"] = "false"; }, "print the raw reports");
    c.app->add_flag_callback("--reference", [s = c.settings] { s->flags["reference"] = "true"; },
                             "append reference rows of the original system");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.run(c.settings->resolve(c.keys));
    } catch (const ConfigError& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
