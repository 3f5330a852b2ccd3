// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/biaser.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fakecheck/corpus.hpp"
#include "fakecheck/error.hpp"
#include "fakecheck/hash.hpp"
#include "fakecheck/random.hpp"
#include "fakecheck/text.hpp"

namespace fakecheck::biaser {

using json = nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;
constexpr double kProbabilityFloor = 1e-15;

json config_to_json(const BiasConfig& c) {
  return {{"word_ngram_min", c.word_ngram_min}, {"word_ngram_max", c.word_ngram_max},
          {"char_ngram_min", c.char_ngram_min}, {"char_ngram_max", c.char_ngram_max},
          {"lambda", c.lambda},                 {"epochs", c.epochs},
          {"seed", c.seed}};
}

BiasConfig config_from_json(const json& j) {
  BiasConfig c;
  c.word_ngram_min = j.at("word_ngram_min").get<int>();
  c.word_ngram_max = j.at("word_ngram_max").get<int>();
  c.char_ngram_min = j.at("char_ngram_min").get<int>();
  c.char_ngram_max = j.at("char_ngram_max").get<int>();
  c.lambda = j.at("lambda").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

double dot(const std::vector<double>& w, const SparseVector& x) {
  double s = 0.0;
  for (const auto& [col, v] : x) s += w[col] * v;
  return s;
}

}  // namespace

std::string BiasConfig::hash() const { return fnv1a_hex(config_to_json(*this).dump()); }

std::map<std::string, double> extract_ngrams(std::string_view raw_text, const BiasConfig& cfg) {
  std::map<std::string, double> grams;
  const std::string clean = corpus::preprocess_text(raw_text);
  const auto tokens = text::split_whitespace(clean);
  for (int n = cfg.word_ngram_min; n <= cfg.word_ngram_max; ++n) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
      std::string g = "w:";
      for (int k = 0; k < n; ++k) {
        if (k) g += ' ';
        g += tokens[i + static_cast<std::size_t>(k)];
      }
      grams[g] += 1.0;
    }
  }
  const auto cps = text::decode(clean);
  for (int n = cfg.char_ngram_min; n <= cfg.char_ngram_max; ++n) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= cps.size(); ++i) {
      grams["c:" + text::encode(std::u32string_view(cps).substr(i, static_cast<std::size_t>(n)))] += 1.0;
    }
  }
  return grams;
}

SparseVector BiasModel::vectorize(std::string_view raw_text) const {
  SparseVector x;
  for (const auto& [gram, count] : extract_ngrams(raw_text, config_)) {
    if (auto it = vocabulary_.find(gram); it != vocabulary_.end()) x.emplace_back(it->second, count * idf_[it->second]);
  }
  std::sort(x.begin(), x.end());
  return x;
}

double BiasModel::margin(const SparseVector& x) const { return dot(weights_, x) + intercept_; }

double BiasModel::probability(const SparseVector& x) const {
  return std::clamp(platt_.probability(margin(x)), kProbabilityFloor, 1.0 - kProbabilityFloor);
}

std::string BiasModel::serialize() const {
  std::vector<std::string> vocab(vocabulary_.size());
  for (const auto& [gram, col] : vocabulary_) vocab[col] = gram;
  json j = {{"format", "fakecheck.bias"},
            {"format_version", kFormatVersion},
            {"config", config_to_json(config_)},
            {"config_hash", config_.hash()},
            {"vocabulary", vocab},
            {"idf", idf_},
            {"weights", weights_},
            {"intercept", intercept_},
            {"platt", {{"a", platt_.a}, {"b", platt_.b}}}};
  return j.dump() + "\n";
}

BiasModel BiasModel::deserialize(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw CorruptFileError(std::string("bias model is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "fakecheck.bias") throw CorruptFileError("not a bias model file");
    const int version = j.at("format_version").get<int>();
    if (version != kFormatVersion) {
      throw VersionError("bias model format version " + std::to_string(version) + " is not supported (expected " +
                         std::to_string(kFormatVersion) + ")");
    }
    BiasModel m;
    m.config_ = config_from_json(j.at("config"));
    const auto vocab = j.at("vocabulary").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < vocab.size(); ++i) m.vocabulary_.emplace(vocab[i], static_cast<std::uint32_t>(i));
    m.idf_ = j.at("idf").get<std::vector<double>>();
    m.weights_ = j.at("weights").get<std::vector<double>>();
    m.intercept_ = j.at("intercept").get<double>();
    m.platt_.a = j.at("platt").at("a").get<double>();
    m.platt_.b = j.at("platt").at("b").get<double>();
    if (m.vocabulary_.size() != vocab.size() || m.idf_.size() != vocab.size() || m.weights_.size() != vocab.size()) {
      throw CorruptFileError("bias model arrays disagree in length");
    }
    return m;
  } catch (const json::exception& e) {
    throw CorruptFileError(std::string("bias model is incomplete: ") + e.what());
  }
}

BiasModel train_bias_model(const std::vector<std::pair<std::string, int>>& corpus, const BiasConfig& cfg) {
  std::size_t pos = 0, neg = 0;
  for (const auto& [text, label] : corpus) {
    if (label == 1) {
      ++pos;
    } else if (label == 0) {
      ++neg;
    } else {
      throw ValidationError("bias corpus labels must be 0 or 1");
    }
  }
  if (pos == 0 || neg == 0) throw ValidationError("bias corpus needs at least one example of each class");
  if (cfg.lambda <= 0.0 || cfg.epochs < 1) throw ConfigError("bias training needs lambda > 0 and epochs >= 1");

  BiasModel model;
  model.config_ = cfg;

  std::vector<std::map<std::string, double>> docs;
  docs.reserve(corpus.size());
  std::map<std::string, std::size_t> df;
  for (const auto& [text, label] : corpus) {
    docs.push_back(extract_ngrams(text, cfg));
    for (const auto& [gram, count] : docs.back()) ++df[gram];
  }
  const double n_docs = static_cast<double>(corpus.size());
  for (const auto& [gram, count] : df) {
    const auto col = static_cast<std::uint32_t>(model.vocabulary_.size());
    model.vocabulary_.emplace(gram, col);
    model.idf_.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
  }

  // The last column is a constant 1 that carries the intercept.
  const std::size_t dim = model.vocabulary_.size() + 1;
  const auto bias_col = static_cast<std::uint32_t>(dim - 1);
  std::vector<SparseVector> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    SparseVector x;
    for (const auto& [gram, count] : docs[i]) {
      const auto col = model.vocabulary_.at(gram);
      x.emplace_back(col, count * model.idf_[col]);
    }
    std::sort(x.begin(), x.end());
    x.emplace_back(bias_col, 1.0);
    xs.push_back(std::move(x));
    ys.push_back(corpus[i].second == 1 ? 1.0 : -1.0);
  }

  // w = scale * v keeps the shrink step O(1).
  std::vector<double> v(dim, 0.0);
  double scale = 1.0;
  double v_norm2 = 0.0;
  const double lambda = cfg.lambda;
  const double radius = 1.0 / std::sqrt(lambda);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(xs.size());
  std::size_t t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double m = ys[i] * scale * dot(v, xs[i]);
      const double shrink = 1.0 - eta * lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
        v_norm2 = 0.0;
      } else {
        scale *= shrink;
      }
      if (m < 1.0) {
        const double alpha = eta * ys[i] / scale;
        double vx = 0.0, xx = 0.0;
        for (const auto& [col, val] : xs[i]) {
          vx += v[col] * val;
          xx += val * val;
        }
        for (const auto& [col, val] : xs[i]) v[col] += alpha * val;
        v_norm2 += 2.0 * alpha * vx + alpha * alpha * xx;
      }
      const double w_norm = std::abs(scale) * std::sqrt(std::max(v_norm2, 0.0));
      if (w_norm > radius) scale *= radius / w_norm;
      if (std::abs(scale) < 1e-9) {
        for (auto& x : v) x *= scale;
        v_norm2 *= scale * scale;
        scale = 1.0;
      }
    }
  }
  model.weights_.assign(dim - 1, 0.0);
  for (std::size_t c = 0; c + 1 < dim; ++c) model.weights_[c] = scale * v[c];
  model.intercept_ = scale * v[bias_col];

  std::vector<double> margins;
  std::vector<int> labels;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    SparseVector x(xs[i].begin(), xs[i].end() - 1);
    margins.push_back(model.margin(x));
    labels.push_back(corpus[i].second);
  }
  model.platt_ = PlattScaling::fit(margins, labels);
  return model;
}

double bias_score(const BiasModel& model, std::string_view text) { return model.probability(model.vectorize(text)); }

std::vector<std::pair<std::string, int>> load_bias_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read bias corpus: " + path.string());
  std::vector<std::pair<std::string, int>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(lineno, "", "expected `label<TAB>text`");
    const std::string label = line.substr(0, tab);
    if (label != "0" && label != "1") throw ParseError(lineno, "label", "expected 0 or 1");
    out.emplace_back(line.substr(tab + 1), label == "1" ? 1 : 0);
  }
  return out;
}

void save_bias_model(const BiasModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write bias model: " + path.string());
  out << model.serialize();
}

BiasModel load_bias_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read bias model: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return BiasModel::deserialize(buf.str());
}

}  // namespace fakecheck::biaser
