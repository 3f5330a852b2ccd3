// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "fakecheck/error.hpp"
#include "fakecheck/hash.hpp"
#include "fakecheck/text.hpp"

namespace fakecheck::features {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::TextEmbd: return "TextEmbd";
    case Family::TweetText: return "tweettext";
    case Family::TweetUser: return "tweetuser";
    case Family::FactVer: return "FactVer";
    case Family::Bias: return "Bias";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : kCanonicalOrder) {
    if (family_name(f) == name) return f;
  }
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Family f : kCanonicalOrder) {
    std::string n(family_name(f));
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    if (n == lowered) return f;
  }
  throw ConfigError("unknown feature family '" + std::string(name) + "'");
}

std::vector<Family> parse_families(const std::vector<std::string>& names) {
  std::vector<Family> out;
  for (Family f : kCanonicalOrder) {
    for (const auto& n : names) {
      if (parse_family(n) == f) {
        out.push_back(f);
        break;
      }
    }
  }
  for (const auto& n : names) parse_family(n);  // reject unknown names
  return out;
}

std::vector<Family> parse_families(std::string_view plus_joined) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : plus_joined) {
    if (c == '+' || c == ',' || c == ' ') {
      if (!cur.empty()) names.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) names.push_back(cur);
  return parse_families(names);
}

std::string join_families(std::span<const Family> families) {
  std::string out;
  for (Family f : families) {
    if (!out.empty()) out += '+';
    out += family_name(f);
  }
  return out;
}

// ---------------------------------------------------------------------------

const std::array<std::string_view, TextFeatures::kSize>& TextFeatures::names() {
  static const std::array<std::string_view, kSize> n = {"retweet_count", "favourite_count", "n_upper", "n_question",
                                                        "n_exclaim"};
  return n;
}

std::array<double, TextFeatures::kSize> TextFeatures::values() const {
  return {static_cast<double>(retweet_count), static_cast<double>(favourite_count), static_cast<double>(n_upper),
          static_cast<double>(n_question), static_cast<double>(n_exclaim)};
}

const std::array<std::string_view, UserFeatures::kSize>& UserFeatures::names() {
  static const std::array<std::string_view, kSize> n = {
      "chars_in_desc",      "chars_in_real_name", "chars_in_user_handle", "num_matches",
      "total_urls_in_desc", "official_url_exists", "followers_count",     "friends_count",
      "listed_count",       "favourites_count",   "geo_enabled",          "acc_life",
      "verified",           "num_tweet",          "protected",            "posting_frequency",
      "activity",           "avg_likes_per_tweet", "follower_friends_ratio"};
  return n;
}

std::array<double, UserFeatures::kSize> UserFeatures::values() const {
  auto d = [](auto v) { return static_cast<double>(v); };
  return {d(chars_in_desc),    d(chars_in_real_name),  d(chars_in_user_handle), d(num_matches),
          d(total_urls_in_desc), d(official_url_exists), d(followers_count),    d(friends_count),
          d(listed_count),     d(favourites_count),    d(geo_enabled),          d(acc_life),
          d(verified),         d(num_tweet),           d(is_protected),         posting_frequency,
          d(activity),         avg_likes_per_tweet,    follower_friends_ratio};
}

TextFeatures extract_text_features(std::string_view raw_text, std::uint64_t retweet_count,
                                   std::uint64_t favourite_count) {
  TextFeatures f;
  f.retweet_count = retweet_count;
  f.favourite_count = favourite_count;
  for (char32_t cp : text::decode(raw_text)) {
    if (cp == U'?') {
      ++f.n_question;
    } else if (cp == U'!') {
      ++f.n_exclaim;
    } else if (text::is_upper(cp)) {
      ++f.n_upper;
    }
  }
  return f;
}

TextFeatures extract_text_features(const corpus::TweetRecord& rec) {
  return extract_text_features(rec.text, rec.retweet_count.value_or(0), rec.favourite_count.value_or(0));
}

std::uint64_t character_matches(std::string_view a, std::string_view b) {
  std::map<char32_t, std::uint64_t> counts;
  for (char32_t cp : text::decode(a)) {
    if (text::is_alnum(cp)) ++counts[text::fold(cp)];
  }
  std::uint64_t matches = 0;
  for (char32_t cp : text::decode(b)) {
    if (!text::is_alnum(cp)) continue;
    auto it = counts.find(text::fold(cp));
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++matches;
    }
  }
  return matches;
}

UserFeatures extract_user_features(const corpus::UserProfile& p, Timestamp as_of) {
  if (as_of < p.created_at) {
    throw ValidationError("as_of " + format_timestamp(as_of) + " precedes account creation " +
                          format_timestamp(p.created_at));
  }
  UserFeatures f;
  f.chars_in_desc = text::length(p.description);
  f.chars_in_real_name = text::length(p.real_name);
  f.chars_in_user_handle = text::length(p.handle);
  f.num_matches = character_matches(p.real_name, p.handle);
  f.total_urls_in_desc = corpus::count_urls(p.description);
  f.official_url_exists = p.official_url && !p.official_url->empty() ? 1 : 0;
  f.followers_count = p.followers_count;
  f.friends_count = p.friends_count;
  f.listed_count = p.listed_count;
  f.favourites_count = p.favourites_count;
  f.geo_enabled = p.geo_enabled ? 1 : 0;
  f.acc_life = floor_days_between(p.created_at, as_of);
  f.verified = p.verified ? 1 : 0;
  f.num_tweet = p.statuses_count;
  f.is_protected = p.is_protected ? 1 : 0;
  f.posting_frequency = static_cast<double>(f.num_tweet) / static_cast<double>(std::max<long long>(f.acc_life, 1));
  // A latest tweet after as_of counts as activity today.
  f.activity = p.latest_tweet_at ? std::max<long long>(floor_days_between(*p.latest_tweet_at, as_of), 0) : f.acc_life;
  f.avg_likes_per_tweet =
      static_cast<double>(f.favourites_count) / static_cast<double>(std::max<std::uint64_t>(f.num_tweet, 1));
  f.follower_friends_ratio =
      static_cast<double>(f.followers_count) / static_cast<double>(std::max<std::uint64_t>(f.friends_count, 1));
  return f;
}

// ---------------------------------------------------------------------------

Layout::Layout(std::vector<Family> families, std::size_t embedding_dim) : embedding_dim_(embedding_dim) {
  for (Family f : kCanonicalOrder) {
    if (std::find(families.begin(), families.end(), f) != families.end()) families_.push_back(f);
  }
  if (families_.empty()) throw ConfigError("feature layout needs at least one family");
  if (!has(Family::TextEmbd)) embedding_dim_ = 0;
  for (Family f : families_) {
    switch (f) {
      case Family::TextEmbd:
        if (embedding_dim_ == 0) throw ConfigError("TextEmbd family requires a positive embedding dimension");
        for (std::size_t i = 0; i < embedding_dim_; ++i) names_.push_back("embd_" + std::to_string(i));
        break;
      case Family::TweetText:
        for (auto n : TextFeatures::names()) names_.emplace_back(n);
        break;
      case Family::TweetUser:
        for (auto n : UserFeatures::names()) names_.emplace_back(n);
        break;
      case Family::FactVer: names_.emplace_back("factver_score"); break;
      case Family::Bias: names_.emplace_back("bias_score"); break;
    }
  }
  Fnv1a h;
  for (const auto& n : names_) h.field(n);
  hash_ = h.hex();
}

Layout Layout::raw(std::size_t width) {
  Layout l;
  for (std::size_t i = 0; i < width; ++i) l.names_.push_back("x" + std::to_string(i));
  Fnv1a h;
  for (const auto& n : l.names_) h.field(n);
  l.hash_ = h.hex();
  return l;
}

bool Layout::has(Family f) const { return std::find(families_.begin(), families_.end(), f) != families_.end(); }

FeatureVector assemble_feature_vector(const FeatureParts& parts, std::shared_ptr<const Layout> layout) {
  FeatureVector out;
  out.values.reserve(layout->size());
  auto missing = [](Family f) {
    return FamilyUnavailableError("family unavailable: " + std::string(family_name(f)));
  };
  for (Family f : layout->families()) {
    switch (f) {
      case Family::TextEmbd:
        if (!parts.embedding) throw missing(f);
        if (parts.embedding->size() != layout->embedding_dim()) {
          throw DimensionError("embedding width " + std::to_string(parts.embedding->size()) + " != layout width " +
                               std::to_string(layout->embedding_dim()));
        }
        out.values.insert(out.values.end(), parts.embedding->begin(), parts.embedding->end());
        break;
      case Family::TweetText: {
        if (!parts.text) throw missing(f);
        const auto v = parts.text->values();
        out.values.insert(out.values.end(), v.begin(), v.end());
        break;
      }
      case Family::TweetUser: {
        if (!parts.user) throw missing(f);
        const auto v = parts.user->values();
        out.values.insert(out.values.end(), v.begin(), v.end());
        break;
      }
      case Family::FactVer:
        if (!parts.factver) throw missing(f);
        out.values.push_back(*parts.factver);
        break;
      case Family::Bias:
        if (!parts.bias) throw missing(f);
        out.values.push_back(*parts.bias);
        break;
    }
  }
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (!std::isfinite(out.values[i])) {
      throw ValidationError("non-finite value in feature '" + layout->names()[i] + "'");
    }
  }
  out.layout = std::move(layout);
  return out;
}

FeatureVector assemble_feature_vector(const FeatureParts& parts, const std::vector<Family>& families) {
  const std::size_t dim = parts.embedding ? parts.embedding->size() : 0;
  const bool wants_embd = std::find(families.begin(), families.end(), Family::TextEmbd) != families.end();
  if (wants_embd && !parts.embedding) {
    throw FamilyUnavailableError("family unavailable: " + std::string(family_name(Family::TextEmbd)));
  }
  return assemble_feature_vector(parts, std::make_shared<const Layout>(families, dim));
}

// ---------------------------------------------------------------------------

Scaler Scaler::fit(const Matrix& train) {
  if (train.empty()) throw ValidationError("cannot fit a scaler on an empty matrix");
  const std::size_t n = train.rows(), d = train.cols();
  Scaler s;
  s.mean_.assign(d, 0.0);
  s.stddev_.assign(d, 0.0);
  s.constant_.assign(d, false);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) s.mean_[c] += train(r, c);
  }
  for (auto& m : s.mean_) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dev = train(r, c) - s.mean_[c];
      s.stddev_[c] += dev * dev;
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    s.stddev_[c] = std::sqrt(s.stddev_[c] / static_cast<double>(n));
    // Relative threshold: a column of identical non-representable values
    // (e.g. 0.1) still leaves rounding residue in the mean.
    if (!(s.stddev_[c] > 1e-12 * std::max(1.0, std::abs(s.mean_[c])))) s.constant_[c] = true;
  }
  return s;
}

void Scaler::apply_inplace(std::span<double> row) const {
  if (row.size() != mean_.size()) {
    throw DimensionError("scaler fitted on " + std::to_string(mean_.size()) + " features, got " +
                         std::to_string(row.size()));
  }
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (!constant_[c]) row[c] = (row[c] - mean_[c]) / stddev_[c];
  }
}

std::vector<double> Scaler::apply(std::span<const double> row) const {
  std::vector<double> out(row.begin(), row.end());
  apply_inplace(out);
  return out;
}

FeatureVector Scaler::apply(const FeatureVector& v) const { return {v.layout, apply(v.values)}; }

Matrix Scaler::apply(const Matrix& m) const {
  Matrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) apply_inplace(out.row(r));
  return out;
}

nlohmann::json Scaler::to_json() const {
  std::vector<int> flags(constant_.begin(), constant_.end());
  return {{"mean", mean_}, {"stddev", stddev_}, {"constant", flags}};
}

Scaler Scaler::from_json(const nlohmann::json& j) {
  Scaler s;
  s.mean_ = j.at("mean").get<std::vector<double>>();
  s.stddev_ = j.at("stddev").get<std::vector<double>>();
  const auto flags = j.at("constant").get<std::vector<int>>();
  s.constant_.assign(flags.begin(), flags.end());
  if (s.stddev_.size() != s.mean_.size() || s.constant_.size() != s.mean_.size()) {
    throw CorruptFileError("scaler arrays disagree in length");
  }
  return s;
}

// ---------------------------------------------------------------------------

std::string CorrelationReport::to_table() const {
  std::ostringstream out;
  out << "feature\tcoefficient\n";
  for (const auto& e : entries) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", e.coefficient);
    out << e.feature << '\t' << buf << (e.constant ? "\t(constant)" : "") << '\n';
  }
  return out.str();
}

CorrelationReport feature_label_correlation(const Matrix& matrix, std::span<const int> labels,
                                            std::span<const std::string> names) {
  const std::size_t n = matrix.rows();
  if (n != labels.size()) throw DimensionError("matrix rows and label count differ");
  if (n < 2) throw ValidationError("correlation needs at least two rows");
  if (names.size() != matrix.cols()) throw DimensionError("feature name count differs from matrix width");

  double label_mean = 0.0;
  for (int y : labels) label_mean += y;
  label_mean /= static_cast<double>(n);
  double syy = 0.0;
  for (int y : labels) syy += (y - label_mean) * (y - label_mean);
  if (!(syy > 0.0)) throw ValidationError("all labels are identical; correlation undefined");

  CorrelationReport report;
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += matrix(r, c);
    mean /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dx = matrix(r, c) - mean;
      sxx += dx * dx;
      sxy += dx * (labels[r] - label_mean);
    }
    CorrelationEntry e{names[c], 0.0, false};
    if (sxx > 0.0) {
      e.coefficient = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    } else {
      e.constant = true;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

void write_feature_rows(std::ostream& out, std::span<const std::string> ids, const Layout& layout, const Matrix& m) {
  if (ids.size() != m.rows()) throw DimensionError("id count differs from matrix rows");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    nlohmann::json j = {{"id", ids[r]}, {"layout_hash", layout.hash()},
                        {"values", std::vector<double>(row.begin(), row.end())}};
    out << j.dump() << '\n';
  }
}

}  // namespace fakecheck::features
