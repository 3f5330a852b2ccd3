// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fakecheck/corpus.hpp"
#include "fakecheck/matrix.hpp"
#include "fakecheck/timeutil.hpp"

namespace fakecheck::features {

// Feature families, declared in canonical concatenation order.
enum class Family { TextEmbd, TweetText, TweetUser, FactVer, Bias };

inline constexpr std::array<Family, 5> kCanonicalOrder = {Family::TextEmbd, Family::TweetText, Family::TweetUser,
                                                          Family::FactVer, Family::Bias};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
// Deduplicated, in canonical order. Accepts "TextEmbd+tweetuser" or a list.
std::vector<Family> parse_families(const std::vector<std::string>& names);
std::vector<Family> parse_families(std::string_view plus_joined);
std::string join_families(std::span<const Family> families);

struct TextFeatures {
  std::uint64_t retweet_count = 0;
  std::uint64_t favourite_count = 0;
  std::uint64_t n_upper = 0;
  std::uint64_t n_question = 0;
  std::uint64_t n_exclaim = 0;

  static constexpr std::size_t kSize = 5;
  static const std::array<std::string_view, kSize>& names();
  std::array<double, kSize> values() const;
};

// The 19 profile features, in their fixed serialization order.
struct UserFeatures {
  std::uint64_t chars_in_desc = 0;
  std::uint64_t chars_in_real_name = 0;
  std::uint64_t chars_in_user_handle = 0;
  std::uint64_t num_matches = 0;
  std::uint64_t total_urls_in_desc = 0;
  int official_url_exists = 0;
  std::uint64_t followers_count = 0;
  std::uint64_t friends_count = 0;
  std::uint64_t listed_count = 0;
  std::uint64_t favourites_count = 0;
  int geo_enabled = 0;
  long long acc_life = 0;
  int verified = 0;
  std::uint64_t num_tweet = 0;
  int is_protected = 0;
  double posting_frequency = 0.0;
  long long activity = 0;
  double avg_likes_per_tweet = 0.0;
  double follower_friends_ratio = 0.0;

  static constexpr std::size_t kSize = 19;
  static const std::array<std::string_view, kSize>& names();
  std::array<double, kSize> values() const;
};

// Counts are taken on the raw text, before any case folding.
TextFeatures extract_text_features(std::string_view raw_text, std::uint64_t retweet_count,
                                   std::uint64_t favourite_count);
TextFeatures extract_text_features(const corpus::TweetRecord& rec);

// Size of the multiset intersection of case-folded alphanumeric characters.
std::uint64_t character_matches(std::string_view a, std::string_view b);

// Throws ValidationError if `as_of` precedes the account creation time.
UserFeatures extract_user_features(const corpus::UserProfile& profile, Timestamp as_of);

// Ordered feature names plus the families they came from.
class Layout {
 public:
  Layout() = default;
  Layout(std::vector<Family> families, std::size_t embedding_dim);

  // Unnamed columns x0..x{width-1}, no families. For matrices that do not
  // come from the feature pipeline.
  static Layout raw(std::size_t width);

  const std::vector<Family>& families() const noexcept { return families_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  std::size_t embedding_dim() const noexcept { return embedding_dim_; }
  const std::string& hash() const noexcept { return hash_; }
  bool has(Family f) const;

  bool operator==(const Layout& other) const { return hash_ == other.hash_; }

 private:
  std::vector<Family> families_;
  std::size_t embedding_dim_ = 0;
  std::vector<std::string> names_;
  std::string hash_;
};

struct FeatureVector {
  std::shared_ptr<const Layout> layout;
  std::vector<double> values;
};

// Per-family inputs; absent members mean the family is unavailable.
struct FeatureParts {
  std::optional<std::vector<double>> embedding;
  std::optional<TextFeatures> text;
  std::optional<UserFeatures> user;
  std::optional<double> factver;
  std::optional<double> bias;
};

// Concatenates the requested families in canonical order. Throws
// FamilyUnavailableError for a missing part and ValidationError on NaN/inf.
FeatureVector assemble_feature_vector(const FeatureParts& parts, const std::vector<Family>& families);
FeatureVector assemble_feature_vector(const FeatureParts& parts, std::shared_ptr<const Layout> layout);

// z-score per column, population standard deviation.
class Scaler {
 public:
  Scaler() = default;

  static Scaler fit(const Matrix& train);

  std::size_t size() const noexcept { return mean_.size(); }
  const std::vector<double>& mean() const noexcept { return mean_; }
  const std::vector<double>& stddev() const noexcept { return stddev_; }
  // Columns with zero spread pass through unscaled.
  const std::vector<bool>& constant() const noexcept { return constant_; }

  void apply_inplace(std::span<double> row) const;
  std::vector<double> apply(std::span<const double> row) const;
  FeatureVector apply(const FeatureVector& v) const;
  Matrix apply(const Matrix& m) const;

  nlohmann::json to_json() const;
  static Scaler from_json(const nlohmann::json& j);

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
  std::vector<bool> constant_;
};

struct CorrelationEntry {
  std::string feature;
  double coefficient = 0.0;
  bool constant = false;
};

struct CorrelationReport {
  std::vector<CorrelationEntry> entries;
  // Two columns, tab separated, header "feature\tcoefficient".
  std::string to_table() const;
};

// Point-biserial (Pearson against the 0/1 label) coefficient per column.
CorrelationReport feature_label_correlation(const Matrix& matrix, std::span<const int> labels,
                                            std::span<const std::string> names);

// One JSON object per row: {id, layout_hash, values}.
void write_feature_rows(std::ostream& out, std::span<const std::string> ids, const Layout& layout, const Matrix& m);

}  // namespace fakecheck::features
