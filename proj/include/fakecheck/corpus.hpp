// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fakecheck/timeutil.hpp"

namespace fakecheck::corpus {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kNonFake = 0;
inline constexpr int kFake = 1;

enum class Source { Original, Translated };

std::string_view source_name(Source s);

struct UserProfile {
  std::string handle;
  std::string real_name;
  std::string description;
  std::optional<std::string> official_url;
  std::uint64_t followers_count = 0;
  std::uint64_t friends_count = 0;
  std::uint64_t listed_count = 0;
  std::uint64_t favourites_count = 0;
  std::uint64_t statuses_count = 0;
  bool geo_enabled = false;
  bool verified = false;
  bool is_protected = false;
  Timestamp created_at{};
  std::optional<Timestamp> latest_tweet_at;

  bool operator==(const UserProfile&) const = default;
};

// One labelled tweet. Optional members are kept as optionals so that a file
// re-serializes with exactly the keys it was loaded with.
struct TweetRecord {
  std::string id;
  std::string text;
  std::string lang;
  int label = kNonFake;
  std::optional<std::uint64_t> retweet_count;
  std::optional<std::uint64_t> favourite_count;
  std::optional<Source> source;
  // Records sharing an origin (an original and its translations) are kept in
  // the same split partition.
  std::optional<std::string> origin_id;
  std::optional<UserProfile> user;

  std::string group_key() const { return origin_id.value_or(id); }

  bool operator==(const TweetRecord&) const = default;
};

struct LabelCounts {
  std::size_t fake = 0;
  std::size_t non_fake = 0;
  std::size_t total() const { return fake + non_fake; }
  bool operator==(const LabelCounts&) const = default;
};

// Immutable, validated collection. Ids are unique; tallies are per language.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<TweetRecord> records);

  const std::vector<TweetRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const TweetRecord& operator[](std::size_t i) const { return records_[i]; }

  const std::map<std::string, LabelCounts>& tallies() const noexcept { return tallies_; }
  LabelCounts totals() const;
  std::set<std::string> languages() const;

  const TweetRecord* find(std::string_view id) const;

  // Records whose language is in `langs`, in dataset order.
  Dataset filter_languages(const std::set<std::string>& langs) const;

 private:
  std::vector<TweetRecord> records_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, LabelCounts> tallies_;
};

struct LoadOptions {
  int schema_version = kSchemaVersion;
  std::set<std::string> languages = {"en", "hi", "bn"};
};

// Line-delimited JSON, one record per line. Blank lines are skipped.
Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});
Dataset parse_dataset(std::istream& in, const LoadOptions& options = {});

TweetRecord parse_record(std::string_view line, std::size_t lineno, const LoadOptions& options = {});
std::string serialize_record(const TweetRecord& rec);

// A user object on its own (same rules as the `user` key of a record).
// Throws ParseError naming the offending field.
UserProfile parse_user_profile(std::string_view json_text);
std::string serialize_user_profile(const UserProfile& user);

void write_dataset(std::ostream& out, const Dataset& ds);
void save_dataset(const std::filesystem::path& path, const Dataset& ds);

struct CsvOptions {
  // Used when the CSV has no `lang` column.
  std::optional<std::string> default_lang;
  LoadOptions load;
};

// Converts the released CSV layout (header row; see README for the column
// names) into validated records.
Dataset convert_csv(std::istream& in, const CsvOptions& options);

// Removes #tags, @mentions and URLs, case-folds, collapses whitespace.
std::string preprocess_text(std::string_view raw);

// Number of URL-pattern matches (`http://`, `https://` or `www.` up to the
// next whitespace), case-insensitive.
std::size_t count_urls(std::string_view text);

struct SplitResult {
  Dataset train;
  Dataset test;
  // Origin groups that straddled the partition and were moved whole.
  std::vector<std::string> regrouped_origins;
};

// Stratified by (lang, label). Per stratum the test share is
// floor(n * (1 - train_fraction)); the remainder goes to train.
SplitResult split_dataset(const Dataset& ds, double train_fraction, std::uint64_t seed);

std::string format_tallies(const Dataset& ds);

}  // namespace fakecheck::corpus
