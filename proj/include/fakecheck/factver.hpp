// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fakecheck::factver {

inline constexpr std::size_t kDefaultK = 10;

// Edit distance over Unicode scalar values (insert, delete, substitute).
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

// levenshtein / max length; 0 for two empty strings.
double normalized_distance(std::string_view a, std::string_view b);

struct Document {
  std::string title;
  std::string url;
};

// Host of an http(s) URL, lower-cased, without port or a leading "www.".
std::string url_host(std::string_view url);

// True if `host` equals an allowlisted domain or is a subdomain of one.
bool domain_allowed(std::string_view host, const std::set<std::string>& allowlist);

// Titles from trusted sources. Documents outside the allowlist or with an
// empty title are dropped at construction.
class TrustedIndex {
 public:
  TrustedIndex() = default;
  TrustedIndex(std::vector<Document> documents, std::set<std::string> allowlist);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const std::set<std::string>& allowlist() const noexcept { return allowlist_; }
  std::size_t dropped() const noexcept { return dropped_; }
  bool empty() const noexcept { return documents_.empty(); }

  // Stable digest of the retained documents and the allowlist.
  std::string fingerprint() const;

  // Preprocessed token sets, parallel to documents().
  const std::vector<std::vector<std::string>>& title_tokens() const noexcept { return tokens_; }

 private:
  std::vector<Document> documents_;
  std::set<std::string> allowlist_;
  std::vector<std::vector<std::string>> tokens_;
  std::size_t dropped_ = 0;
};

// Index file: one {"title", "url"} object per line.
std::vector<Document> load_documents(const std::filesystem::path& path);
// One domain per line; '#' starts a comment.
std::set<std::string> load_allowlist(const std::filesystem::path& path);
TrustedIndex load_index(const std::filesystem::path& index_path, const std::filesystem::path& allowlist_path);

// Search backend seam; the offline index is the default implementation.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  virtual std::vector<std::string> search(std::string_view preprocessed_query, std::size_t k) const = 0;
};

// Token-set Jaccard similarity of two token lists.
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Top-k titles by Jaccard similarity to the query's tokens; ties keep index
// order; titles sharing no token are not returned.
std::vector<std::string> retrieve_titles(std::string_view preprocessed_query, const TrustedIndex& idx, std::size_t k);

class IndexSearchBackend final : public SearchBackend {
 public:
  explicit IndexSearchBackend(const TrustedIndex& idx) : idx_(idx) {}
  std::vector<std::string> search(std::string_view preprocessed_query, std::size_t k) const override {
    return retrieve_titles(preprocessed_query, idx_, k);
  }

 private:
  const TrustedIndex& idx_;
};

struct FactVerScore {
  double score = 1.0;
  std::size_t k_used = 0;
  std::vector<std::string> matched_titles;
};

// Mean normalized distance between the preprocessed text and each retrieved
// (preprocessed) title. With nothing retrieved the score is 1.0.
FactVerScore factver_score(std::string_view text, const SearchBackend& backend, std::size_t k = kDefaultK);
FactVerScore factver_score(std::string_view text, const TrustedIndex& idx, std::size_t k = kDefaultK);

}  // namespace fakecheck::factver
