// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/factver.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>

#include "fakecheck/corpus.hpp"
#include "fakecheck/error.hpp"
#include "fakecheck/hash.hpp"
#include "fakecheck/text.hpp"

namespace fakecheck::factver {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Two rows over the shorter string.
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(text::decode(a), text::decode(b));
}

double normalized_distance(std::string_view a, std::string_view b) {
  const auto ca = text::decode(a);
  const auto cb = text::decode(b);
  const std::size_t longest = std::max(ca.size(), cb.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(ca, cb)) / static_cast<double>(longest);
}

// ---------------------------------------------------------------------------

std::string url_host(std::string_view url) {
  std::string s(url);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (auto p = s.find("://"); p != std::string::npos) s = s.substr(p + 3);
  s = s.substr(0, s.find_first_of("/?#"));
  if (auto at = s.rfind('@'); at != std::string::npos) s = s.substr(at + 1);
  s = s.substr(0, s.find(':'));
  if (s.rfind("www.", 0) == 0) s = s.substr(4);
  while (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

bool domain_allowed(std::string_view host, const std::set<std::string>& allowlist) {
  for (const auto& domain : allowlist) {
    if (host == domain) return true;
    if (host.size() > domain.size() && host.ends_with(domain) && host[host.size() - domain.size() - 1] == '.') {
      return true;
    }
  }
  return false;
}

TrustedIndex::TrustedIndex(std::vector<Document> documents, std::set<std::string> allowlist)
    : allowlist_(std::move(allowlist)) {
  for (auto& d : documents) {
    if (!text::has_content(d.title) || !domain_allowed(url_host(d.url), allowlist_)) {
      ++dropped_;
      continue;
    }
    tokens_.push_back(text::split_whitespace(corpus::preprocess_text(d.title)));
    documents_.push_back(std::move(d));
  }
}

std::string TrustedIndex::fingerprint() const {
  Fnv1a h;
  for (const auto& d : allowlist_) h.field(d);
  for (const auto& d : documents_) h.field(d.title).field(d.url);
  return h.hex();
}

std::vector<Document> load_documents(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read index file: " + path.string());
  std::vector<Document> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!text::has_content(line)) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(lineno, "", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("title") || !j["title"].is_string()) {
      throw ParseError(lineno, "title", "missing or not a string");
    }
    if (!j.contains("url") || !j["url"].is_string()) throw ParseError(lineno, "url", "missing or not a string");
    out.push_back({j["title"].get<std::string>(), j["url"].get<std::string>()});
  }
  return out;
}

std::set<std::string> load_allowlist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read allowlist file: " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    const std::string d = text::trim(line);
    if (!d.empty()) out.insert(url_host(d));
  }
  return out;
}

TrustedIndex load_index(const std::filesystem::path& index_path, const std::filesystem::path& allowlist_path) {
  return TrustedIndex(load_documents(index_path), load_allowlist(allowlist_path));
}

// ---------------------------------------------------------------------------

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::vector<std::string> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  const std::size_t uni = sa.size() + sb.size() - common.size();
  return static_cast<double>(common.size()) / static_cast<double>(uni);
}

std::vector<std::string> retrieve_titles(std::string_view preprocessed_query, const TrustedIndex& idx, std::size_t k) {
  const auto query = text::split_whitespace(preprocessed_query);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < idx.documents().size(); ++i) {
    const double s = jaccard(query, idx.title_tokens()[i]);
    if (s > 0.0) scored.emplace_back(s, i);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < k; ++i) out.push_back(idx.documents()[scored[i].second].title);
  return out;
}

FactVerScore factver_score(std::string_view text, const SearchBackend& backend, std::size_t k) {
  if (k == 0) throw ValidationError("factver k must be at least 1");
  const std::string query = corpus::preprocess_text(text);
  FactVerScore out;
  out.matched_titles = backend.search(query, k);
  if (out.matched_titles.size() > k) out.matched_titles.resize(k);
  out.k_used = out.matched_titles.size();
  if (out.k_used == 0) return out;
  double sum = 0.0;
  for (const auto& title : out.matched_titles) sum += normalized_distance(query, corpus::preprocess_text(title));
  out.score = std::clamp(sum / static_cast<double>(out.k_used), 0.0, 1.0);
  return out;
}

FactVerScore factver_score(std::string_view text, const TrustedIndex& idx, std::size_t k) {
  return factver_score(text, IndexSearchBackend(idx), k);
}

}  // namespace fakecheck::factver
