// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fakecheck/error.hpp"
#include "fakecheck/random.hpp"
#include "fakecheck/text.hpp"

namespace fakecheck::corpus {

using json = nlohmann::json;

std::string_view source_name(Source s) { return s == Source::Translated ? "translated" : "original"; }

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::vector<TweetRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!index_.emplace(r.id, i).second) throw ValidationError("duplicate id '" + r.id + "'");
    auto& t = tallies_[r.lang];
    (r.label == kFake ? t.fake : t.non_fake)++;
  }
}

LabelCounts Dataset::totals() const {
  LabelCounts out;
  for (const auto& [lang, c] : tallies_) {
    out.fake += c.fake;
    out.non_fake += c.non_fake;
  }
  return out;
}

std::set<std::string> Dataset::languages() const {
  std::set<std::string> out;
  for (const auto& [lang, c] : tallies_) out.insert(lang);
  return out;
}

const TweetRecord* Dataset::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &records_[it->second];
}

Dataset Dataset::filter_languages(const std::set<std::string>& langs) const {
  std::vector<TweetRecord> out;
  for (const auto& r : records_) {
    if (langs.count(r.lang)) out.push_back(r);
  }
  return Dataset(std::move(out));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::uint64_t get_count(const json& obj, const char* key, std::size_t lineno, const std::string& prefix) {
  const auto& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ParseError(lineno, prefix + key, "expected a non-negative integer");
}

std::optional<std::uint64_t> opt_count(const json& obj, const char* key, std::size_t lineno,
                                       const std::string& prefix = "") {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_count(obj, key, lineno, prefix);
}

std::string get_string(const json& obj, const char* key, std::size_t lineno, const std::string& prefix = "") {
  if (!obj.contains(key)) throw ParseError(lineno, prefix + key, "missing required field");
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ParseError(lineno, prefix + key, "expected a string");
  return v.get<std::string>();
}

std::string opt_string(const json& obj, const char* key, std::size_t lineno, const std::string& prefix) {
  if (!obj.contains(key) || obj.at(key).is_null()) return {};
  return get_string(obj, key, lineno, prefix);
}

bool opt_bool(const json& obj, const char* key, std::size_t lineno, const std::string& prefix) {
  if (!obj.contains(key) || obj.at(key).is_null()) return false;
  const auto& v = obj.at(key);
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer() && (v.get<std::int64_t>() == 0 || v.get<std::int64_t>() == 1)) {
    return v.get<std::int64_t>() == 1;
  }
  throw ParseError(lineno, prefix + key, "expected a boolean");
}

Timestamp get_time(const json& obj, const char* key, std::size_t lineno, const std::string& prefix) {
  const std::string s = get_string(obj, key, lineno, prefix);
  try {
    return parse_timestamp(s);
  } catch (const ValidationError& e) {
    throw ParseError(lineno, prefix + key, e.what());
  }
}

int parse_label(const json& v, std::size_t lineno) {
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x == 0 || x == 1) return static_cast<int>(x);
  } else if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "1" || s == "fake") return kFake;
    if (s == "0" || s == "non_fake" || s == "non-fake" || s == "real") return kNonFake;
  }
  throw ParseError(lineno, "label", "unknown label value " + v.dump());
}

UserProfile parse_user(const json& u, std::size_t lineno) {
  const std::string p = "user.";
  if (!u.is_object()) throw ParseError(lineno, "user", "expected an object");
  UserProfile out;
  out.handle = opt_string(u, "handle", lineno, p);
  out.real_name = opt_string(u, "real_name", lineno, p);
  out.description = opt_string(u, "description", lineno, p);
  if (u.contains("official_url") && !u.at("official_url").is_null()) {
    out.official_url = get_string(u, "official_url", lineno, p);
  }
  out.followers_count = opt_count(u, "followers_count", lineno, p).value_or(0);
  out.friends_count = opt_count(u, "friends_count", lineno, p).value_or(0);
  out.listed_count = opt_count(u, "listed_count", lineno, p).value_or(0);
  out.favourites_count = opt_count(u, "favourites_count", lineno, p).value_or(0);
  out.statuses_count = opt_count(u, "statuses_count", lineno, p).value_or(0);
  out.geo_enabled = opt_bool(u, "geo_enabled", lineno, p);
  out.verified = opt_bool(u, "verified", lineno, p);
  out.is_protected = opt_bool(u, "protected", lineno, p);
  out.created_at = get_time(u, "created_at", lineno, p);
  if (u.contains("latest_tweet_at") && !u.at("latest_tweet_at").is_null()) {
    out.latest_tweet_at = get_time(u, "latest_tweet_at", lineno, p);
    if (*out.latest_tweet_at < out.created_at) {
      throw ParseError(lineno, "user.latest_tweet_at", "earlier than user.created_at");
    }
  }
  return out;
}

json user_to_json(const UserProfile& u) {
  json j = {
      {"handle", u.handle},
      {"real_name", u.real_name},
      {"description", u.description},
      {"followers_count", u.followers_count},
      {"friends_count", u.friends_count},
      {"listed_count", u.listed_count},
      {"favourites_count", u.favourites_count},
      {"statuses_count", u.statuses_count},
      {"geo_enabled", u.geo_enabled},
      {"verified", u.verified},
      {"protected", u.is_protected},
      {"created_at", format_timestamp(u.created_at)},
  };
  if (u.official_url) j["official_url"] = *u.official_url;
  if (u.latest_tweet_at) j["latest_tweet_at"] = format_timestamp(*u.latest_tweet_at);
  return j;
}

}  // namespace

UserProfile parse_user_profile(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, "user", std::string("invalid JSON: ") + e.what());
  }
  return parse_user(j, 0);
}

std::string serialize_user_profile(const UserProfile& user) { return user_to_json(user).dump(); }

TweetRecord parse_record(std::string_view line, std::size_t lineno, const LoadOptions& options) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(lineno, "", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(lineno, "", "expected a JSON object");

  if (j.contains("schema")) {
    const auto& s = j.at("schema");
    if (!s.is_number_integer() || s.get<int>() != options.schema_version) {
      throw SchemaVersionError("line " + std::to_string(lineno) + ": schema version " + s.dump() +
                               " does not match expected " + std::to_string(options.schema_version));
    }
  }

  TweetRecord rec;
  rec.id = get_string(j, "id", lineno);
  if (rec.id.empty()) throw ParseError(lineno, "id", "empty id");
  rec.text = get_string(j, "text", lineno);
  if (!text::has_content(text::normalize_nfc(rec.text))) throw ParseError(lineno, "text", "empty text");
  rec.lang = get_string(j, "lang", lineno);
  if (!options.languages.count(rec.lang)) throw ParseError(lineno, "lang", "unrecognized language tag '" + rec.lang + "'");
  if (!j.contains("label")) throw ParseError(lineno, "label", "missing required field");
  rec.label = parse_label(j.at("label"), lineno);
  rec.retweet_count = opt_count(j, "retweet_count", lineno);
  rec.favourite_count = opt_count(j, "favourite_count", lineno);
  if (j.contains("source") && !j.at("source").is_null()) {
    const std::string s = get_string(j, "source", lineno);
    if (s == "original") {
      rec.source = Source::Original;
    } else if (s == "translated") {
      rec.source = Source::Translated;
    } else {
      throw ParseError(lineno, "source", "expected 'original' or 'translated'");
    }
  }
  if (j.contains("origin_id") && !j.at("origin_id").is_null()) rec.origin_id = get_string(j, "origin_id", lineno);
  if (j.contains("user") && !j.at("user").is_null()) rec.user = parse_user(j.at("user"), lineno);
  return rec;
}

std::string serialize_record(const TweetRecord& rec) {
  json j = {{"schema", kSchemaVersion}, {"id", rec.id}, {"text", rec.text}, {"lang", rec.lang}, {"label", rec.label}};
  if (rec.retweet_count) j["retweet_count"] = *rec.retweet_count;
  if (rec.favourite_count) j["favourite_count"] = *rec.favourite_count;
  if (rec.source) j["source"] = source_name(*rec.source);
  if (rec.origin_id) j["origin_id"] = *rec.origin_id;
  if (rec.user) j["user"] = user_to_json(*rec.user);
  return j.dump();
}

Dataset parse_dataset(std::istream& in, const LoadOptions& options) {
  std::vector<TweetRecord> records;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!text::has_content(line)) continue;
    auto rec = parse_record(line, lineno, options);
    if (auto [it, fresh] = seen.emplace(rec.id, lineno); !fresh) {
      throw ParseError(lineno, "id", "duplicate id '" + rec.id + "' (first seen on line " +
                                         std::to_string(it->second) + ")");
    }
    records.push_back(std::move(rec));
  }
  return Dataset(std::move(records));
}

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read dataset file: " + path.string());
  return parse_dataset(in, options);
}

void write_dataset(std::ostream& out, const Dataset& ds) {
  for (const auto& r : ds.records()) out << serialize_record(r) << '\n';
}

void save_dataset(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset file: " + path.string());
  write_dataset(out, ds);
}

// ---------------------------------------------------------------------------
// CSV conversion

namespace {

// RFC 4180: quoted fields may contain separators, doubled quotes and newlines.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

Dataset convert_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::string> header;
  if (!read_csv_row(in, header)) return Dataset{};
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[text::trim(header[i])] = i;

  auto pick = [&](std::initializer_list<const char*> names) -> std::optional<std::size_t> {
    for (const char* n : names) {
      if (auto it = col.find(n); it != col.end()) return it->second;
    }
    return std::nullopt;
  };
  const auto c_id = pick({"id", "tweet_id"});
  const auto c_text = pick({"text", "tweet_text"});
  const auto c_lang = pick({"lang", "language"});
  const auto c_label = pick({"label"});
  const auto c_q1 = pick({"q1_label"});
  const auto c_rt = pick({"retweet_count"});
  const auto c_fav = pick({"favourite_count", "favorite_count"});
  const auto c_source = pick({"source"});
  const auto c_origin = pick({"origin_id"});
  if (!c_id || !c_text) throw ParseError(1, c_id ? "text" : "id", "CSV header lacks required column");
  if (!c_label && !c_q1) throw ParseError(1, "label", "CSV header lacks a label column");
  if (!c_lang && !options.default_lang) throw ParseError(1, "lang", "CSV header lacks a lang column and no default given");

  std::vector<TweetRecord> records;
  std::vector<std::string> row;
  std::size_t lineno = 1;
  while (read_csv_row(in, row)) {
    ++lineno;
    if (row.size() == 1 && !text::has_content(row[0])) continue;
    auto cell = [&](std::optional<std::size_t> c) -> std::string {
      return c && *c < row.size() ? row[*c] : std::string{};
    };
    json j;
    j["id"] = cell(c_id);
    j["text"] = cell(c_text);
    j["lang"] = c_lang ? cell(c_lang) : *options.default_lang;
    if (c_label) {
      const auto v = text::trim(cell(c_label));
      j["label"] = v;
    } else {
      // Answer to "does the tweet contain a verifiable factual claim?": no -> fake.
      const auto v = text::trim(cell(c_q1));
      if (v == "yes" || v == "Yes" || v == "YES") {
        j["label"] = kNonFake;
      } else if (v == "no" || v == "No" || v == "NO") {
        j["label"] = kFake;
      } else {
        throw ParseError(lineno, "q1_label", "unknown label value '" + v + "'");
      }
    }
    auto count_cell = [&](std::optional<std::size_t> c, const char* key, json& target) {
      const auto v = text::trim(cell(c));
      if (v.empty()) return;
      try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size() || d < 0 || d != std::floor(d)) throw std::invalid_argument(v);
        target[key] = static_cast<std::uint64_t>(d);
      } catch (const std::exception&) {
        throw ParseError(lineno, key, "expected a non-negative integer, got '" + v + "'");
      }
    };
    count_cell(c_rt, "retweet_count", j);
    count_cell(c_fav, "favourite_count", j);
    if (c_source && !text::trim(cell(c_source)).empty()) j["source"] = text::trim(cell(c_source));
    if (c_origin && !text::trim(cell(c_origin)).empty()) j["origin_id"] = text::trim(cell(c_origin));

    if (auto c = pick({"user_created_at"}); c && !text::trim(cell(c)).empty()) {
      json u;
      u["created_at"] = text::trim(cell(c));
      if (auto h = pick({"user_handle", "user_screen_name"})) u["handle"] = cell(h);
      if (auto n = pick({"user_real_name", "user_name"})) u["real_name"] = cell(n);
      if (auto d = pick({"user_description"})) u["description"] = cell(d);
      if (auto url = pick({"user_official_url", "user_url"}); url && !text::trim(cell(url)).empty()) {
        u["official_url"] = text::trim(cell(url));
      }
      for (const char* key : {"followers_count", "friends_count", "listed_count", "favourites_count", "statuses_count"}) {
        count_cell(pick({(std::string("user_") + key).c_str()}), key, u);
      }
      for (const char* key : {"geo_enabled", "verified", "protected"}) {
        const auto v = text::trim(cell(pick({(std::string("user_") + key).c_str()})));
        if (v.empty()) continue;
        u[key] = (v == "1" || v == "true" || v == "True" || v == "TRUE");
      }
      if (auto l = pick({"user_latest_tweet_at"}); l && !text::trim(cell(l)).empty()) {
        u["latest_tweet_at"] = text::trim(cell(l));
      }
      j["user"] = u;
    }
    records.push_back(parse_record(j.dump(), lineno, options.load));
  }
  std::map<std::string, bool> seen;
  for (const auto& r : records) {
    if (!seen.emplace(r.id, true).second) throw ValidationError("duplicate id '" + r.id + "' in CSV");
  }
  return Dataset(std::move(records));
}

// ---------------------------------------------------------------------------
// Preprocessing

namespace {

// Position of the leftmost URL start in an already case-folded token.
std::size_t find_url(std::u32string_view tok) {
  std::size_t best = std::u32string_view::npos;
  for (std::u32string_view pat : {U"http://", U"https://", U"www."}) {
    best = std::min(best, tok.find(pat));
  }
  return best;
}

}  // namespace

std::string preprocess_text(std::string_view raw) {
  const auto folded = text::fold(text::decode(raw));
  std::u32string out;
  for (auto& tok : text::split_whitespace(folded)) {
    if (tok.front() == U'#' || tok.front() == U'@') continue;
    if (auto pos = find_url(tok); pos != std::u32string::npos) tok.resize(pos);
    if (tok.empty()) continue;
    if (!out.empty()) out.push_back(U' ');
    out += tok;
  }
  return text::encode(out);
}

std::size_t count_urls(std::string_view s) {
  std::size_t n = 0;
  for (const auto& tok : text::split_whitespace(text::fold(text::decode(s)))) {
    if (find_url(tok) != std::u32string::npos) ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Split

SplitResult split_dataset(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train_fraction must lie strictly between 0 and 1");
  }
  if (ds.empty()) throw ValidationError("cannot split an empty dataset");

  std::map<std::pair<std::string, int>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < ds.size(); ++i) strata[{ds[i].lang, ds[i].label}].push_back(i);

  std::vector<bool> in_test(ds.size(), false);
  Rng rng(seed);
  for (auto& [key, members] : strata) {
    if (members.size() < 2) {
      throw ValidationError("stratum " + key.first + "/" + (key.second == kFake ? "fake" : "non_fake") +
                            " has fewer than 2 records; cannot stratify");
    }
    rng.shuffle(std::span<std::size_t>(members));
    // The epsilon absorbs representation error in (1 - fraction), e.g. 305 * 0.2.
    const auto n_test = static_cast<std::size_t>(
        std::floor(static_cast<double>(members.size()) * (1.0 - train_fraction) + 1e-9));
    for (std::size_t k = 0; k < n_test; ++k) in_test[members[k]] = true;
  }

  // Keep translation groups together: the whole group follows its majority
  // (ties go to train).
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < ds.size(); ++i) groups[ds[i].group_key()].push_back(i);
  SplitResult result;
  for (const auto& [key, members] : groups) {
    const auto n_test = static_cast<std::size_t>(
        std::count_if(members.begin(), members.end(), [&](std::size_t i) { return in_test[i]; }));
    if (n_test == 0 || n_test == members.size()) continue;
    const bool to_test = n_test * 2 > members.size();
    for (auto i : members) in_test[i] = to_test;
    result.regrouped_origins.push_back(key);
  }

  std::vector<TweetRecord> train, test;
  for (std::size_t i = 0; i < ds.size(); ++i) (in_test[i] ? test : train).push_back(ds[i]);
  result.train = Dataset(std::move(train));
  result.test = Dataset(std::move(test));
  return result;
}

std::string format_tallies(const Dataset& ds) {
  std::ostringstream out;
  out << "language  fake  non_fake  total\n";
  auto row = [&](const std::string& name, const LabelCounts& c) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-8s %5zu %9zu %6zu\n", name.c_str(), c.fake, c.non_fake, c.total());
    out << buf;
  };
  for (const auto& [lang, c] : ds.tallies()) row(lang, c);
  row("total", ds.totals());
  return out.str();
}

}  // namespace fakecheck::corpus
