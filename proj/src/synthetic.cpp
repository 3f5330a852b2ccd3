// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/synthetic.hpp"

#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>

#include "fakecheck/error.hpp"
#include "fakecheck/random.hpp"

namespace fakecheck::synthetic {

namespace {

struct Vocabulary {
  std::vector<std::string> news;
  std::vector<std::string> rumour;
};

const Vocabulary& vocabulary(const std::string& lang) {
  static const std::map<std::string, Vocabulary> vocab = {
      {"en",
       {{"health", "ministry", "reports", "new", "cases", "today", "vaccine", "trial", "results", "hospital", "data",
         "official", "update", "testing", "centres", "open"},
        {"miracle", "cure", "kills", "virus", "instantly", "share", "before", "deleted", "secret", "garlic", "water",
         "doctors", "hide", "truth", "forward", "urgent"}}},
      {"hi",
       {{"स्वास्थ्य", "मंत्रालय", "ने", "आज", "नए", "मामले", "बताए", "टीका", "परीक्षण", "अस्पताल", "आंकड़े",
         "सरकारी", "जानकारी", "जांच", "केंद्र", "खुले"},
        {"चमत्कारी", "इलाज", "वायरस", "तुरंत", "खत्म", "शेयर", "करें", "गुप्त", "लहसुन", "पानी", "डॉक्टर",
         "छिपाते", "सच", "जल्दी", "फॉरवर्ड", "जरूरी"}}},
      {"bn",
       {{"স্বাস্থ্য", "মন্ত্রক", "আজ", "নতুন", "সংক্রমণের", "খবর", "দিয়েছে", "টিকা", "পরীক্ষা", "হাসপাতাল",
         "তথ্য", "সরকারি", "কেন্দ্র", "খোলা", "ফলাফল", "জানানো"},
        {"অলৌকিক", "ওষুধ", "ভাইরাস", "মুহূর্তে", "শেষ", "শেয়ার", "করুন", "গোপন", "রসুন", "জল", "ডাক্তার",
         "লুকায়", "সত্য", "দ্রুত", "ফরোয়ার্ড", "জরুরি"}}},
  };
  auto it = vocab.find(lang);
  return it == vocab.end() ? vocab.at("en") : it->second;
}

std::string upper_ascii(std::string s) {
  for (auto& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

std::string make_text(const std::string& lang, int label, Rng& rng) {
  const auto& words = label == corpus::kFake ? vocabulary(lang).rumour : vocabulary(lang).news;
  const std::size_t n = 5 + rng.uniform_index(4);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string w = words[rng.uniform_index(words.size())];
    if (label == corpus::kFake && rng.uniform01() < 0.3) w = upper_ascii(w);
    out += (out.empty() ? "" : " ") + w;
  }
  if (label == corpus::kFake) out += rng.uniform01() < 0.6 ? "!!" : "?";
  if (rng.uniform01() < 0.3) out += " #covid";
  if (rng.uniform01() < 0.2) out += " https://t.co/x" + std::to_string(rng.uniform_index(1000));
  return out;
}

corpus::UserProfile make_user(const std::string& id, int label, Rng& rng, Timestamp as_of) {
  corpus::UserProfile u;
  const bool fake = label == corpus::kFake;
  u.handle = "user_" + id;
  u.real_name = fake ? "Anon " + std::to_string(rng.uniform_index(100)) : "User " + id;
  u.description = fake ? "truth seeker" : "reporter https://news.example.org";
  if (!fake && rng.uniform01() < 0.7) u.official_url = "https://news.example.org/" + id;
  u.followers_count = fake ? rng.uniform_index(500) : 1000 + rng.uniform_index(50000);
  u.friends_count = rng.uniform_index(2000);
  u.listed_count = fake ? rng.uniform_index(5) : 10 + rng.uniform_index(200);
  u.favourites_count = rng.uniform_index(10000);
  u.statuses_count = 100 + rng.uniform_index(20000);
  u.geo_enabled = rng.uniform01() < 0.3;
  u.verified = !fake && rng.uniform01() < 0.5;
  u.is_protected = false;
  const auto days = std::chrono::days(30 + static_cast<long>(rng.uniform_index(fake ? 400 : 3000)));
  u.created_at = as_of - days;
  u.latest_tweet_at = as_of - std::chrono::days(static_cast<long>(rng.uniform_index(20)));
  return u;
}

}  // namespace

Bundle generate(const Options& opt) {
  if (opt.signal_dims == 0 || opt.signal_dims > opt.dim) throw ConfigError("signal_dims must lie in [1, dim]");
  if (opt.per_language < 4) throw ConfigError("need at least 4 records per language");
  Rng rng(opt.seed);
  Bundle b;
  b.as_of = parse_timestamp("2020-06-01T00:00:00Z");
  b.store = embeddings::EmbeddingStore(opt.dim, "synthetic-gaussian-" + std::to_string(opt.dim));

  // Each language gets a random unit-ish offset on the non-signal coordinates.
  std::map<std::string, std::vector<double>> offsets;
  for (const auto& lang : opt.languages) {
    std::vector<double> off(opt.dim, 0.0);
    for (std::size_t d = opt.signal_dims; d < opt.dim; ++d) off[d] = opt.language_offset * rng.normal();
    offsets[lang] = std::move(off);
  }

  const auto n_fake = static_cast<std::size_t>(static_cast<double>(opt.per_language) * opt.fake_fraction + 0.5);
  std::vector<corpus::TweetRecord> records;
  std::vector<std::pair<std::string, int>> english;  // (id, label) for translation links
  for (const auto& lang : opt.languages) {
    std::size_t non_en = 0;
    for (std::size_t i = 0; i < opt.per_language; ++i) {
      corpus::TweetRecord r;
      char id[32];
      std::snprintf(id, sizeof id, "%s-%04zu", lang.c_str(), i + 1);
      r.id = id;
      r.lang = lang;
      r.label = i < n_fake ? corpus::kFake : corpus::kNonFake;
      r.text = make_text(lang, r.label, rng);
      r.retweet_count = rng.uniform_index(r.label == corpus::kFake ? 500 : 100);
      r.favourite_count = rng.uniform_index(1000);
      r.source = corpus::Source::Original;
      if (lang == "en") {
        english.emplace_back(r.id, r.label);
      } else if (opt.translated_every && !english.empty() && ++non_en % opt.translated_every == 0) {
        // Link to an English record with the same label.
        for (std::size_t tries = 0; tries < english.size(); ++tries) {
          const auto& [eid, elabel] = english[rng.uniform_index(english.size())];
          if (elabel == r.label) {
            r.source = corpus::Source::Translated;
            r.origin_id = eid;
            break;
          }
        }
      }
      r.user = make_user(r.id, r.label, rng, b.as_of);

      std::vector<double> v(opt.dim);
      const double sign = r.label == corpus::kFake ? 1.0 : -1.0;
      for (std::size_t d = 0; d < opt.dim; ++d) {
        const double mean = (d < opt.signal_dims ? sign * opt.separation : 0.0) + offsets[lang][d];
        v[d] = rng.normal(mean, opt.noise);
      }
      b.store.add(r.id, std::move(v));
      records.push_back(std::move(r));
    }
  }
  b.dataset = corpus::Dataset(std::move(records));

  b.allowlist = {"who.int", "mohfw.gov.in", "pib.gov.in", "bbc.co.uk"};
  const std::vector<std::string> hosts = {"https://www.who.int/news/", "https://mohfw.gov.in/updates/",
                                          "https://pib.gov.in/release/", "https://www.bbc.co.uk/news/",
                                          "https://rumours.example.com/post/"};
  std::size_t doc = 0;
  for (const auto& lang : opt.languages) {
    for (std::size_t i = 0; i < 10; ++i) {
      const auto& words = vocabulary(lang).news;
      std::string title;
      for (std::size_t w = 0; w < 6; ++w) title += (w ? " " : "") + words[rng.uniform_index(words.size())];
      b.documents.push_back({title, hosts[doc % hosts.size()] + std::to_string(doc)});
      ++doc;
    }
  }

  const std::vector<std::string> offensive = {"you idiot", "shut up fool", "stupid liar", "what a moron",
                                              "idiot people spreading lies"};
  const std::vector<std::string> polite = {"have a nice day", "thank you for sharing", "stay safe everyone",
                                           "good morning friends", "please wear masks"};
  for (std::size_t rep = 0; rep < 4; ++rep) {
    for (const auto& t : offensive) b.bias_corpus.emplace_back(t, 1);
    for (const auto& t : polite) b.bias_corpus.emplace_back(t, 0);
  }
  return b;
}

void write_bundle(const Bundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  corpus::save_dataset(dir / "dataset.jsonl", bundle.dataset);
  embeddings::save_embeddings(dir / "embeddings.jsonl", bundle.store);
  {
    std::ofstream out(dir / "index.jsonl");
    if (!out) throw IoError("cannot write " + (dir / "index.jsonl").string());
    for (const auto& d : bundle.documents) out << nlohmann::json{{"title", d.title}, {"url", d.url}}.dump() << '\n';
  }
  {
    std::ofstream out(dir / "allowlist.txt");
    if (!out) throw IoError("cannot write " + (dir / "allowlist.txt").string());
    for (const auto& d : bundle.allowlist) out << d << '\n';
  }
  {
    std::ofstream out(dir / "bias.tsv");
    if (!out) throw IoError("cannot write " + (dir / "bias.tsv").string());
    for (const auto& [text, label] : bundle.bias_corpus) out << label << '\t' << text << '\n';
  }
}

}  // namespace fakecheck::synthetic
