// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fakecheck/corpus.hpp"
#include "fakecheck/embeddings.hpp"
#include "fakecheck/factver.hpp"
#include "fakecheck/timeutil.hpp"

namespace fakecheck::synthetic {

// Generator for a small trilingual fixture. Embeddings are Gaussian: the
// label moves the mean along the first `signal_dims` coordinates (the same
// direction in every language) and each language adds its own offset on the
// remaining coordinates, so a classifier trained on some languages transfers
// to the others.
struct Options {
  std::vector<std::string> languages = {"en", "hi", "bn"};
  std::size_t per_language = 100;
  double fake_fraction = 0.5;
  std::size_t dim = 16;
  std::size_t signal_dims = 8;
  // Label mean is +/- separation on each signal coordinate.
  double separation = 1.0;
  double language_offset = 2.0;
  double noise = 1.0;
  // Every n-th non-English record is marked as a translation of an English
  // record with the same label; 0 disables.
  std::size_t translated_every = 5;
  std::uint64_t seed = 7;
};

struct Bundle {
  corpus::Dataset dataset;
  embeddings::EmbeddingStore store;
  std::vector<factver::Document> documents;
  std::set<std::string> allowlist;
  std::vector<std::pair<std::string, int>> bias_corpus;
  Timestamp as_of{};
};

Bundle generate(const Options& options = {});

// Writes dataset.jsonl, embeddings.jsonl, index.jsonl, allowlist.txt and
// bias.tsv into `dir` (created if needed).
void write_bundle(const Bundle& bundle, const std::filesystem::path& dir);

}  // namespace fakecheck::synthetic
