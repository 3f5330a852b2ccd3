// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fakecheck {

// Flat `key = value` configuration. Blank lines and lines starting with '#'
// are ignored; later keys override earlier ones. List values are
// comma-separated.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(const std::string& contents);
  static KeyValueConfig load(const std::filesystem::path& path);

  // Overrides `key` from `<prefix><KEY>` environment variables for every
  // key in `keys` (upper-cased, '.' and '-' mapped to '_').
  void apply_env_overrides(const std::string& prefix, const std::vector<std::string>& keys);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace fakecheck
