// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace fakecheck {

// FNV-1a, 64 bit. Used for layout hashes and run fingerprints; not a
// cryptographic digest.
class Fnv1a {
 public:
  Fnv1a& update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }

  // Adds a field separator so that ("ab","c") and ("a","bc") differ.
  Fnv1a& field(std::string_view bytes) {
    update(bytes);
    return update(std::string_view("\x1f", 1));
  }

  std::uint64_t value() const { return state_; }

  std::string hex() const { return to_hex(state_); }

  static std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::string fnv1a_hex(std::string_view bytes) { return Fnv1a{}.update(bytes).hex(); }

}  // namespace fakecheck
