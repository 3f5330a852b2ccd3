// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

// Unicode helpers over UTF-8 strings, backed by ICU character properties.
namespace fakecheck::text {

// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view cps);

std::size_t length(std::string_view utf8);

bool is_upper(char32_t cp);
// Unicode alnum: Alphabetic or Decimal_Number. Unlike u_isalnum this keeps
// dependent vowel signs of Indic scripts.
bool is_alnum(char32_t cp);
bool is_space(char32_t cp);

// Simple (1:1) default case folding. Identity for caseless scripts.
char32_t fold(char32_t cp);
std::u32string fold(std::u32string_view cps);

std::string normalize_nfc(std::string_view utf8);

std::vector<std::u32string> split_whitespace(std::u32string_view cps);
std::vector<std::string> split_whitespace(std::string_view utf8);

std::string trim(std::string_view s);

// True if the string has at least one non-whitespace code point.
bool has_content(std::string_view utf8);

}  // namespace fakecheck::text
