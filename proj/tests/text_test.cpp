// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include <gtest/gtest.h>

#include "fakecheck/error.hpp"
#include "fakecheck/kvconfig.hpp"
#include "fakecheck/text.hpp"
#include "fakecheck/timeutil.hpp"

#include <cstdlib>

using namespace fakecheck;

TEST(Text, DecodeEncodeRoundTrip) {
  const std::string s = "Héllo हिन्दी বাংলা 😀";
  EXPECT_EQ(text::encode(text::decode(s)), s);
  EXPECT_EQ(text::length("हिन्दी"), 6u);
  EXPECT_EQ(text::length("😀"), 1u);
}

TEST(Text, InvalidBytesBecomeReplacementCharacter) {
  const auto cps = text::decode(std::string("a\xff" "b", 3));
  ASSERT_EQ(cps.size(), 3u);
  EXPECT_EQ(cps[1], U'\uFFFD');
}

TEST(Text, UnicodeProperties) {
  EXPECT_TRUE(text::is_upper(U'A'));
  EXPECT_TRUE(text::is_upper(U'Ж'));
  EXPECT_FALSE(text::is_upper(U'a'));
  EXPECT_FALSE(text::is_upper(U'क'));
  EXPECT_TRUE(text::is_alnum(U'क'));
  EXPECT_TRUE(text::is_alnum(U'৭'));
  EXPECT_FALSE(text::is_alnum(U'!'));
  EXPECT_TRUE(text::is_alnum(U'\u093E'));   // vowel sign AA
  EXPECT_FALSE(text::is_alnum(U'\u094D'));  // virama
  EXPECT_TRUE(text::is_space(U' '));
  EXPECT_EQ(text::fold(U'Q'), U'q');
  EXPECT_EQ(text::fold(U'क'), U'क');
}

TEST(Text, NfcComposesDecomposedSequences) {
  EXPECT_EQ(text::normalize_nfc("e\xCC\x81"), "\xC3\xA9");
}

TEST(Text, SplitAndTrim) {
  const auto parts = text::split_whitespace(std::string_view("  a\tb  c \n"));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[2], "c");
  EXPECT_EQ(text::trim("  x y \n"), "x y");
  EXPECT_FALSE(text::has_content(" \t\n"));
  EXPECT_TRUE(text::has_content(" क "));
}

TEST(Time, ParsesIsoAndPlatformFormats) {
  const auto a = parse_timestamp("2018-10-10T20:19:24Z");
  EXPECT_EQ(parse_timestamp("Wed Oct 10 20:19:24 +0000 2018"), a);
  EXPECT_EQ(parse_timestamp("2018-10-10T22:19:24+02:00"), a);
  EXPECT_EQ(parse_timestamp("2018-10-10 20:19:24.750Z"), a);
  EXPECT_EQ(format_timestamp(a), "2018-10-10T20:19:24Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2020-01-01")), "2020-01-01T00:00:00Z");
  EXPECT_THROW(parse_timestamp("yesterday"), ValidationError);
  EXPECT_THROW(parse_timestamp("2020-02-30"), ValidationError);
}

TEST(Time, FloorDays) {
  EXPECT_EQ(floor_days_between(parse_timestamp("2019-01-01"), parse_timestamp("2020-01-01")), 365);
  EXPECT_EQ(floor_days_between(parse_timestamp("2020-01-01T12:00:00Z"), parse_timestamp("2020-01-02T11:59:59Z")), 0);
}

TEST(KeyValueConfig, ParsesOverridesAndLists) {
  auto kv = KeyValueConfig::parse("# comment\nport = 8080\nlangs = en, hi ,bn\nflag = yes\nport=9090\n");
  EXPECT_EQ(kv.get_int("port", 0), 9090);
  EXPECT_EQ(kv.get_list("langs"), (std::vector<std::string>{"en", "hi", "bn"}));
  EXPECT_TRUE(kv.get_bool("flag", false));
  EXPECT_EQ(kv.get_or("missing", "d"), "d");
  EXPECT_THROW(kv.require("missing"), ConfigError);
  EXPECT_THROW(KeyValueConfig::parse("no equals sign\n"), ParseError);

  ::setenv("FKTEST_PROVIDER_ENDPOINT", "http://x:1", 1);
  kv.apply_env_overrides("FKTEST_", {"provider.endpoint", "port"});
  EXPECT_EQ(kv.get_or("provider.endpoint", ""), "http://x:1");
  EXPECT_EQ(kv.get_int("port", 0), 9090);
  ::unsetenv("FKTEST_PROVIDER_ENDPOINT");
}
