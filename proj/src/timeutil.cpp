// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/timeutil.hpp"

#include <array>
#include <cctype>
#include <cstdio>

#include "fakecheck/error.hpp"

namespace fakecheck {

namespace {

using namespace std::chrono;

[[noreturn]] void bad(std::string_view s) {
  throw ValidationError("unrecognized timestamp: '" + std::string(s) + "'");
}

int digits(std::string_view s, std::size_t pos, std::size_t n, std::string_view whole) {
  if (pos + n > s.size()) bad(whole);
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad(whole);
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

Timestamp make(int y, int mo, int d, int h, int mi, int sec, std::string_view whole) {
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) bad(whole);
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

Timestamp parse_iso(std::string_view s) {
  const int y = digits(s, 0, 4, s);
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') bad(s);
  const int mo = digits(s, 5, 2, s);
  const int d = digits(s, 8, 2, s);
  if (s.size() == 10) return make(y, mo, d, 0, 0, 0, s);
  if (s[10] != 'T' && s[10] != ' ') bad(s);
  if (s.size() < 19 || s[13] != ':' || s[16] != ':') bad(s);
  const int h = digits(s, 11, 2, s);
  const int mi = digits(s, 14, 2, s);
  const int sec = digits(s, 17, 2, s);
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  Timestamp t = make(y, mo, d, h, mi, sec, s);
  std::string_view zone = s.substr(pos);
  if (zone.empty() || zone == "Z") return t;
  if (zone[0] != '+' && zone[0] != '-') bad(s);
  const int sign = zone[0] == '-' ? -1 : 1;
  int oh = 0, om = 0;
  if (zone.size() == 6 && zone[3] == ':') {
    oh = digits(zone, 1, 2, s);
    om = digits(zone, 4, 2, s);
  } else if (zone.size() == 5) {
    oh = digits(zone, 1, 2, s);
    om = digits(zone, 3, 2, s);
  } else {
    bad(s);
  }
  return t - sign * (hours{oh} + minutes{om});
}

// "Wed Oct 10 20:19:24 +0000 2018"
Timestamp parse_platform(std::string_view s) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  if (s.size() != 30) bad(s);
  int mo = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (s.substr(4, 3) == kMonths[i]) mo = static_cast<int>(i) + 1;
  }
  if (mo == 0) bad(s);
  const int d = digits(s, 8, 2, s);
  const int h = digits(s, 11, 2, s);
  const int mi = digits(s, 14, 2, s);
  const int sec = digits(s, 17, 2, s);
  const int sign = s[20] == '-' ? -1 : 1;
  const int oh = digits(s, 21, 2, s);
  const int om = digits(s, 23, 2, s);
  const int y = digits(s, 26, 4, s);
  return make(y, mo, d, h, mi, sec, s) - sign * (hours{oh} + minutes{om});
}

}  // namespace

Timestamp parse_timestamp(std::string_view s) {
  if (s.size() >= 4 && std::isdigit(static_cast<unsigned char>(s[0]))) return parse_iso(s);
  return parse_platform(s);
}

std::string format_timestamp(Timestamp t) {
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[80];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(hms.hours().count()), static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

long long floor_days_between(Timestamp from, Timestamp to) {
  return floor<days>(to - from).count();
}

}  // namespace fakecheck
