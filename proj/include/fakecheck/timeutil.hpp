// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace fakecheck {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS[Z|+HH:MM]" (space separator
// allowed) and the platform format "Wed Oct 10 20:19:24 +0000 2018".
// Throws ValidationError on anything else.
Timestamp parse_timestamp(std::string_view s);

// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);

// Whole days from `from` to `to`, rounded toward negative infinity.
long long floor_days_between(Timestamp from, Timestamp to);

}  // namespace fakecheck
