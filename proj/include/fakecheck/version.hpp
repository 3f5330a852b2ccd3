// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

namespace fakecheck {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fakecheck
